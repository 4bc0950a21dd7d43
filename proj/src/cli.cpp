#include "pipestab/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

#include "pipestab/bdref.hpp"
#include "pipestab/optimal.hpp"
#include "pipestab/reference.hpp"
#include "pipestab/stokes.hpp"

namespace pipestab::cli {

using json = nlohmann::json;

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string describe_grid(const GridSpec& g) {
    if (g.mapping == Mapping::Linear) return "linear";
    return "stretched a=" + fmt(g.a);
}

void write_spectrum_csv(std::ostream& os, const Spectrum& s, int modes) {
    os << "re_omega,im_omega,residual\n";
    const int k = modes < 0 ? s.size() : std::min(modes, s.size());
    for (int i = 0; i < k; ++i)
        os << fmt(s.omega[i].real()) << ',' << fmt(s.omega[i].imag()) << ',' << fmt(s.residual[i]) << '\n';
}

namespace {

struct CommonOpts {
    double alpha = 1.0;
    int n = 1;
    double re = 3000.0;
    int N = 47;
    std::string stretch = "auto";
    std::string format = "csv";
    std::string out;
    int modes = -1;
};

void add_flow_flags(CLI::App* app, CommonOpts& o) {
    app->add_option("--alpha", o.alpha, "axial wavenumber")->capture_default_str();
    app->add_option("--n", o.n, "azimuthal wavenumber")->capture_default_str();
    app->add_option("--re", o.re, "Reynolds number")->capture_default_str();
    app->add_option("--N", o.N, "polynomial order")->capture_default_str();
    app->add_option("--stretch", o.stretch, "auto | linear | <a>")->capture_default_str();
}

FlowParams to_params(const CommonOpts& o) {
    FlowParams p;
    p.alpha = o.alpha;
    p.n = o.n;
    p.re = o.re;
    p.N = o.N;
    p.stretch = parse_stretch(o.stretch);
    p.validate();
    if (p.N < 16) std::cerr << "warning: N=" << p.N << " is below 16; expect unconverged modes\n";
    return p;
}

json cjson(cplx z) { return {{"re", z.real()}, {"im", z.imag()}}; }

json params_json(const FlowParams& p) {
    const GridSpec g = resolve_grid(p);
    return {{"alpha", p.alpha}, {"n", p.n},     {"re", p.re},
            {"N", p.N},         {"grid", describe_grid(g)}, {"mode_case", to_string(p.mode_case())}};
}

template <class F>
void emit(const std::string& path, F&& f) {
    if (path.empty()) {
        f(std::cout);
        return;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + path + " for writing");
    f(os);
    if (!os) throw std::runtime_error("write to " + path + " failed");
}

void emit_meta(const std::string& out, const json& meta) {
    if (out.empty())
        std::cerr << meta.dump() << '\n';
    else
        emit(out + ".meta.json", [&](std::ostream& os) { os << meta.dump(2) << '\n'; });
}

// ---- spectrum ----

int cmd_spectrum(const CommonOpts& o, int refine, bool vectors) {
    const FlowParams p = to_params(o);
    if (o.format != "csv" && o.format != "json") throw InputError("--format must be csv or json");
    const Spectrum s = compute_spectrum(p, refine);
    json meta = params_json(p);
    meta["size"] = build_pencil(p).size();
    meta["finite_modes"] = s.size();
    if (o.format == "csv") {
        emit(o.out, [&](std::ostream& os) { write_spectrum_csv(os, s, o.modes); });
        emit_meta(o.out, meta);
        return Ok;
    }
    json modes = json::array();
    const int k = o.modes < 0 ? s.size() : std::min(o.modes, s.size());
    const GridSpec g = resolve_grid(p);
    const CollocationGrid grid = map_nodes(g);
    for (int i = 0; i < k; ++i) {
        json m = {{"omega", cjson(s.omega[i])}, {"residual", s.residual[i]}, {"refined", bool(s.refined[i])}};
        if (vectors) {
            json f1 = json::array(), f2 = json::array();
            const CVector a = s.first(i), b = s.second(i);
            for (int j = 0; j < a.size(); ++j) {
                f1.push_back(cjson(a(j)));
                f2.push_back(cjson(b(j)));
            }
            m["first"] = f1;
            m["second"] = f2;
        }
        modes.push_back(m);
    }
    json doc = {{"metadata", meta}, {"modes", modes}};
    if (vectors) {
        std::vector<double> y(grid.nodes());
        for (int j = 0; j < grid.nodes(); ++j) y[j] = static_cast<double>(grid.y(j));
        doc["y"] = y;
    }
    emit(o.out, [&](std::ostream& os) { os << doc.dump(1) << '\n'; });
    return Ok;
}

// ---- validate ----

int cmd_validate(const std::string& table) {
    bool ok = true;
    if (table == "1" || table == "all") {
        std::cout << "# table 1\n";
        ok = print_validation(std::cout, validate_table1(table1_records())) && ok;
    }
    if (table == "2" || table == "all") {
        std::cout << "# table 2\n";
        ok = print_validation(std::cout, validate_table2(table2_records())) && ok;
    }
    if (table != "1" && table != "2" && table != "all") throw InputError("--table must be 1, 2 or all");
    std::cout << (ok ? "all rows pass\n" : "some rows FAIL\n");
    return ok ? Ok : ValidationFailure;
}

// ---- optimal ----

void write_pattern(std::ostream& os, const PatternField& f) {
    os << "r,theta,u,v,w\n";
    for (Eigen::Index i = 0; i < f.r.size(); ++i)
        for (Eigen::Index j = 0; j < f.theta.size(); ++j)
            os << fmt(f.r(i)) << ',' << fmt(f.theta(j)) << ',' << fmt(f.u(i, j)) << ',' << fmt(f.v(i, j)) << ','
               << fmt(f.w(i, j)) << '\n';
}

int cmd_optimal(int n, double t, int N, const std::string& stretch, std::string out, int ntheta) {
    const GridSpec spec = growth_grid(n, N, parse_stretch(stretch));
    const CollocationGrid g = make_grid(spec);
    const GrowthResult r = optimal_growth(n, t, g);
    if (out.empty()) {
        std::ostringstream os;
        os << "optimal_n" << n << "_t" << t;
        out = os.str();
    }
    emit(out + ".gains.csv", [&](std::ostream& os) {
        os << "index,gain\n";
        for (std::size_t k = 0; k < r.gains.size(); ++k) os << k << ',' << fmt(r.gains[k]) << '\n';
    });
    emit(out + ".pattern_t0.csv",
         [&](std::ostream& os) { write_pattern(os, pattern_fields({r.phi0, r.omega0}, n, g, ntheta)); });
    emit(out + ".pattern_t.csv",
         [&](std::ostream& os) { write_pattern(os, pattern_fields({r.phi_t, r.omega_t}, n, g, ntheta)); });
    json meta = {{"n", n},          {"t", t},           {"N", N},
                 {"grid", describe_grid(spec)}, {"G", r.G}, {"max_imag_ratio", r.max_imag_ratio}};
    emit(out + ".meta.json", [&](std::ostream& os) { os << meta.dump(2) << '\n'; });
    std::cout << "G = " << fmt(r.G) << '\n';
    return Ok;
}

// ---- stokes ----

int cmd_stokes(double re, int kmax, int count, int N, const std::string& format, const std::string& out) {
    if (!(re > 0)) throw InputError("--re must be positive");
    if (format != "csv" && format != "json") throw InputError("--format must be csv or json");
    const StokesKind kinds[2] = {StokesKind::Psi1, StokesKind::Psi2};
    const CollocationGrid g = make_grid(GridSpec::linear(N));
    if (format == "csv") {
        emit(out, [&](std::ostream& os) {
            os << "kind,index,lambda,omega_i\n";
            for (int b = 0; b < 2; ++b) {
                const auto roots = char_roots(kinds[b], kmax);
                for (int k = 0; k < std::min<int>(count, roots.size()); ++k)
                    os << "psi" << b + 1 << ',' << k + 1 << ',' << fmt(roots[k]) << ',' << fmt(stokes_omega_i(roots[k], re))
                       << '\n';
            }
        });
        return Ok;
    }
    json doc = {{"re", re}, {"kmax", kmax}};
    std::vector<double> y(g.nodes());
    for (int j = 0; j < g.nodes(); ++j) y[j] = static_cast<double>(g.y(j));
    doc["y"] = y;
    for (int b = 0; b < 2; ++b) {
        const auto modes = stokes_modes(kinds[b], count, kmax);
        json arr = json::array();
        for (const auto& m : modes) {
            const Eigen::VectorXd f = eigenfunction(m, g.y_double());
            arr.push_back({{"lambda", m.lambda},
                           {"omega_i", stokes_omega_i(m.lambda, re)},
                           {"eigenfunction", std::vector<double>(f.data(), f.data() + f.size())}});
        }
        const Eigen::MatrixXd G = gram_matrix(kinds[b], modes, g);
        json gj = json::array();
        for (int i = 0; i < G.rows(); ++i) {
            std::vector<double> row(G.cols());
            for (int j = 0; j < G.cols(); ++j) row[j] = G(i, j);
            gj.push_back(row);
        }
        const std::string key = b == 0 ? "psi1" : "psi2";
        doc[key] = {{"modes", arr}, {"gram", gj}};
    }
    emit(out, [&](std::ostream& os) { os << doc.dump(1) << '\n'; });
    return Ok;
}

// ---- bd-compare ----

int cmd_bd_compare(const CommonOpts& o, const std::vector<double>& rect, bool cond) {
    const FlowParams p = to_params(o);
    const Pencil pp = build_pencil(p);
    const BdPencil pb = build_bd_pencil(p);
    const Spectrum sp = solve_qz(pp), sb = solve_qz(pb);
    ComplexRect R;
    if (rect.empty()) {
        const int k = std::min(10, sp.size());
        R = {sp.omega[0].real(), sp.omega[0].real(), sp.omega[0].imag(), sp.omega[0].imag()};
        for (int i = 0; i < k; ++i) {
            R.re_min = std::min(R.re_min, sp.omega[i].real());
            R.re_max = std::max(R.re_max, sp.omega[i].real());
            R.im_min = std::min(R.im_min, sp.omega[i].imag());
            R.im_max = std::max(R.im_max, sp.omega[i].imag());
        }
        R.re_min -= 1e-3;
        R.re_max += 1e-3;
        R.im_min -= 1e-3;
        R.im_max += 1e-3;
    } else {
        if (rect.size() != 4) throw InputError("--rect expects re_min,re_max,im_min,im_max");
        R = {rect[0], rect[1], rect[2], rect[3]};
    }
    const ComparisonReport rep = compare_spectra(sp, sb, R, cond ? &pp : nullptr, cond ? &pb : nullptr);
    json matches = json::array();
    for (const auto& m : rep.matches) {
        json j = {{"present", cjson(m.present)}, {"bd", cjson(m.bd)}, {"deviation", m.deviation}};
        if (cond) {
            j["cond_present"] = m.cond_present;
            j["cond_bd"] = m.cond_bd;
        }
        matches.push_back(j);
    }
    json present = json::array(), bd = json::array();
    for (const auto& z : sp.omega) present.push_back(cjson(z));
    for (const auto& z : sb.omega) bd.push_back(cjson(z));
    json doc = {{"metadata", params_json(p)},
                {"region", {R.re_min, R.re_max, R.im_min, R.im_max}},
                {"count_present", rep.count_present},
                {"count_bd", rep.count_bd},
                {"max_deviation", rep.max_deviation},
                {"matches", matches},
                {"present", present},
                {"bd", bd}};
    emit(o.out, [&](std::ostream& os) { os << doc.dump(1) << '\n'; });
    return Ok;
}

}  // namespace

// ---- sweep ----

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

double to_double(const std::string& key, const std::string& v) {
    std::size_t pos = 0;
    double x = 0;
    try {
        x = std::stod(v, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != v.size()) throw InputError("sweep config: bad number '" + v + "' for " + key);
    return x;
}

using TupleKey = std::tuple<double, int, double>;

}  // namespace

SweepConfig parse_sweep_config(std::istream& is) {
    SweepConfig c;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        line = trim(line.substr(0, line.find('#')));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw InputError("sweep config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
        const auto items = split_list(val);
        if (items.empty()) throw InputError("sweep config: empty value for " + key);
        if (key == "alpha") {
            for (const auto& s : items) c.alpha.push_back(to_double(key, s));
        } else if (key == "n") {
            for (const auto& s : items) c.n.push_back(static_cast<int>(to_double(key, s)));
        } else if (key == "re") {
            for (const auto& s : items) c.re.push_back(to_double(key, s));
        } else if (key == "N") {
            c.N = static_cast<int>(to_double(key, items[0]));
        } else if (key == "stretch") {
            c.stretch = parse_stretch(items[0]);
        } else if (key == "workers") {
            c.workers = static_cast<int>(to_double(key, items[0]));
        } else if (key == "refine") {
            c.refine = static_cast<int>(to_double(key, items[0]));
        } else {
            throw InputError("sweep config: unknown key '" + key + "'");
        }
    }
    if (c.alpha.empty() || c.n.empty() || c.re.empty()) throw InputError("sweep config needs alpha, n and re");
    return c;
}

SweepConfig load_sweep_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw InputError("cannot read sweep config " + path);
    return parse_sweep_config(is);
}

SweepSummary run_sweep(const SweepConfig& cfg, const std::string& out_path, int limit) {
    std::vector<FlowParams> all;
    for (double a : cfg.alpha)
        for (int n : cfg.n)
            for (double re : cfg.re) {
                FlowParams p;
                p.alpha = a;
                p.n = n;
                p.re = re;
                p.N = cfg.N;
                p.stretch = cfg.stretch;
                p.validate();
                all.push_back(p);
            }

    // Keep only complete records; an interrupted run may leave a partial last line.
    std::set<TupleKey> done;
    std::vector<std::string> kept;
    if (std::filesystem::exists(out_path)) {
        std::ifstream is(out_path);
        std::string line;
        while (std::getline(is, line)) {
            const json j = json::parse(line, nullptr, false);
            if (j.is_discarded() || !j.is_object() || !j.contains("alpha")) continue;
            done.insert({j["alpha"].get<double>(), j["n"].get<int>(), j["re"].get<double>()});
            kept.push_back(line);
        }
        is.close();
        const std::string tmp = out_path + ".tmp";
        {
            std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
            for (const auto& l : kept) os << l << '\n';
        }
        std::filesystem::rename(tmp, out_path);
    }

    std::vector<FlowParams> todo;
    SweepSummary sum;
    sum.total = static_cast<int>(all.size());
    for (const auto& p : all) {
        if (done.count({p.alpha, p.n, p.re})) {
            ++sum.skipped;
            continue;
        }
        if (limit >= 0 && static_cast<int>(todo.size()) >= limit) continue;
        todo.push_back(p);
    }

    std::ofstream os(out_path, std::ios::binary | std::ios::app);
    if (!os) throw std::runtime_error("cannot open " + out_path);
    std::vector<std::optional<std::string>> ready(todo.size());
    std::size_t next_write = 0;
    std::mutex mu;
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        for (std::size_t i = next++; i < todo.size(); i = next++) {
            const FlowParams& p = todo[i];
            json rec = params_json(p);
            try {
                const Spectrum s = compute_spectrum(p, cfg.refine);
                json modes = json::array();
                for (int k = 0; k < std::min(5, s.size()); ++k) modes.push_back(cjson(s.omega[k]));
                rec["omega"] = modes;
            } catch (const std::exception& e) {
                rec["error"] = e.what();
            }
            std::lock_guard<std::mutex> lock(mu);
            ready[i] = rec.dump();
            while (next_write < ready.size() && ready[next_write]) {
                os << *ready[next_write] << '\n' << std::flush;
                ready[next_write].reset();
                ++next_write;
            }
        }
    };
    const int nw = std::max(1, cfg.workers > 0 ? cfg.workers : static_cast<int>(std::thread::hardware_concurrency()));
    std::vector<std::thread> pool;
    for (int w = 0; w < std::min<int>(nw, static_cast<int>(todo.size())); ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    sum.computed = static_cast<int>(todo.size());
    return sum;
}

int run(int argc, char** argv) {
    CLI::App app{"Linear stability of pipe Poiseuille flow"};
    app.require_subcommand(1);

    CommonOpts so;
    int refine = 1;
    bool vectors = false;
    auto* spec = app.add_subcommand("spectrum", "eigenvalues of one parameter set");
    add_flow_flags(spec, so);
    spec->add_option("--format", so.format, "csv | json")->capture_default_str();
    spec->add_option("--out", so.out, "output path (stdout if omitted)");
    spec->add_option("--modes", so.modes, "number of least-decaying modes (all if omitted)");
    spec->add_option("--refine", refine, "modes polished by shift-invert")->capture_default_str();
    spec->add_flag("--vectors", vectors, "include eigenfunctions (json)");

    std::string table = "all";
    auto* val = app.add_subcommand("validate", "recompute the embedded reference tables");
    val->add_option("--table", table, "1 | 2 | all")->capture_default_str();

    int on = 1, oN = 47, ntheta = 64;
    double ot = 50;
    std::string ostretch = "auto", oout;
    auto* opt = app.add_subcommand("optimal", "inviscid optimal growth");
    opt->add_option("--n", on, "azimuthal wavenumber")->capture_default_str();
    opt->add_option("--t", ot, "time horizon")->capture_default_str();
    opt->add_option("--N", oN, "polynomial order")->capture_default_str();
    opt->add_option("--stretch", ostretch, "auto | linear | <a>")->capture_default_str();
    opt->add_option("--out", oout, "output prefix");
    opt->add_option("--ntheta", ntheta, "azimuthal raster points")->capture_default_str();

    double sre = 3000;
    int kmax = 90, scount = 7, sN = 47;
    std::string sformat = "csv", sout;
    auto* sto = app.add_subcommand("stokes", "analytic alpha = n = 0 modes");
    sto->add_option("--re", sre, "Reynolds number")->capture_default_str();
    sto->add_option("--kmax", kmax, "series truncation")->capture_default_str();
    sto->add_option("--modes", scount, "modes per kind")->capture_default_str();
    sto->add_option("--N", sN, "sample grid order (json)")->capture_default_str();
    sto->add_option("--format", sformat, "csv | json")->capture_default_str();
    sto->add_option("--out", sout, "output path");

    CommonOpts bo;
    std::vector<double> rect;
    bool cond = false;
    auto* bdc = app.add_subcommand("bd-compare", "present vs Burridge-Drazin spectra");
    add_flow_flags(bdc, bo);
    bdc->add_option("--rect", rect, "re_min,re_max,im_min,im_max")->delimiter(',');
    bdc->add_flag("--cond", cond, "condition numbers of matched modes");
    bdc->add_option("--out", bo.out, "output path");

    std::string config, sweep_out = "sweep.jsonl";
    int workers = 0, limit = -1;
    auto* swp = app.add_subcommand("sweep", "resumable parameter sweep");
    swp->add_option("--config", config, "key = value parameter file")->required();
    swp->add_option("--out", sweep_out, "results file (JSON lines)")->capture_default_str();
    swp->add_option("--workers", workers, "worker threads (config value if 0)");
    swp->add_option("--limit", limit, "stop after this many new tuples");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? Ok : UsageError;
    }

    try {
        if (*spec) return cmd_spectrum(so, refine, vectors);
        if (*val) return cmd_validate(table);
        if (*opt) return cmd_optimal(on, ot, oN, ostretch, oout, ntheta);
        if (*sto) return cmd_stokes(sre, kmax, scount, sN, sformat, sout);
        if (*bdc) return cmd_bd_compare(bo, rect, cond);
        if (*swp) {
            SweepConfig c = load_sweep_config(config);
            if (workers > 0) c.workers = workers;
            const SweepSummary s = run_sweep(c, sweep_out, limit);
            std::cout << "tuples " << s.total << ", skipped " << s.skipped << ", computed " << s.computed << '\n';
            return Ok;
        }
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n" << app.help();
        return UsageError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return NumericalFailure;
    }
    return UsageError;
}

}  // namespace pipestab::cli
