#include "pipestab/stokes.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lapack.hpp"

namespace pipestab {

namespace {

void check_kmax(int kmax) {
    if (kmax < 2 || kmax > 90) {
        std::ostringstream os;
        os << "kmax must lie in [2, 90], got " << kmax;
        throw InputError(os.str());
    }
}

// Value and derivative of sum c_k x^k.
std::pair<ext, ext> horner2(const std::vector<ext>& c, ext x) {
    ext p = 0, dp = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        dp = dp * x + p;
        p = p * x + *it;
    }
    return {p, dp};
}

ext weight_of(StokesKind kind, ext y) { return kind == StokesKind::Psi1 ? 1 : y; }

// Nodal series values, unnormalized, with the truncation guard.
std::vector<ext> series_values(const StokesMode& mode, const Eigen::VectorXd& y) {
    std::vector<ext> out(y.size());
    for (Eigen::Index j = 0; j < y.size(); ++j) {
        const ext yj = y(j);
        ext sum = 0, peak = 0, term = 0;
        for (std::size_t k = 0; k < mode.series.size(); ++k) {
            term = mode.series[k] * std::pow(yj, static_cast<int>(k));
            sum += term;
            peak = std::max(peak, std::abs(sum));
        }
        if (std::abs(term) >= 1e-16L * peak && std::abs(term) > 0) {
            std::ostringstream os;
            os << "series for lambda=" << mode.lambda << " not converged at y=" << static_cast<double>(yj)
               << " with kmax=" << mode.kmax;
            throw NumericalError(os.str());
        }
        out[j] = sum;
    }
    return out;
}

}  // namespace

std::vector<ext> char_coefficients(StokesKind kind, int kmax) {
    const int m = kind == StokesKind::Psi1 ? 1 : 2;
    std::vector<ext> c(kmax + 1);
    c[0] = 1;
    for (int k = 0; k < kmax; ++k) c[k + 1] = c[k] / (static_cast<ext>(k + 1) * (k + m));
    return c;
}

std::vector<double> char_roots(StokesKind kind, int kmax) {
    check_kmax(kmax);
    const auto c = char_coefficients(kind, kmax);
    const int n = kmax;
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(n, n);
    for (int k = 0; k < n; ++k) C(0, k) = static_cast<double>(-c[n - 1 - k] / c[n]);
    for (int k = 1; k < n; ++k) C(k, k - 1) = 1.0;
    std::vector<double> wr(n), wi(n);
    double dummy = 0;
    const lapack_int info =
        LAPACKE_dgeev(LAPACK_COL_MAJOR, 'N', 'N', n, C.data(), n, wr.data(), wi.data(), &dummy, 1, &dummy, 1);
    if (info != 0) throw NumericalError("companion eigenvalue solve failed");

    std::vector<double> roots;
    for (int i = 0; i < n; ++i) {
        if (std::abs(wi[i]) >= 1e-8 * std::abs(wr[i])) continue;
        ext x = wr[i];
        const auto [p, dp] = horner2(c, x);
        const ext step = p / dp;
        if (dp != 0 && std::isfinite(static_cast<double>(step))) x -= step;
        roots.push_back(static_cast<double>(x));
    }
    std::sort(roots.begin(), roots.end(), [](double a, double b) { return std::abs(a) < std::abs(b); });
    return roots;
}

StokesMode make_mode(StokesKind kind, double lambda, int kmax) {
    check_kmax(kmax);
    StokesMode m;
    m.lambda = lambda;
    m.kind = kind;
    m.kmax = kmax;
    const auto c = char_coefficients(kind, kmax);
    m.series.resize(c.size());
    ext p = 1;
    for (std::size_t k = 0; k < c.size(); ++k) {
        m.series[k] = c[k] * p;
        p *= lambda;
    }
    const CollocationGrid q = [] {
        CollocationGrid g = map_nodes(GridSpec::linear(128));
        g.w = quadrature_weights(g);
        return g;
    }();
    const auto v = series_values(m, q.y_double());
    ext s = 0;
    for (int j = 0; j < q.nodes(); ++j) s += q.w(j) * weight_of(kind, q.y(j)) * v[j] * v[j];
    m.norm = static_cast<double>(1 / std::sqrt(s));
    return m;
}

std::vector<StokesMode> stokes_modes(StokesKind kind, int count, int kmax) {
    const auto roots = char_roots(kind, kmax);
    if (count > static_cast<int>(roots.size())) {
        std::ostringstream os;
        os << "only " << roots.size() << " real roots available at kmax=" << kmax;
        throw InputError(os.str());
    }
    std::vector<StokesMode> out;
    for (int i = 0; i < count; ++i) out.push_back(make_mode(kind, roots[i], kmax));
    return out;
}

Eigen::VectorXd eigenfunction(const StokesMode& mode, const Eigen::VectorXd& y) {
    const auto v = series_values(mode, y);
    Eigen::VectorXd out(y.size());
    for (Eigen::Index j = 0; j < y.size(); ++j) out(j) = static_cast<double>(v[j] * mode.norm);
    return out;
}

Eigen::MatrixXd gram_matrix(StokesKind kind, const std::vector<StokesMode>& modes, const CollocationGrid& grid) {
    const int m = static_cast<int>(modes.size());
    std::vector<std::vector<ext>> vals;
    for (const auto& md : modes) {
        if (md.kind != kind) throw InputError("gram_matrix: mixed mode kinds");
        auto v = series_values(md, grid.y_double());
        for (auto& x : v) x *= md.norm;
        vals.push_back(std::move(v));
    }
    Eigen::MatrixXd G(m, m);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            ext s = 0;
            for (int j = 0; j < grid.nodes(); ++j) s += grid.w(j) * weight_of(kind, grid.y(j)) * vals[a][j] * vals[b][j];
            G(a, b) = static_cast<double>(s);
        }
    return G;
}

double energy_evolution(const std::vector<double>& a1, const std::vector<double>& a2,
                        const std::vector<StokesMode>& m1, const std::vector<StokesMode>& m2, double t,
                        double re) {
    if (a1.size() != m1.size() || a2.size() != m2.size())
        throw InputError("energy_evolution: coefficient and mode counts differ");
    double e = 0;
    for (std::size_t k = 0; k < a1.size(); ++k) e += a1[k] * a1[k] * std::exp(2 * stokes_omega_i(m1[k].lambda, re) * t);
    for (std::size_t k = 0; k < a2.size(); ++k) e += a2[k] * a2[k] * std::exp(2 * stokes_omega_i(m2[k].lambda, re) * t);
    return 0.5 * e;
}

}  // namespace pipestab
