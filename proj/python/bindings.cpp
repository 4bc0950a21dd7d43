#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pipestab/bdref.hpp"
#include "pipestab/optimal.hpp"
#include "pipestab/reference.hpp"
#include "pipestab/stokes.hpp"

namespace py = pybind11;
using namespace pipestab;

namespace {

FlowParams make_params(double alpha, int n, double re, int N, const std::string& stretch) {
    FlowParams p;
    p.alpha = alpha;
    p.n = n;
    p.re = re;
    p.N = N;
    p.stretch = parse_stretch(stretch);
    p.validate();
    return p;
}

py::dict spectrum_dict(const Spectrum& s) {
    py::dict d;
    d["omega"] = s.omega;
    d["residual"] = s.residual;
    d["vectors"] = s.full;
    d["mode_case"] = to_string(s.mode_case);
    return d;
}

StokesKind kind_of(int k) {
    if (k != 1 && k != 2) throw InputError("kind must be 1 or 2");
    return k == 1 ? StokesKind::Psi1 : StokesKind::Psi2;
}

}  // namespace

PYBIND11_MODULE(_pipestab, m) {
    m.doc() = "Linear stability of pipe Poiseuille flow";

    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_RuntimeError);

    m.def(
        "grid",
        [](int N, double a) {
            const CollocationGrid g = make_grid(a > 0 ? GridSpec::stretched(N, a) : GridSpec::linear(N));
            py::dict d;
            d["y"] = g.y_double();
            d["w"] = Eigen::VectorXd(g.w.cast<double>());
            for (int k = 1; k <= 4; ++k) d[py::str("D{}").format(k)] = Eigen::MatrixXd(g.d(k).cast<double>());
            return d;
        },
        py::arg("N"), py::arg("a") = 0.0, "Nodes, weights and D1..D4; a > 0 selects the stretched map.");

    m.def(
        "spectrum",
        [](double alpha, int n, double re, int N, const std::string& stretch, int refine) {
            Spectrum s;
            {
                py::gil_scoped_release nogil;
                s = compute_spectrum(make_params(alpha, n, re, N, stretch), refine);
            }
            return spectrum_dict(s);
        },
        py::arg("alpha"), py::arg("n"), py::arg("re"), py::arg("N") = 47, py::arg("stretch") = "auto",
        py::arg("refine") = 1);

    m.def(
        "refine",
        [](double alpha, int n, double re, int N, const std::string& stretch, cplx shift) {
            const RefinedMode r = refine_mode(build_pencil(make_params(alpha, n, re, N, stretch)), shift);
            return py::make_tuple(r.omega, r.full, r.iterations);
        },
        py::arg("alpha"), py::arg("n"), py::arg("re"), py::arg("N"), py::arg("stretch"), py::arg("shift"));

    m.def(
        "pencil",
        [](double alpha, int n, double re, int N, const std::string& stretch) {
            const Pencil p = build_pencil(make_params(alpha, n, re, N, stretch));
            return py::make_tuple(p.P_double(), p.Q_double());
        },
        py::arg("alpha"), py::arg("n"), py::arg("re"), py::arg("N") = 47, py::arg("stretch") = "auto");

    m.def(
        "bd_spectrum",
        [](double alpha, int n, double re, int N) {
            Spectrum s;
            {
                py::gil_scoped_release nogil;
                s = solve_qz(build_bd_pencil(make_params(alpha, n, re, N, "linear")));
            }
            return spectrum_dict(s);
        },
        py::arg("alpha"), py::arg("n"), py::arg("re"), py::arg("N"));

    m.def(
        "optimal_growth",
        [](int n, double t, int N, const std::string& stretch) {
            const GrowthResult r = optimal_growth(n, t, N, parse_stretch(stretch));
            py::dict d;
            d["G"] = r.G;
            d["gains"] = r.gains;
            d["max_imag_ratio"] = r.max_imag_ratio;
            d["phi0"] = r.phi0;
            d["omega0"] = r.omega0;
            d["phi_t"] = r.phi_t;
            d["omega_t"] = r.omega_t;
            return d;
        },
        py::arg("n"), py::arg("t"), py::arg("N") = 47, py::arg("stretch") = "auto");

    m.def(
        "phi0_from_C",
        [](const CVector& C, int n, int N, double a) {
            return phi0_from_C(C, n, make_grid(a > 0 ? GridSpec::stretched(N, a) : GridSpec::linear(N)));
        },
        py::arg("C"), py::arg("n"), py::arg("N"), py::arg("a") = 0.0);

    m.def(
        "char_roots", [](int kind, int kmax) { return char_roots(kind_of(kind), kmax); }, py::arg("kind"),
        py::arg("kmax") = 90);
    m.def("stokes_omega_i", &stokes_omega_i, py::arg("lam"), py::arg("re"));

    m.def("validate_table1", [] {
        py::list out;
        for (const auto& r : validate_table1(table1_records())) {
            py::dict d;
            d["source"] = r.source;
            d["error"] = r.error;
            d["tol"] = r.tol;
            d["pass"] = r.pass;
            out.append(d);
        }
        return out;
    });
}
