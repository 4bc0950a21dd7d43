#include "pipestab/optimal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "pipestab/coeffs.hpp"
#include "pipestab/eig.hpp"

namespace pipestab {

namespace {

void check_n(int n) {
    if (n == 0) throw InputError("optimal growth needs n != 0");
}

}  // namespace

GrowthState evolve_state(const CVector& phi0, const CVector& omega0, int n, double t) {
    if (phi0.size() != omega0.size()) throw InputError("evolve_state: size mismatch");
    const cplx k = -2.0 * cplx(0, 1) * static_cast<double>(n) * static_cast<double>(MeanFlow::Uy) * t;
    return {phi0, omega0 + k * phi0};
}

Pencil build_growth_pencil(int n, double t, const CollocationGrid& g) {
    check_n(n);
    if (t < 0) throw InputError("time must be non-negative");
    const int N = g.N(), m = g.nodes();
    const ext l = std::abs(n) - 1;
    const ext s = static_cast<ext>(n) * MeanFlow::Uy * static_cast<ext>(t);  // n U_y t
    const cext I(0, 1);
    const int size = 2 * N + 1;
    CExtMatrix Pf = CExtMatrix::Zero(size, 2 * m), Qf = CExtMatrix::Zero(size, 2 * m);
    std::vector<RowTag> tags;
    const auto& D1 = g.d(1);
    const auto& D2 = g.d(2);

    int r = 0;
    for (int j = 1; j <= N; ++j, ++r) {
        for (int c = 0; c < m; ++c) {
            const ext op = -2 * (l + 2) * D1(j, c) - 2 * g.y(j) * D2(j, c);
            Qf(r, c) = op;
            Pf(r, c) = op;
        }
        Pf(r, j) += 2 * s * s;
        Pf(r, m + j) = I * s;
        tags.push_back({j == N ? "phi0-regularity" : "phi0", j});
    }
    for (int j = 0; j <= N; ++j, ++r) {
        Pf(r, j) = -2.0L * I * s;
        Pf(r, m + j) = 1;
        Qf(r, m + j) = 1;
        tags.push_back({"omega0", j});
    }

    ExtMatrix R = ExtMatrix::Zero(2 * m, size);
    for (int j = 1; j <= N; ++j) R(j, j - 1) = 1;
    for (int j = 0; j <= N; ++j) R(m + j, N + j) = 1;

    Pencil pen;
    pen.P = apply_recovery(Pf, R);
    pen.Q = apply_recovery(Qf, R);
    pen.P_full = std::move(Pf);
    pen.Q_full = std::move(Qf);
    pen.recovery = std::move(R);
    pen.mode_case = ModeCase::General;
    pen.params.alpha = 0;
    pen.params.n = n;
    pen.params.re = 1;
    pen.params.N = N;
    pen.grid = std::make_shared<const CollocationGrid>(g);
    pen.rows = std::move(tags);
    return pen;
}

GrowthResult optimal_growth(int n, double t, const CollocationGrid& g) {
    const Pencil pen = build_growth_pencil(n, t, g);
    const Spectrum sp = solve_qz(pen);
    GrowthResult res;
    res.n = n;
    res.t = t;
    int best = -1;
    for (int k = 0; k < sp.size(); ++k) {
        const cplx gk = sp.omega[k];
        res.gains.push_back(gk.real());
        res.max_imag_ratio = std::max(res.max_imag_ratio, std::abs(gk.imag()) / std::abs(gk));
        if (gk.real() > 0 && (best < 0 || gk.real() > sp.omega[best].real())) best = k;
    }
    if (best < 0) {
        std::ostringstream os;
        os << "no real positive gain for n=" << n << " t=" << t;
        throw NumericalError(os.str());
    }
    std::sort(res.gains.begin(), res.gains.end(), std::greater<>());
    res.G = sp.omega[best].real();
    CVector phi = sp.first(best), om = sp.second(best);
    const double e0 = energy(ModeCase::General, phi, om, g, {0.0, n});
    phi /= std::sqrt(e0);
    om /= std::sqrt(e0);
    res.phi0 = phi;
    res.omega0 = om;
    const GrowthState st = evolve_state(phi, om, n, t);
    res.phi_t = st.phi;
    res.omega_t = st.omega;
    return res;
}

GridSpec growth_grid(int n, int N, StretchChoice stretch) {
    FlowParams p;
    p.alpha = 0;
    p.n = n;
    p.re = std::numeric_limits<double>::infinity();
    p.N = N;
    p.stretch = stretch;
    GridSpec spec = resolve_grid(p);
    spec.validate();
    return spec;
}

GrowthResult optimal_growth(int n, double t, int N, StretchChoice stretch) {
    return optimal_growth(n, t, make_grid(growth_grid(n, N, stretch)));
}

CVector perpendicular_operator(const CVector& phi, int n, const CollocationGrid& g) {
    check_n(n);
    const double l = std::abs(n) - 1;
    const Eigen::VectorXd y = g.y_double();
    CVector d1 = g.d(1).cast<double>() * phi, d2 = g.d(2).cast<double>() * phi;
    return (l + 2) * d1 + (y.array() * d2.array()).matrix();
}

CVector phi0_from_C(const CVector& C, int n, const CollocationGrid& g) {
    check_n(n);
    if (C.size() != g.nodes()) throw InputError("phi0_from_C: one value per node required");
    const int l = std::abs(n) - 1;
    // Inner integral rescaled to s in [0, 1]: F(ybar) / ybar^(l+2) = int_0^1 C(ybar s) s^(l+1) ds.
    const int M = std::max(64, g.N() + l + 2);
    CollocationGrid q = map_nodes(GridSpec::linear(M));
    q.w = quadrature_weights(q);
    CExtVector inner(g.nodes());
    Eigen::VectorXd pts(q.nodes());
    for (int j = 0; j < g.nodes(); ++j) {
        const double yb = static_cast<double>(g.y(j));
        for (int k = 0; k < q.nodes(); ++k) pts(k) = yb * static_cast<double>(q.y(k));
        const CVector cv = interpolate(g, C, pts);
        cext s = 0;
        for (int k = 0; k < q.nodes(); ++k) s += q.w(k) * std::pow(q.y(k), l + 1) * cext(cv(k));
        if (!std::isfinite(static_cast<double>(std::abs(s))))
            throw NumericalError("phi0_from_C: inner integral is not finite");
        inner(j) = s;
    }
    const CExtVector tail = tail_integral(g, inner);
    return (-tail).cast<cplx>();
}

PatternField pattern_fields(const GrowthState& st, int n, const CollocationGrid& g, int ntheta) {
    check_n(n);
    if (ntheta < 1) throw InputError("ntheta must be positive");
    const VelocityProfile vp = reconstruct(ModeCase::General, st.phi, st.omega, g, {0.0, n});
    PatternField f;
    f.r = vp.r;
    f.theta.resize(ntheta);
    for (int j = 0; j < ntheta; ++j) f.theta(j) = 2 * std::numbers::pi * j / ntheta;
    const int m = g.nodes();
    f.u.resize(m, ntheta);
    f.v.resize(m, ntheta);
    f.w.resize(m, ntheta);
    for (int j = 0; j < ntheta; ++j) {
        const cplx e = std::polar(1.0, n * f.theta(j));
        for (int i = 0; i < m; ++i) {
            f.u(i, j) = (vp.u(i) * e).real();
            f.v(i, j) = (vp.v(i) * e).real();
            f.w(i, j) = (vp.w(i) * e).real();
        }
    }
    return f;
}

}  // namespace pipestab
