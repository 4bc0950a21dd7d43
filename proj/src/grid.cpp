#include "pipestab/grid.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace pipestab {

namespace {

constexpr ext kPi = std::numbers::pi_v<ext>;

// Chebyshev differentiation matrices of orders 1..M on the Lobatto nodes,
// with the flipping trick for the node differences and the negative-sum
// correction on the diagonal.
std::vector<ExtMatrix> cheb_diff_xi(int N, int M) {
    const int n = N + 1;
    std::vector<ext> th(n);
    for (int k = 0; k < n; ++k) th[k] = kPi * k / N;

    ExtMatrix DX(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            DX(i, j) = 2 * std::sin((th[j] + th[i]) / 2) * std::sin((th[j] - th[i]) / 2);
    const int half = n / 2;
    for (int i = half; i < n; ++i)
        for (int j = 0; j < n; ++j) DX(i, j) = -DX(n - 1 - i, n - 1 - j);
    for (int i = 0; i < n; ++i) DX(i, i) = 1;

    ExtVector C(n);
    for (int k = 0; k < n; ++k) {
        ext c = (k == 0 || k == N) ? 2 : 1;
        C(k) = (k % 2 == 0) ? c : -c;
    }

    ExtMatrix Z(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) Z(i, j) = (i == j) ? 0 : 1 / DX(i, j);

    std::vector<ExtMatrix> out;
    ExtMatrix D = ExtMatrix::Identity(n, n);
    for (int ell = 1; ell <= M; ++ell) {
        ExtMatrix next(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                next(i, j) = ell * Z(i, j) * ((C(i) / C(j)) * D(i, i) - D(i, j));
        for (int i = 0; i < n; ++i) {
            ext s = 0;
            for (int j = 0; j < n; ++j)
                if (j != i) s += next(i, j);
            next(i, i) = -s;
        }
        D = next;
        out.push_back(D);
    }
    return out;
}

ext stretch_c(const GridSpec& s) { return std::expm1(static_cast<ext>(s.a)); }

// dy/dxi at a node.
ext dy_dxi(const GridSpec& s, ext y) {
    if (s.mapping == Mapping::Linear) return 0.5L;
    const ext a = s.a, c = stretch_c(s);
    return (a / 2) * (1 + c * y) / c;
}

std::vector<ext> clenshaw_curtis_xi(int N) {
    std::vector<ext> w(N + 1, 0);
    const bool even = (N % 2 == 0);
    const ext end = even ? 1 / static_cast<ext>(N * N - 1) : 1 / static_cast<ext>(N * N);
    w[0] = w[N] = end;
    for (int j = 1; j < N; ++j) {
        const ext th = kPi * j / N;
        ext v = 1;
        if (even) {
            for (int k = 1; k < N / 2; ++k) v -= 2 * std::cos(2 * k * th) / (4 * k * k - 1);
            v -= std::cos(N * th) / static_cast<ext>(N * N - 1);
        } else {
            for (int k = 1; k <= (N - 1) / 2; ++k) v -= 2 * std::cos(2 * k * th) / (4 * k * k - 1);
        }
        w[j] = 2 * v / N;
    }
    return w;
}

}  // namespace

void GridSpec::validate() const {
    if (N < 8) {
        std::ostringstream os;
        os << "grid order N must be at least 8, got " << N;
        throw InputError(os.str());
    }
    if (mapping == Mapping::Stretched && !(a > 0))
        throw InputError("stretch parameter a must be positive");
}

std::vector<ext> gauss_lobatto(int N) {
    if (N < 1) throw InputError("gauss_lobatto requires N >= 1");
    std::vector<ext> xi(N + 1);
    for (int j = 0; j <= N; ++j) xi[j] = std::sin(kPi * (N - 2 * j) / (2 * static_cast<ext>(N)));
    return xi;
}

CollocationGrid map_nodes(const GridSpec& spec) {
    spec.validate();
    CollocationGrid g;
    g.spec = spec;
    const auto xi = gauss_lobatto(spec.N);
    g.xi = ExtVector::Map(xi.data(), static_cast<Eigen::Index>(xi.size()));
    g.y.resize(spec.N + 1);
    if (spec.mapping == Mapping::Linear) {
        for (int j = 0; j <= spec.N; ++j) g.y(j) = (1 + g.xi(j)) / 2;
    } else {
        const ext a = spec.a, c = stretch_c(spec);
        for (int j = 0; j <= spec.N; ++j) g.y(j) = std::expm1(a * (1 + g.xi(j)) / 2) / c;
    }
    g.y(0) = 1;
    g.y(spec.N) = 0;
    return g;
}

std::array<ExtMatrix, 4> diff_matrices(const CollocationGrid& grid) {
    const auto& s = grid.spec;
    auto Dx = cheb_diff_xi(s.N, 4);
    std::array<ExtMatrix, 4> D;
    if (s.mapping == Mapping::Linear) {
        ext f = 1;
        for (int k = 0; k < 4; ++k) {
            f *= 2;
            D[k] = f * Dx[k];
        }
        return D;
    }
    // xi = h(y) = (2/a) ln(1 + c y) - 1, derivatives in closed form.
    const int n = grid.nodes();
    const ext a = s.a, c = stretch_c(s);
    ExtVector h1(n), h2(n), h3(n), h4(n);
    for (int j = 0; j < n; ++j) {
        const ext q = c / (1 + c * grid.y(j));
        h1(j) = (2 / a) * q;
        h2(j) = -(2 / a) * q * q;
        h3(j) = (2 / a) * 2 * q * q * q;
        h4(j) = -(2 / a) * 6 * q * q * q * q;
    }
    const auto dg = [](const ExtVector& v) { return v.asDiagonal(); };
    const ExtVector h1s = h1.array().square().matrix();
    const ExtVector h1c = h1.array().cube().matrix();
    const ExtVector h1q = h1s.array().square().matrix();
    D[0] = dg(h1) * Dx[0];
    D[1] = dg(h1s) * Dx[1] + dg(h2) * Dx[0];
    D[2] = dg(h1c) * Dx[2] + dg((3 * h1.array() * h2.array()).matrix()) * Dx[1] + dg(h3) * Dx[0];
    D[3] = dg(h1q) * Dx[3] + dg((6 * h1s.array() * h2.array()).matrix()) * Dx[2] +
           dg((3 * h2.array().square() + 4 * h1.array() * h3.array()).matrix()) * Dx[1] +
           dg(h4) * Dx[0];
    return D;
}

ExtVector quadrature_weights(const CollocationGrid& grid) {
    const auto wx = clenshaw_curtis_xi(grid.N());
    ExtVector w(grid.nodes());
    for (int j = 0; j < grid.nodes(); ++j) w(j) = wx[j] * dy_dxi(grid.spec, grid.y(j));
    return w;
}

CollocationGrid make_grid(const GridSpec& spec) {
    CollocationGrid g = map_nodes(spec);
    g.D = diff_matrices(g);
    g.w = quadrature_weights(g);
    return g;
}

GridSpec auto_grid(double alpha, int n, double re, int N) {
    if (alpha <= 3 && re <= 6000) return GridSpec::linear(N);
    return GridSpec::stretched(N, std::abs(n) <= 5 ? 2.0 : 3.0);
}

GridSpec resolve_grid(const FlowParams& p) {
    switch (p.stretch.kind) {
        case StretchKind::Linear: return GridSpec::linear(p.N);
        case StretchKind::Stretched: return GridSpec::stretched(p.N, p.stretch.a);
        case StretchKind::Auto: break;
    }
    return auto_grid(p.alpha, p.n, p.re, p.N);
}

ext xi_of_y(const GridSpec& spec, ext y) {
    if (spec.mapping == Mapping::Linear) return 2 * y - 1;
    return (2 / static_cast<ext>(spec.a)) * std::log1p(stretch_c(spec) * y) - 1;
}

CVector interpolate(const CollocationGrid& grid, const CVector& values,
                    const Eigen::VectorXd& y_eval) {
    const int n = grid.nodes();
    if (values.size() != n) throw InputError("interpolate: value count does not match grid");
    CVector out(y_eval.size());
    for (Eigen::Index m = 0; m < y_eval.size(); ++m) {
        const ext x = xi_of_y(grid.spec, y_eval(m));
        cext num = 0;
        ext den = 0;
        int hit = -1;
        for (int j = 0; j < n; ++j) {
            const ext diff = x - grid.xi(j);
            if (diff == 0) {
                hit = j;
                break;
            }
            ext lam = (j % 2 == 0) ? 1 : -1;
            if (j == 0 || j == n - 1) lam /= 2;
            const ext t = lam / diff;
            num += t * cext(values(j));
            den += t;
        }
        out(m) = hit >= 0 ? values(hit) : cplx(num / den);
    }
    return out;
}

CExtVector tail_integral(const CollocationGrid& grid, const CExtVector& f) {
    const int N = grid.N();
    if (f.size() != N + 1) throw InputError("tail_integral: value count does not match grid");
    CExtVector h(N + 1);
    for (int j = 0; j <= N; ++j) h(j) = f(j) * dy_dxi(grid.spec, grid.y(j));

    // Chebyshev coefficients of the interpolant in xi.
    CExtVector a = CExtVector::Zero(N + 3);
    for (int k = 0; k <= N; ++k) {
        cext s = 0;
        for (int j = 0; j <= N; ++j) {
            ext wj = (j == 0 || j == N) ? 0.5L : 1.0L;
            s += wj * h(j) * std::cos(kPi * static_cast<ext>(j) * k / N);
        }
        s *= 2.0L / N;
        if (k == 0 || k == N) s /= 2.0L;
        a(k) = s;
    }
    // Antiderivative coefficients b_1..b_{N+1}.
    CExtVector b = CExtVector::Zero(N + 2);
    for (int k = 1; k <= N + 1; ++k) {
        const ext ck = (k - 1 == 0) ? 2 : 1;
        b(k) = (ck * a(k - 1) - a(k + 1)) / static_cast<ext>(2 * k);
    }
    cext top = 0;
    for (int k = 1; k <= N + 1; ++k) top += b(k);
    CExtVector out(N + 1);
    for (int j = 0; j <= N; ++j) {
        cext g = 0;
        for (int k = 1; k <= N + 1; ++k) g += b(k) * std::cos(kPi * static_cast<ext>(j) * k / N);
        out(j) = top - g;
    }
    out(0) = 0;
    return out;
}

}  // namespace pipestab
