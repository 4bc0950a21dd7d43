#include "pipestab/bdref.hpp"

#include <cmath>
#include <limits>

namespace pipestab {

namespace {

struct Op4 {
    ExtVector c[4];  // coefficient of D^k, k = 0..3
};

}  // namespace

CollocationGrid bd_grid(int N) { return make_grid(GridSpec::linear(N)); }

BdPencil assemble_bd(const FlowParams& params, const CollocationGrid& g) {
    params.validate();
    if (params.n == 0 || params.alpha == 0) throw InputError("Burridge-Drazin form needs n != 0 and alpha != 0");
    if (g.spec.mapping != Mapping::Linear) throw InputError("Burridge-Drazin grid must be unmapped");
    if (g.N() != params.N) throw InputError("grid order does not match params.N");

    const int N = g.N(), m = g.nodes();
    const ext a2 = static_cast<ext>(params.alpha) * params.alpha, al = params.alpha;
    const ext nn = params.n, n2 = nn * nn;
    const cext ic = cext(0, 1) / static_cast<ext>(params.re);

    // Axis node is never collocated; any finite placeholder radius works there.
    ExtVector r = g.y;
    r(N) = 1;
    ExtVector d(m), a(m), ap(m), app(m), b(m), bp(m), bpp(m), U(m);
    for (int j = 0; j < m; ++j) {
        const ext x = r(j);
        d(j) = n2 + a2 * x * x;
        a(j) = 1 / x - 2 * a2 * x / d(j);
        ap(j) = -1 / (x * x) - 2 * a2 * (1 / d(j) - 2 * a2 * x * x / (d(j) * d(j)));
        app(j) = 2 / (x * x * x) - 2 * a2 * (-6 * a2 * x / (d(j) * d(j)) + 8 * a2 * a2 * x * x * x / (d(j) * d(j) * d(j)));
        b(j) = d(j) / (x * x);
        bp(j) = -2 * n2 / (x * x * x);
        bpp(j) = 6 * n2 / (x * x * x * x);
        U(j) = 1 - x * x;
    }
    const auto& D1 = g.d(1);
    const auto& D2 = g.d(2);
    const auto& D3 = g.d(3);
    const auto& D4 = g.d(4);

    CExtMatrix Pf = CExtMatrix::Zero(2 * N - 4, 2 * m), Qf = CExtMatrix::Zero(2 * N - 4, 2 * m);
    std::vector<RowTag> tags;
    int row = 0;
    for (int j = 2; j <= N - 2; ++j, ++row) {
        const ext c1 = 4 * al * n2 / d(j);
        const ext t0 = -b(j);
        const ext s0 = -bpp(j) - a(j) * bp(j) + b(j) * b(j);
        const ext s1 = app(j) - 2 * bp(j) + a(j) * ap(j) - 2 * a(j) * b(j);
        const ext s2 = 2 * ap(j) - 2 * b(j) + a(j) * a(j);
        const ext s3 = 2 * a(j);
        for (int c = 0; c < m; ++c) {
            const ext T = D2(j, c) + a(j) * D1(j, c) + (c == j ? t0 : 0);
            const ext T2 = D4(j, c) + s3 * D3(j, c) + s2 * D2(j, c) + s1 * D1(j, c) + (c == j ? s0 : 0);
            Qf(row, c) = T;
            Pf(row, c) = al * U(j) * T + ic * T2 + (c == j ? c1 : 0);
            Pf(row, m + c) = ic * (-2 * al * nn) * T;
        }
        tags.push_back({"bd-phi", j});
    }
    for (int j = 1; j <= N - 1; ++j, ++row) {
        const ext sa = 1 / r(j) + 2 * a2 * r(j) / d(j);
        for (int c = 0; c < m; ++c) {
            const ext T = D2(j, c) + a(j) * D1(j, c) + (c == j ? -b(j) : 0);
            const ext S = D2(j, c) + sa * D1(j, c) + (c == j ? -b(j) : 0);
            Pf(row, c) = ic * (2 * al * nn / (d(j) * d(j))) * T + (c == j ? 2 * nn / d(j) : 0);
            Pf(row, m + c) = ic * S + (c == j ? al * U(j) : 0);
        }
        Qf(row, m + j) = 1;
        tags.push_back({"bd-omega", j});
    }

    // phi_bar(0) = phi_bar(N) = 0; solve the wall and axis derivative rows for phi_bar(1), phi_bar(N-1).
    const ExtMatrix& Dc = std::abs(params.n) >= 2 ? D1 : D2;
    Eigen::Matrix<ext, 2, 2> C;
    C << D1(0, 1), D1(0, N - 1), Dc(N, 1), Dc(N, N - 1);
    const Eigen::PartialPivLU<Eigen::Matrix<ext, 2, 2>> lu(C);
    const int size = 2 * N - 4, nphi = N - 3;
    ExtMatrix R = ExtMatrix::Zero(2 * m, size);
    for (int k = 0; k < nphi; ++k) {
        const int j = k + 2;
        R(j, k) = 1;
        const Eigen::Matrix<ext, 2, 1> x = lu.solve(Eigen::Matrix<ext, 2, 1>(-D1(0, j), -Dc(N, j)));
        R(1, k) = x(0);
        R(N - 1, k) = x(1);
    }
    for (int j = 1; j <= N - 1; ++j) R(m + j, nphi + j - 1) = 1;

    BdPencil pen;
    pen.P = apply_recovery(Pf, R);
    pen.Q = apply_recovery(Qf, R);
    pen.P_full = std::move(Pf);
    pen.Q_full = std::move(Qf);
    pen.recovery = std::move(R);
    pen.mode_case = ModeCase::General;
    pen.params = params;
    pen.grid = std::make_shared<const CollocationGrid>(g);
    pen.rows = std::move(tags);
    return pen;
}

BdPencil build_bd_pencil(const FlowParams& params) { return assemble_bd(params, bd_grid(params.N)); }

ComparisonReport compare_spectra(const Spectrum& present, const Spectrum& bd, const ComplexRect& region,
                                 const Pencil* present_pencil, const BdPencil* bd_pencil) {
    if (!(region.re_max > region.re_min) || !(region.im_max > region.im_min))
        throw InputError("compare_spectra: empty region");
    ComparisonReport rep;
    for (const auto& z : bd.omega) rep.count_bd += region.contains(z);
    for (const auto& z : present.omega) {
        if (!region.contains(z)) continue;
        ++rep.count_present;
        if (bd.omega.empty()) continue;
        ModeMatch mm;
        mm.present = z;
        double best = std::numeric_limits<double>::infinity();
        for (const auto& w : bd.omega)
            if (std::abs(w - z) < best) {
                best = std::abs(w - z);
                mm.bd = w;
            }
        mm.deviation = best;
        if (present_pencil) mm.cond_present = condition_diagnostic(*present_pencil, mm.present);
        if (bd_pencil) mm.cond_bd = condition_diagnostic(*bd_pencil, mm.bd);
        rep.max_deviation = std::max(rep.max_deviation, best);
        rep.matches.push_back(mm);
    }
    if (rep.count_present == 0 && rep.count_bd == 0) throw InputError("compare_spectra: no eigenvalues in region");
    return rep;
}

}  // namespace pipestab
