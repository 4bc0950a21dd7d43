#include "pipestab/assembly.hpp"

#include <sstream>

#include "pipestab/coeffs.hpp"

namespace pipestab {

namespace {

// sum_k c_k(y) D^k with nodal coefficient values.
struct Op {
    std::array<CExtVector, 5> c;

    explicit Op(int n) {
        for (auto& v : c) v = CExtVector::Zero(n);
    }
};

// alpha U Q + R
Op convect(const Op& q, const Op& r, ext alpha, const ExtVector& y) {
    Op out = r;
    for (int k = 0; k < 5; ++k)
        for (Eigen::Index j = 0; j < y.size(); ++j) out.c[k](j) += alpha * MeanFlow::U(y(j)) * q.c[k](j);
    return out;
}

void fill(CExtMatrix& M, int row0, int col0, const Op& op, const CollocationGrid& g) {
    const int n = g.nodes();
    for (int j = 0; j < n; ++j) {
        M(row0 + j, col0 + j) += op.c[0](j);
        for (int k = 1; k <= 4; ++k) {
            const cext ck = op.c[k](j);
            if (ck == cext(0)) continue;
            const auto& Dk = g.d(k);
            for (int m = 0; m < n; ++m) M(row0 + j, col0 + m) += ck * Dk(j, m);
        }
    }
}

// sum_k coef[k] * D^k evaluated at the centre node, written into a full row.
void add_centre(CExtRow& row, int col0, const std::vector<cext>& coef, const CollocationGrid& g) {
    const int N = g.N();
    for (std::size_t k = 0; k < coef.size(); ++k) {
        if (coef[k] == cext(0)) continue;
        if (k == 0) {
            row(col0 + N) += coef[0];
            continue;
        }
        const auto& Dk = g.d(static_cast<int>(k));
        for (int m = 0; m <= N; ++m) row(col0 + m) += coef[k] * Dk(N, m);
    }
}

void check_inputs(const FlowParams& p, const CollocationGrid& g, ModeCase expected) {
    p.validate();
    if (p.N != g.N()) {
        std::ostringstream os;
        os << "grid order " << g.N() << " does not match params N = " << p.N;
        throw InputError(os.str());
    }
    if (p.mode_case() != expected) {
        std::ostringstream os;
        os << "mode case " << to_string(p.mode_case()) << " routed to the " << to_string(expected)
           << " assembler";
        throw InputError(os.str());
    }
}

Pencil finish(const FlowParams& p, const CollocationGrid& g, ModeCase mc, CExtMatrix P_full,
              CExtMatrix Q_full, ExtMatrix recovery, std::vector<RowTag> rows) {
    if (P_full.rows() != recovery.cols() || static_cast<Eigen::Index>(rows.size()) != P_full.rows()) {
        std::ostringstream os;
        os << "row budget mismatch: " << P_full.rows() << " rows for " << recovery.cols() << " unknowns";
        throw NumericalError(os.str());
    }
    Pencil pen;
    pen.P = apply_recovery(P_full, recovery);
    pen.Q = apply_recovery(Q_full, recovery);
    pen.P_full = std::move(P_full);
    pen.Q_full = std::move(Q_full);
    pen.recovery = std::move(recovery);
    pen.mode_case = mc;
    pen.params = p;
    pen.grid = std::make_shared<const CollocationGrid>(g);
    pen.rows = std::move(rows);
    return pen;
}

// phi equation at j = 2..N-2 and N, derivative row, Omega equation at j = 1..N.
Pencil layout_phi_omega(const FlowParams& p, const CollocationGrid& g, ModeCase mc) {
    const int N = g.N();
    const OperatorRows ops = governing_rows(p, g);
    const FunctionalRow drow = derivative_regularity_row(p, g);
    const int size = 2 * N - 1;
    CExtMatrix Pf(size, 2 * N + 2), Qf(size, 2 * N + 2);
    std::vector<RowTag> tags;
    int r = 0;
    auto take = [&](int src, const std::string& label, int node) {
        Pf.row(r) = ops.P.row(src);
        Qf.row(r) = ops.Q.row(src);
        tags.push_back({label, node});
        ++r;
    };
    for (int j = 2; j <= N - 2; ++j) take(j, "phi", j);
    take(N, "phi-regularity", N);
    Pf.row(r) = drow.P;
    Qf.row(r) = drow.Q;
    tags.push_back({"phi-derivative-regularity", N});
    ++r;
    for (int j = 1; j < N; ++j) take(N + 1 + j, "omega", j);
    take(2 * N + 1, "omega-regularity", N);
    return finish(p, g, mc, std::move(Pf), std::move(Qf), wall_recovery(g), std::move(tags));
}

}  // namespace

CVector Pencil::recover(const CVector& q) const { return recovery.cast<cplx>() * q; }

CExtVector Pencil::recover(const CExtVector& q) const { return recovery.cast<cext>() * q; }

void Pencil::replace_row(int row, const CExtRow& p_full_row, const CExtRow& q_full_row,
                         const std::string& label) {
    if (row < 0 || row >= size()) throw InputError("replace_row: row index out of range");
    if (p_full_row.size() != P_full.cols() || q_full_row.size() != Q_full.cols())
        throw InputError("replace_row: functional length must equal the full unknown count");
    P_full.row(row) = p_full_row;
    Q_full.row(row) = q_full_row;
    P.row(row) = apply_recovery(CExtMatrix(p_full_row), recovery);
    Q.row(row) = apply_recovery(CExtMatrix(q_full_row), recovery);
    rows[static_cast<std::size_t>(row)] = {label, -1};
}

CExtMatrix apply_recovery(const CExtMatrix& full, const ExtMatrix& recovery) {
    CExtMatrix out = CExtMatrix::Zero(full.rows(), recovery.cols());
    for (Eigen::Index c = 0; c < recovery.cols(); ++c)
        for (Eigen::Index i = 0; i < recovery.rows(); ++i) {
            const ext r = recovery(i, c);
            if (r != 0) out.col(c) += full.col(i) * r;
        }
    return out;
}

ExtMatrix wall_recovery(const CollocationGrid& g) {
    const int N = g.N();
    ExtMatrix R = ExtMatrix::Zero(2 * N + 2, 2 * N - 1);
    const auto& D1 = g.d(1);
    for (int j = 2; j <= N; ++j) {
        const int c = j - 2;
        R(j, c) = 1;
        R(1, c) = -D1(0, j) / D1(0, 1);
    }
    for (int j = 1; j <= N; ++j) R(N + 1 + j, N - 2 + j) = 1;
    return R;
}

OperatorRows governing_rows(const FlowParams& p, const CollocationGrid& g) {
    const int n = g.nodes();
    const ext re = p.re, alpha = p.alpha;
    const cext ic(0, 1 / re);
    const ExtVector& y = g.y;
    Op Q11(n), Q12(n), Q21(n), Q22(n), R11(n), R12(n), R21(n), R22(n);

    switch (p.mode_case()) {
        case ModeCase::General: {
            const CoeffSet cs = make_coeffs({p.alpha, p.n});
            const ext nn = p.n, a2 = alpha * alpha, l = cs.wn.ell();
            const ext Uy = MeanFlow::Uy;
            for (int j = 0; j < n; ++j) {
                const ext yj = y(j), d = cs.d(yj), d2 = cs.d2(yj), dsq = d * d, d3 = dsq * d;
                Q11.c[0](j) = -a2 * cs.g(1, yj);
                Q11.c[1](j) = cs.g(2, yj);
                Q11.c[2](j) = 4 * yj * d3;
                Q12.c[0](j) = -2 * alpha * nn * dsq;
                R11.c[0](j) = -8 * alpha * nn * nn * Uy * dsq + ic * (a2 * a2 * cs.g(3, yj));
                R11.c[1](j) = ic * (-8 * a2 * cs.g(4, yj));
                R11.c[2](j) = ic * cs.g(5, yj);
                R11.c[3](j) = ic * (8 * yj * (cs.g(2, yj) + 4 * d3));
                R11.c[4](j) = ic * (16 * yj * yj * d3);
                R12.c[0](j) = ic * (-8 * a2 * alpha * nn * d2);
                R12.c[1](j) = ic * (-8 * a2 * alpha * nn * 2 * yj * d);
                Q22.c[0](j) = dsq;
                R21.c[0](j) = 2 * nn * dsq * Uy + ic * (2 * alpha * nn * a2 * cs.g(6, yj));
                R21.c[1](j) = ic * (2 * alpha * nn * (-2) * (d2 + (l + 3) * d));
                R21.c[2](j) = ic * (2 * alpha * nn * (-4) * yj * d);
                R22.c[0](j) = ic * (-a2 * cs.g(7, yj));
                R22.c[1](j) = ic * (4 * d * ((l + 1) * d + nn * nn));
                R22.c[2](j) = ic * (4 * yj * dsq);
            }
            break;
        }
        case ModeCase::AxisymmetricFinite: {
            const ext a2 = alpha * alpha;
            for (int j = 0; j < n; ++j) {
                const ext yj = y(j);
                Q11.c[0](j) = -a2;
                Q11.c[1](j) = 8;
                Q11.c[2](j) = 4 * yj;
                R11.c[0](j) = ic * (a2 * a2);
                R11.c[1](j) = ic * (-16 * a2);
                R11.c[2](j) = ic * (96 - 8 * a2 * yj);
                R11.c[3](j) = ic * (96 * yj);
                R11.c[4](j) = ic * (16 * yj * yj);
                Q22.c[0](j) = 1;
                R22.c[0](j) = ic * (-a2);
                R22.c[1](j) = ic * ext(8);
                R22.c[2](j) = ic * (4 * yj);
            }
            break;
        }
        case ModeCase::AxisymmetricZero: {
            for (int j = 0; j < n; ++j) {
                const ext yj = y(j);
                Q11.c[0](j) = 1;
                Q22.c[0](j) = 1;
                R11.c[1](j) = ic * ext(4);
                R11.c[2](j) = ic * (4 * yj);
                R22.c[1](j) = ic * ext(8);
                R22.c[2](j) = ic * (4 * yj);
            }
            break;
        }
    }

    OperatorRows out;
    out.P = CExtMatrix::Zero(2 * n, 2 * n);
    out.Q = CExtMatrix::Zero(2 * n, 2 * n);
    fill(out.Q, 0, 0, Q11, g);
    fill(out.Q, 0, n, Q12, g);
    fill(out.Q, n, 0, Q21, g);
    fill(out.Q, n, n, Q22, g);
    fill(out.P, 0, 0, convect(Q11, R11, alpha, y), g);
    fill(out.P, 0, n, convect(Q12, R12, alpha, y), g);
    fill(out.P, n, 0, convect(Q21, R21, alpha, y), g);
    fill(out.P, n, n, convect(Q22, R22, alpha, y), g);
    return out;
}

FunctionalRow derivative_regularity_row(const FlowParams& p, const CollocationGrid& g) {
    const int n = g.nodes();
    const ext alpha = p.alpha, a2 = alpha * alpha, re = p.re;
    const cext ic(0, 1 / re);
    FunctionalRow out{CExtRow::Zero(2 * n), CExtRow::Zero(2 * n)};
    std::vector<cext> qphi, qom, pphi, pom;

    switch (p.mode_case()) {
        case ModeCase::General: {
            const CoeffSet cs = make_coeffs({p.alpha, p.n});
            const ext nn = p.n, n2 = nn * nn, n3 = n2 * nn, n5 = n3 * n2, n6 = n3 * n3;
            const ext l = cs.wn.ell();
            auto G = [&](int k) { return cs.g(k, 0); };
            qphi = {-a2 * a2 * G(8), a2 * G(9), G(10)};
            qom = {-2 * alpha * n3 * 2 * a2, -2 * alpha * n3 * n2};
            pphi = {alpha * qphi[0] + a2 * alpha * G(11) + ic * (a2 * a2 * a2 * G(12)),
                    alpha * qphi[1] - 4 * alpha * n6 * l + ic * (a2 * a2 * G(13)),
                    alpha * qphi[2] + ic * (-a2 * G(14)), ic * G(15)};
            pom = {alpha * qom[0] + 2 * a2 * n5 + ic * (-8 * a2 * alpha * nn * a2 * (l - 1)),
                   alpha * qom[1] + ic * (-8 * a2 * alpha * nn * n2 * (l + 3))};
            break;
        }
        case ModeCase::AxisymmetricFinite: {
            qphi = {0, -a2, 12};
            pphi = {alpha * a2, alpha * qphi[1] - 8 * alpha, alpha * qphi[2] + ic * (-24 * a2), ic * ext(192)};
            pphi[1] += ic * (a2 * a2);
            break;
        }
        case ModeCase::AxisymmetricZero:
            throw InputError("no derivative regularity row in the axisymmetric zero case");
    }
    add_centre(out.Q, 0, qphi, g);
    add_centre(out.Q, n, qom, g);
    add_centre(out.P, 0, pphi, g);
    add_centre(out.P, n, pom, g);
    return out;
}

Pencil assemble(const FlowParams& p, const CollocationGrid& g) {
    check_inputs(p, g, ModeCase::General);
    return layout_phi_omega(p, g, ModeCase::General);
}

Pencil assemble_axisym(const FlowParams& p, const CollocationGrid& g) {
    check_inputs(p, g, ModeCase::AxisymmetricFinite);
    return layout_phi_omega(p, g, ModeCase::AxisymmetricFinite);
}

Pencil assemble_zero(const FlowParams& p, const CollocationGrid& g) {
    check_inputs(p, g, ModeCase::AxisymmetricZero);
    const int N = g.N(), n = g.nodes();
    const OperatorRows ops = governing_rows(p, g);
    const int size = 2 * N;
    CExtMatrix Pf(size, 2 * n), Qf(size, 2 * n);
    ExtMatrix R = ExtMatrix::Zero(2 * n, size);
    std::vector<RowTag> tags;
    for (int b = 0; b < 2; ++b) {
        const std::string name = b == 0 ? "psi1" : "psi2";
        for (int j = 1; j <= N; ++j) {
            const int r = b * N + j - 1;
            Pf.row(r) = ops.P.row(b * n + j);
            Qf.row(r) = ops.Q.row(b * n + j);
            tags.push_back({j == N ? name + "-regularity" : name, j});
            R(b * n + j, r) = 1;
        }
    }
    return finish(p, g, ModeCase::AxisymmetricZero, std::move(Pf), std::move(Qf), std::move(R),
                  std::move(tags));
}

Pencil assemble_any(const FlowParams& p, const CollocationGrid& g) {
    switch (p.mode_case()) {
        case ModeCase::General: return assemble(p, g);
        case ModeCase::AxisymmetricFinite: return assemble_axisym(p, g);
        case ModeCase::AxisymmetricZero: return assemble_zero(p, g);
    }
    throw InputError("unknown mode case");
}

Pencil build_pencil(const FlowParams& p) {
    p.validate();
    return assemble_any(p, make_grid(resolve_grid(p)));
}

}  // namespace pipestab
