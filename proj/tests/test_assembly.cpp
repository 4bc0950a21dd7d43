#include <doctest.h>

#include <random>

#include "pipestab/assembly.hpp"
#include "pipestab/coeffs.hpp"

using namespace pipestab;

namespace {

FlowParams params(double alpha, int n, double re, int N = 47) {
    FlowParams p;
    p.alpha = alpha;
    p.n = n;
    p.re = re;
    p.N = N;
    return p;
}

bool is_omega_row(const RowTag& t) { return t.equation.rfind("omega", 0) == 0; }

}  // namespace

TEST_CASE("pencil sizes") {
    CHECK(build_pencil(params(1, 1, 3000)).size() == 93);
    CHECK(build_pencil(params(1, 0, 3000)).size() == 93);
    CHECK(build_pencil(params(0, 0, 3000)).size() == 94);
    CHECK(build_pencil(params(0.5, 1, 2000, 39)).size() == 77);
    const Pencil p = build_pencil(params(1, 1, 3000));
    CHECK(p.rows.size() == 93u);
    CHECK(p.Q.rows() == p.Q.cols());
}

TEST_CASE("routing and input errors") {
    const CollocationGrid g = make_grid(GridSpec::linear(47));
    CHECK_THROWS_AS(assemble(params(1, 0, 3000), g), InputError);
    CHECK_THROWS_AS(assemble_axisym(params(1, 1, 3000), g), InputError);
    CHECK_THROWS_AS(assemble_zero(params(1, 0, 3000), g), InputError);
    CHECK_THROWS_AS(assemble(params(1, 1, 3000, 40), g), InputError);
    CHECK_THROWS_AS(build_pencil(params(1, 1, -5)), InputError);
    CHECK_THROWS_AS(build_pencil(params(-1, 1, 3000)), InputError);
    CHECK(assemble_any(params(0, 0, 3000), g).mode_case == ModeCase::AxisymmetricZero);
}

TEST_CASE("recovered vectors satisfy the wall conditions") {
    const Pencil p = build_pencil(params(1, 1, 3000));
    const CollocationGrid& g = *p.grid;
    const int m = g.nodes();
    std::mt19937 rng(3);
    std::normal_distribution<double> nd;
    for (int trial = 0; trial < 5; ++trial) {
        CVector q(p.size());
        for (int i = 0; i < q.size(); ++i) q(i) = cplx(nd(rng), nd(rng));
        const CVector f = p.recover(q);
        const CVector phi = f.head(m), om = f.tail(m);
        const cplx dphi = (g.d(1).row(0).cast<double>() * phi)(0);
        const double s = q.cwiseAbs().maxCoeff();
        CHECK(std::abs(phi(0)) / s < 1e-14);
        CHECK(std::abs(dphi) / s < 1e-12);
        CHECK(std::abs(om(0)) / s < 1e-14);
    }
}

TEST_CASE("n -> -n similarity on the Omega block") {
    const Pencil a = build_pencil(params(1, 2, 3000)), b = build_pencil(params(1, -2, 3000));
    const int N = a.params.N, size = a.size();
    Eigen::VectorXd rs(size), cs(size);
    for (int i = 0; i < size; ++i) {
        rs(i) = is_omega_row(a.rows[i]) ? -1 : 1;
        cs(i) = i >= N - 1 ? -1 : 1;
    }
    const CMatrix Pa = rs.asDiagonal() * a.P_double() * cs.asDiagonal();
    const CMatrix Qa = rs.asDiagonal() * a.Q_double() * cs.asDiagonal();
    const double sp = a.P_double().cwiseAbs().maxCoeff(), sq = a.Q_double().cwiseAbs().maxCoeff();
    CHECK((Pa - b.P_double()).cwiseAbs().maxCoeff() / sp < 1e-13);
    CHECK((Qa - b.Q_double()).cwiseAbs().maxCoeff() / sq < 1e-13);
}

TEST_CASE("axisymmetric blocks decouple") {
    const FlowParams p = params(1, 0, 3000);
    const Pencil pen = build_pencil(p);
    const int N = p.N;
    for (int r = 0; r < pen.size(); ++r) {
        const bool om = is_omega_row(pen.rows[r]);
        for (int c = 0; c < pen.size(); ++c) {
            const bool omc = c >= N - 1;
            if (om != omc) {
                CHECK(pen.P(r, c) == cext(0));
                CHECK(pen.Q(r, c) == cext(0));
            }
        }
    }
    // Omega = 1: (omega - alpha U) = i/Re (-alpha^2) at every collocated node.
    const CollocationGrid& g = *pen.grid;
    const int m = g.nodes();
    for (int r = 0; r < pen.size(); ++r) {
        if (!is_omega_row(pen.rows[r])) continue;
        const int j = pen.rows[r].node;
        cext pv = 0, qv = 0;
        for (int c = 0; c < m; ++c) {
            pv += pen.P_full(r, m + c);
            qv += pen.Q_full(r, m + c);
        }
        const cext expect = static_cast<ext>(p.alpha) * MeanFlow::U(g.y(j)) + cext(0, -p.alpha * p.alpha / p.re);
        CHECK(std::abs(static_cast<cplx>(qv) - 1.0) < 1e-15);
        CHECK(std::abs(static_cast<cplx>(pv - expect)) < 1e-12);
    }
}

TEST_CASE("zero case blocks") {
    const Pencil pen = build_pencil(params(0, 0, 3000));
    const int N = 47, m = 48;
    // psi1 = 1 is annihilated by yD^2 + D.
    for (int r = 0; r < N; ++r) {
        cext pv = 0;
        for (int c = 0; c < m; ++c) pv += pen.P_full(r, c);
        CHECK(std::abs(static_cast<cplx>(pv)) < 1e-10);
    }
    // Real after factoring i: P = i A with A real, Q real.
    for (int r = 0; r < pen.size(); ++r)
        for (int c = 0; c < pen.size(); ++c) {
            CHECK(pen.P(r, c).real() == 0.0L);
            CHECK(pen.Q(r, c).imag() == 0.0L);
        }
}

TEST_CASE("replace_row swaps one equation") {
    Pencil pen = build_pencil(params(1, 1, 3000));
    const int cols = static_cast<int>(pen.P_full.cols());
    CExtRow p = CExtRow::Zero(cols), q = CExtRow::Zero(cols);
    p(5) = 1;
    pen.replace_row(0, p, q, "probe");
    CHECK(pen.rows[0].equation == "probe");
    CHECK(pen.P.row(0).cwiseAbs().sum() > 0);
    CHECK_THROWS_AS(pen.replace_row(pen.size(), p, q), InputError);
    CHECK_THROWS_AS(pen.replace_row(0, CExtRow::Zero(3), q), InputError);
}

TEST_CASE("derivative regularity row matches the generic derivative of the phi equation") {
    // d/dy of sum_k c_k(y) D^k phi at y = 0 equals sum_k (c_k'(0) D^k + c_k(0) D^{k+1}) phi.
    for (const FlowParams p : {params(1.3, 1, 3000, 30), params(0.7, 3, 1500, 30), params(2.0, 0, 3000, 30)}) {
        const CollocationGrid g = make_grid(GridSpec::linear(p.N));
        const OperatorRows ops = governing_rows(p, g);
        const FunctionalRow row = derivative_regularity_row(p, g);
        const int m = g.nodes();
        // Finite differences of the collocated operator in y via a polynomial test function.
        CExtVector f(2 * m);
        for (int j = 0; j < m; ++j) {
            const ext y = g.y(j);
            f(j) = cext(1 + y + y * y * y, 0.5L * y * y);
            f(m + j) = cext(std::cos(y), y);
        }
        // Row value of the phi equation at every node, then differentiate in y at the centre.
        const CExtVector rowvals_p = ops.P.topRows(m) * f, rowvals_q = ops.Q.topRows(m) * f;
        const CExtVector dp = g.d(1).cast<cext>() * rowvals_p, dq = g.d(1).cast<cext>() * rowvals_q;
        const cext expect_p = dp(m - 1), expect_q = dq(m - 1);
        const cext got_p = (row.P * f)(0), got_q = (row.Q * f)(0);
        const double sp = std::max(1.0, static_cast<double>(std::abs(expect_p)));
        const double sq = std::max(1.0, static_cast<double>(std::abs(expect_q)));
        CHECK(static_cast<double>(std::abs(got_p - expect_p)) / sp < 1e-8);
        CHECK(static_cast<double>(std::abs(got_q - expect_q)) / sq < 1e-8);
    }
}
