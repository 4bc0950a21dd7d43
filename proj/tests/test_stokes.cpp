#include <doctest.h>

#include "helpers.hpp"
#include "pipestab/eig.hpp"
#include "pipestab/stokes.hpp"

using namespace pipestab;

TEST_CASE("char_roots small truncation") {
    const auto r = char_roots(StokesKind::Psi1, 2);
    REQUIRE(r.size() == 2u);
    CHECK(r[0] == doctest::Approx(-2.0).epsilon(1e-7));
    CHECK(r[1] == doctest::Approx(-2.0).epsilon(1e-7));
    CHECK_THROWS_AS(char_roots(StokesKind::Psi1, 1), InputError);
    CHECK_THROWS_AS(char_roots(StokesKind::Psi1, 91), InputError);
}

TEST_CASE("roots against Bessel zeros") {
    // 4 lambda = -j^2 with j a zero of J0 (psi1) or J1 (psi2).
    const auto r1 = char_roots(StokesKind::Psi1, 90), r2 = char_roots(StokesKind::Psi2, 90);
    REQUIRE(r1.size() >= 7u);
    REQUIRE(r2.size() >= 7u);
    const long double j01 = testing_util::bessel_zero(0, 1);
    CHECK(std::abs(static_cast<double>(j01) - 2.404825557695773) < 1e-14);
    CHECK(std::abs(stokes_omega_i(r1[0], 3000) - (-0.0019277286543156)) < 1e-16);
    for (int k = 0; k < 5; ++k) {
        const double e1 = static_cast<double>(-testing_util::bessel_zero(0, k + 1) * testing_util::bessel_zero(0, k + 1) / 4);
        const double e2 = static_cast<double>(-testing_util::bessel_zero(1, k + 1) * testing_util::bessel_zero(1, k + 1) / 4);
        CHECK(std::abs(r1[k] - e1) < 1e-9 * std::abs(e1));
        CHECK(std::abs(r2[k] - e2) < 1e-9 * std::abs(e2));
    }
}

TEST_CASE("agreement digits fall with mode depth") {
    // Collocation versus series roots.
    FlowParams p;
    p.alpha = 0;
    p.n = 0;
    p.re = 3000;
    p.N = 47;
    const Spectrum s = compute_spectrum(p, 14);
    std::vector<double> block;
    for (int k = 0; k < s.size() && block.size() < 7; ++k)
        if (s.first(k).cwiseAbs().maxCoeff() >= s.second(k).cwiseAbs().maxCoeff()) block.push_back(s.omega[k].imag());
    const auto r = char_roots(StokesKind::Psi1, 90);
    double prev = 1e300;
    int violations = 0;
    for (int k = 0; k < 7; ++k) {
        const double err = std::abs(stokes_omega_i(r[k], 3000) - block[k]) / std::abs(block[k]);
        const double digits = err > 0 ? std::min(15.0, std::floor(-std::log10(err))) : 15;
        violations += digits > prev;
        prev = digits;
    }
    CHECK(violations == 0);
}

TEST_CASE("eigenfunctions") {
    const StokesMode m = make_mode(StokesKind::Psi1, char_roots(StokesKind::Psi1, 90)[0], 90);
    Eigen::VectorXd y(2);
    y << 0.0, 1.0;
    const Eigen::VectorXd v = eigenfunction(m, y);
    CHECK(v(0) == doctest::Approx(m.norm).epsilon(1e-15));
    CHECK(std::abs(v(1)) < 1e-12);

    // Against the collocation eigenvector of the psi1 block.
    FlowParams p;
    p.alpha = 0;
    p.n = 0;
    const Spectrum s = compute_spectrum(p, 1);
    const CollocationGrid g = make_grid(GridSpec::linear(47));
    const Eigen::VectorXd ser = eigenfunction(m, g.y_double());
    const CVector col = s.first(0);
    const cplx scale = col.dot(ser.cast<cplx>()) / ser.squaredNorm();
    CHECK((col - scale * ser.cast<cplx>()).cwiseAbs().maxCoeff() / std::abs(scale) < 1e-9);
}

TEST_CASE("Gram matrices") {
    const CollocationGrid g = make_grid(GridSpec::linear(64));
    for (auto kind : {StokesKind::Psi1, StokesKind::Psi2}) {
        const auto modes = stokes_modes(kind, 5, 90);
        const Eigen::MatrixXd G = gram_matrix(kind, modes, g);
        CHECK((G - Eigen::MatrixXd::Identity(5, 5)).cwiseAbs().maxCoeff() < 1e-10);
        const Eigen::MatrixXd one = gram_matrix(kind, {modes[0]}, g);
        CHECK(std::abs(one(0, 0) - 1) < 1e-12);
    }
    CHECK_THROWS_AS(gram_matrix(StokesKind::Psi1, stokes_modes(StokesKind::Psi2, 2, 90), g), InputError);
}

TEST_CASE("energy evolution") {
    const auto m1 = stokes_modes(StokesKind::Psi1, 3, 90), m2 = stokes_modes(StokesKind::Psi2, 2, 90);
    const std::vector<double> a1 = {1, 1, 1}, a2 = {1, 1};
    CHECK(energy_evolution(a1, a2, m1, m2, 0, 3000) == doctest::Approx(2.5));
    double prev = 1e300;
    for (int i = 0; i <= 100; ++i) {
        const double e = energy_evolution({0.3, 2.0, 0.1}, {1.5, 0.0}, m1, m2, 2.0 * i, 3000);
        CHECK(e < prev);
        prev = e;
    }
    const double ratio = energy_evolution({1}, {}, {m1[0]}, {}, 100, 3000) / energy_evolution({1}, {}, {m1[0]}, {}, 0, 3000);
    CHECK(ratio == doctest::Approx(std::exp(2 * -0.001927728654315596 * 100)).epsilon(1e-12));
    CHECK(ratio == doctest::Approx(0.6801).epsilon(1e-4));
    CHECK_THROWS_AS(energy_evolution({1, 2}, {}, {m1[0]}, {}, 0, 3000), InputError);
}
