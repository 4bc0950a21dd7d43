#include <doctest.h>

#include <random>

#include "pipestab/coeffs.hpp"

using namespace pipestab;

TEST_CASE("d family by hand") {
    auto [d, d2] = eval_d_family({1.0, 1}, 0.0);
    CHECK(d == 1.0);
    CHECK(d2 == 1.0);
    std::tie(d, d2) = eval_d_family({0.0, 2}, 0.37);
    CHECK(d == 4.0);
    CHECK(d2 == 8.0);
    std::tie(d, d2) = eval_d_family({1.0, 2}, 1.0);
    CHECK(d == 5.0);
    CHECK(d2 == 8.0);
    CHECK_THROWS_AS(eval_d_family({0.0, 0}, 0.5), InputError);
}

TEST_CASE("g values by hand") {
    CHECK(eval_g(6, {1.0, 1}, 0.0) == 3.0);
    CHECK(eval_g(7, {0.0, 1}, 0.0) == 7.0);
    CHECK(eval_g(7, {0.0, 1}, 0.8) == 7.0);
    CHECK(eval_g(10, {1.3, 1}, 0.2) == 12.0);
    CHECK(eval_g(1, {0.0, 2}, 0.5) == 128.0);
    CHECK_THROWS_AS(eval_g(0, {1.0, 1}, 0.0), InputError);
    CHECK_THROWS_AS(eval_g(16, {1.0, 1}, 0.0), InputError);
}

TEST_CASE("horner matches naive summation") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> nd(1, 25);
    std::uniform_real_distribution<double> ad(0.0, 25.0), yd(0.0, 1.0);
    double worst = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const WaveNumbers wn{ad(rng), nd(rng)};
        const CoeffSet s = make_coeffs(wn);
        const ext z = static_cast<ext>(wn.alpha) * wn.alpha * yd(rng);
        for (const auto& p : s.poly) {
            const ext h = p.horner(z), nv = p.naive(z);
            const ext scale = std::max<ext>(std::abs(nv), 1e-300L);
            worst = std::max(worst, static_cast<double>(std::abs(h - nv) / scale));
        }
    }
    CHECK(worst < 1e-13);
}

TEST_CASE("g invariant under n -> -n") {
    for (int n = 1; n <= 12; ++n)
        for (double a : {0.0, 0.5, 3.0})
            for (int k = 1; k <= 15; ++k)
                for (double y : {0.0, 0.4, 1.0}) CHECK(eval_g(k, {a, n}, y) == eval_g(k, {a, -n}, y));
}

TEST_CASE("positivity of d, g1, g2 and g5 at alpha = 0") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> nd(1, 25);
    std::uniform_real_distribution<double> ad(0.0, 25.0), yd(0.0, 1.0);
    for (int trial = 0; trial < 500; ++trial) {
        const WaveNumbers wn{ad(rng), nd(rng)};
        const double y = yd(rng);
        CHECK(eval_d_family(wn, y).first > 0);
        CHECK(eval_g(1, wn, y) > 0);
        CHECK(eval_g(2, wn, y) > 0);
        CHECK(eval_g(5, {0.0, wn.n}, y) > 0);
    }
}
