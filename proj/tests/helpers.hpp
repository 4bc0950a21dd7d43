#pragma once

#include <cmath>
#include <complex>
#include <random>

#include "pipestab/grid.hpp"

namespace testing_util {

// J_m(x) from the ascending series, long double.
inline long double bessel_j(int m, long double x) {
    long double term = 1, sum = 0;
    for (int k = 1; k <= m; ++k) term *= x / 2 / k;
    for (int k = 0; k < 200; ++k) {
        sum += term;
        term *= -(x * x / 4) / ((k + 1.0L) * (k + 1.0L + m));
    }
    return sum;
}

// k-th positive zero of J_m by scan and bisection.
inline long double bessel_zero(int m, int k) {
    long double a = 0.5L, fa = bessel_j(m, a);
    int found = 0;
    for (long double b = a + 0.05L; b < 60; b += 0.05L) {
        const long double fb = bessel_j(m, b);
        if ((fa < 0) != (fb < 0) && ++found == k) {
            long double lo = b - 0.05L, hi = b;
            for (int it = 0; it < 200; ++it) {
                const long double mid = (lo + hi) / 2;
                if ((bessel_j(m, lo) < 0) == (bessel_j(m, mid) < 0))
                    lo = mid;
                else
                    hi = mid;
            }
            return (lo + hi) / 2;
        }
        fa = fb;
    }
    return NAN;
}

inline double max_abs(const Eigen::VectorXcd& v) { return v.cwiseAbs().maxCoeff(); }

}  // namespace testing_util
