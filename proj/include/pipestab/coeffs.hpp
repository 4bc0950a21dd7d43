#pragma once

#include <array>
#include <utility>
#include <vector>

#include "pipestab/types.hpp"

namespace pipestab {

struct WaveNumbers {
    double alpha = 0.0;
    int n = 1;

    int ell() const { return (n < 0 ? -n : n) - 1; }
};

struct MeanFlow {
    static constexpr ext Uy = -1;
    static ext U(ext y) { return 1 - y; }
};

// Polynomial in z = alpha^2 y, lowest power first.
struct ZPoly {
    std::vector<ext> c;

    ext horner(ext z) const;
    ext naive(ext z) const;
    // Coefficient of y^k after substituting z = alpha^2 y.
    ext y_coeff(int k, ext alpha2) const;
};

struct CoeffSet {
    WaveNumbers wn;
    std::array<ZPoly, 7> poly;     // g1..g7
    std::array<ext, 8> constant{};  // g8..g15

    ext d(ext y) const;
    ext d2(ext y) const;
    ext g(int index, ext y) const;
};

CoeffSet make_coeffs(const WaveNumbers& wn);

std::pair<double, double> eval_d_family(const WaveNumbers& wn, double y);
double eval_g(int index, const WaveNumbers& wn, double y);

}  // namespace pipestab
