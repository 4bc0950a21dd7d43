#pragma once

#include <vector>

#include "pipestab/eig.hpp"

namespace pipestab {

// Same layout as Pencil; grid nodes are radii r in [0, 1] and D is d/dr.
using BdPencil = Pencil;

// Chebyshev grid in r (index 0 at the wall, index N at the axis).
CollocationGrid bd_grid(int N);

// phi_bar = D phi_bar = Omega_bar = 0 at r = 1; phi_bar = Omega_bar = 0 at r = 0 with
// D phi_bar = 0 (|n| >= 2) or D^2 phi_bar = 0 (|n| = 1).
BdPencil assemble_bd(const FlowParams& params, const CollocationGrid& rgrid);
BdPencil build_bd_pencil(const FlowParams& params);

struct ComplexRect {
    double re_min = 0, re_max = 0, im_min = 0, im_max = 0;
    bool contains(cplx z) const {
        return z.real() >= re_min && z.real() <= re_max && z.imag() >= im_min && z.imag() <= im_max;
    }
};

struct ModeMatch {
    cplx present;
    cplx bd;
    double deviation = 0.0;
    double cond_present = 0.0;  // zero unless pencils were supplied
    double cond_bd = 0.0;
};

struct ComparisonReport {
    std::vector<ModeMatch> matches;
    int count_present = 0;
    int count_bd = 0;
    double max_deviation = 0.0;
};

// Each present eigenvalue inside the region is paired with its nearest BD eigenvalue.
ComparisonReport compare_spectra(const Spectrum& present, const Spectrum& bd, const ComplexRect& region,
                                 const Pencil* present_pencil = nullptr, const BdPencil* bd_pencil = nullptr);

}  // namespace pipestab
