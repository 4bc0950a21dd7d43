#pragma once

#include "pipestab/coeffs.hpp"
#include "pipestab/grid.hpp"

namespace pipestab {

struct VelocityProfile {
    Eigen::VectorXd r;  // r = sqrt(y) at every node
    CVector u, v, w;
    ModeCase mode_case = ModeCase::General;
    double alpha = 0.0;
    int n = 0;
};

// phi/Omega (or psi1/psi2 in the zero case) nodal values to (u', v', w').
VelocityProfile reconstruct(ModeCase mode_case, const CVector& phi, const CVector& omega,
                            const CollocationGrid& grid, const WaveNumbers& wn);

// Axially constant energy in working variables, n != 0.
double energy(ModeCase mode_case, const CVector& phi, const CVector& omega, const CollocationGrid& grid,
              const WaveNumbers& wn);

// 1/2 int (|u'|^2 + |v'|^2 + |w'|^2) dy.
double velocity_energy(const VelocityProfile& profile, const CollocationGrid& grid);

}  // namespace pipestab
