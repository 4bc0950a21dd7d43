#pragma once

#include <vector>

#include "pipestab/assembly.hpp"
#include "pipestab/fields.hpp"

namespace pipestab {

struct GrowthState {
    CVector phi;
    CVector omega;
};

struct GrowthResult {
    int n = 1;
    double t = 0.0;
    std::vector<double> gains;  // descending
    double G = 0.0;
    double max_imag_ratio = 0.0;  // max |Im g| / |g|
    CVector phi0, omega0;         // E(0) = 1
    CVector phi_t, omega_t;
};

// Omega(t) = Omega0 - 2 i n U_y t phi0, phi unchanged.
GrowthState evolve_state(const CVector& phi0, const CVector& omega0, int n, double t);

// Gain pencil A q = g M q; unknowns phi at nodes 1..N and Omega at 0..N.
Pencil build_growth_pencil(int n, double t, const CollocationGrid& grid);

GrowthResult optimal_growth(int n, double t, const CollocationGrid& grid);

// The inviscid problem takes the Re > 6000 branch of the auto rule.
GridSpec growth_grid(int n, int N, StretchChoice stretch = StretchChoice::automatic());
GrowthResult optimal_growth(int n, double t, int N, StretchChoice stretch = StretchChoice::automatic());

// Inverts (l+2) D phi + y D^2 phi = C with phi(1) = 0 by nested quadrature.
CVector phi0_from_C(const CVector& C, int n, const CollocationGrid& grid);

// (l+2) D phi + y D^2 phi on the grid.
CVector perpendicular_operator(const CVector& phi, int n, const CollocationGrid& grid);

struct PatternField {
    Eigen::VectorXd r;      // radial samples (grid nodes, r = sqrt(y))
    Eigen::VectorXd theta;  // azimuthal samples on [0, 2 pi)
    Eigen::MatrixXd u, v, w;  // rows: r, columns: theta
};

PatternField pattern_fields(const GrowthState& state, int n, const CollocationGrid& grid, int ntheta = 64);

}  // namespace pipestab
