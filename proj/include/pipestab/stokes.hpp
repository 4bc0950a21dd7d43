#pragma once

#include <vector>

#include "pipestab/grid.hpp"

namespace pipestab {

enum class StokesKind { Psi1, Psi2 };

struct StokesMode {
    double lambda = 0.0;
    StokesKind kind = StokesKind::Psi1;
    int kmax = 90;
    std::vector<ext> series;  // a_k = lambda^k c_k, coefficient of y^k before normalization
    double norm = 1.0;        // scale giving (psi, psi) = 1
};

// c_0 = 1, c_{k+1} = c_k / ((k+1)(k+m)) with m = 1 (Psi1) or 2 (Psi2).
std::vector<ext> char_coefficients(StokesKind kind, int kmax);

// Real roots of the truncated characteristic polynomial, ascending in |lambda|.
std::vector<double> char_roots(StokesKind kind, int kmax = 90);

StokesMode make_mode(StokesKind kind, double lambda, int kmax = 90);
std::vector<StokesMode> stokes_modes(StokesKind kind, int count, int kmax = 90);

// Decay rate omega_i = 4 lambda / Re.
inline double stokes_omega_i(double lambda, double re) { return 4.0 * lambda / re; }

Eigen::VectorXd eigenfunction(const StokesMode& mode, const Eigen::VectorXd& y);

Eigen::MatrixXd gram_matrix(StokesKind kind, const std::vector<StokesMode>& modes, const CollocationGrid& grid);

// E(t) = 1/2 (sum |a_k|^2 e^{2 w_k t} + sum |a_l|^2 e^{2 w_l t}), w = 4 lambda / Re.
double energy_evolution(const std::vector<double>& a_psi1, const std::vector<double>& a_psi2,
                        const std::vector<StokesMode>& psi1, const std::vector<StokesMode>& psi2, double t,
                        double re);

}  // namespace pipestab
