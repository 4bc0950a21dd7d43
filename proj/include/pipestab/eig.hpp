#pragma once

#include <vector>

#include "pipestab/assembly.hpp"

namespace pipestab {

struct RefineOptions {
    int max_iter = 200;
    double tol = 1e-12;
    int arnoldi_dim = 30;
};

struct SolveOptions {
    // Number of least-decaying modes polished by shift-invert after QZ.
    int refine = 0;
    RefineOptions refine_opts;
};

struct Spectrum {
    std::vector<cplx> omega;
    CMatrix vectors;  // reduced eigenvectors, one per column
    CMatrix full;     // recovered nodal values of both variables
    std::vector<double> residual;
    std::vector<bool> refined;
    FlowParams params;
    ModeCase mode_case = ModeCase::General;
    int nodes = 0;

    int size() const { return static_cast<int>(omega.size()); }
    // phi (or psi1) and Omega (or psi2) nodal values of mode k.
    CVector first(int k) const { return full.col(k).head(nodes); }
    CVector second(int k) const { return full.col(k).tail(nodes); }
};

struct RefinedMode {
    cplx omega;
    cext omega_ext;
    CVector vector;
    CVector full;
    int iterations = 0;
    double residual = 0.0;
};

Spectrum solve_qz(const Pencil& pencil, const SolveOptions& opts = {});
Spectrum least_decaying(const Spectrum& spectrum, int k);
RefinedMode refine_mode(const Pencil& pencil, cplx shift, const RefineOptions& opts = {});

// 2-norm condition number of Q^{-1} P - omega I.
double condition_diagnostic(const Pencil& pencil, cplx omega);

// ||P v - omega Q v|| / (||P|| ||v||) on the assembled pencil.
double eigen_residual(const Pencil& pencil, cplx omega, const CVector& v);

Spectrum compute_spectrum(const FlowParams& params, int refine = 0);

}  // namespace pipestab
