#pragma once

#include <memory>
#include <string>
#include <vector>

#include "pipestab/grid.hpp"
#include "pipestab/types.hpp"

namespace pipestab {

struct RowTag {
    std::string equation;
    int node = 0;
};

// P q = omega Q q after wall elimination. Full matrices keep every nodal
// unknown of both variables (columns [0, N] then [N+1, 2N+1]); the reduced
// pencil is full * recovery.
struct Pencil {
    CExtMatrix P, Q;
    CExtMatrix P_full, Q_full;
    ExtMatrix recovery;
    ModeCase mode_case = ModeCase::General;
    FlowParams params;
    std::shared_ptr<const CollocationGrid> grid;
    std::vector<RowTag> rows;

    int size() const { return static_cast<int>(P.rows()); }
    CMatrix P_double() const { return P.cast<cplx>(); }
    CMatrix Q_double() const { return Q.cast<cplx>(); }

    CVector recover(const CVector& q) const;
    CExtVector recover(const CExtVector& q) const;

    // Replace one equation by a functional on the full nodal vector.
    void replace_row(int row, const CExtRow& p_full_row, const CExtRow& q_full_row,
                     const std::string& label = "custom");
};

// Governing operators collocated at every node, both equations stacked
// (rows [0, N] first equation, [N+1, 2N+1] second).
struct OperatorRows {
    CExtMatrix P, Q;
};

OperatorRows governing_rows(const FlowParams& params, const CollocationGrid& grid);

struct FunctionalRow {
    CExtRow P, Q;
};

// d/dy of the phi equation at the centreline, in closed form.
FunctionalRow derivative_regularity_row(const FlowParams& params, const CollocationGrid& grid);

Pencil assemble(const FlowParams& params, const CollocationGrid& grid);
Pencil assemble_axisym(const FlowParams& params, const CollocationGrid& grid);
Pencil assemble_zero(const FlowParams& params, const CollocationGrid& grid);

// Routes by ModeCase.
Pencil assemble_any(const FlowParams& params, const CollocationGrid& grid);
Pencil build_pencil(const FlowParams& params);

// Nodal wall-elimination map shared by the phi/Omega solvers: phi_0 = 0,
// phi_1 from D phi(1) = 0, Omega_0 = 0.
ExtMatrix wall_recovery(const CollocationGrid& grid);

// Reduced = full * recovery, exploiting the sparsity of the recovery map.
CExtMatrix apply_recovery(const CExtMatrix& full, const ExtMatrix& recovery);

}  // namespace pipestab
