#pragma once

#include <array>
#include <vector>

#include "pipestab/types.hpp"

namespace pipestab {

enum class Mapping { Linear, Stretched };

struct GridSpec {
    int N = 47;
    Mapping mapping = Mapping::Linear;
    double a = 0.0;

    static GridSpec linear(int N) { return {N, Mapping::Linear, 0.0}; }
    static GridSpec stretched(int N, double a) { return {N, Mapping::Stretched, a}; }
    void validate() const;
};

// Nodes run from the wall (index 0, y = 1) to the centreline (index N, y = 0).
struct CollocationGrid {
    GridSpec spec;
    ExtVector xi;
    ExtVector y;
    std::array<ExtMatrix, 4> D;  // D[k-1] is d^k/dy^k
    ExtVector w;

    int N() const { return spec.N; }
    int nodes() const { return spec.N + 1; }
    const ExtMatrix& d(int k) const { return D.at(static_cast<std::size_t>(k - 1)); }
    Eigen::VectorXd y_double() const { return y.cast<double>(); }
};

std::vector<ext> gauss_lobatto(int N);

CollocationGrid map_nodes(const GridSpec& spec);
std::array<ExtMatrix, 4> diff_matrices(const CollocationGrid& grid);
ExtVector quadrature_weights(const CollocationGrid& grid);

// Nodes, derivative matrices and weights in one call.
CollocationGrid make_grid(const GridSpec& spec);

// Linear if alpha <= 3 and Re <= 6000, else stretched with a = 2 (|n| <= 5) or a = 3.
GridSpec auto_grid(double alpha, int n, double re, int N);
GridSpec resolve_grid(const FlowParams& p);

// Inverse of the node map, y -> xi.
ext xi_of_y(const GridSpec& spec, ext y);

// Barycentric interpolation of nodal values to arbitrary y in [0, 1].
CVector interpolate(const CollocationGrid& grid, const CVector& values,
                    const Eigen::VectorXd& y_eval);

// Spectral tail integral F(y_j) = int_{y_j}^{1} f dy at every node.
CExtVector tail_integral(const CollocationGrid& grid, const CExtVector& f);

}  // namespace pipestab
