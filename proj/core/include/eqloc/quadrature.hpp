#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "eqloc/chart.hpp"

namespace eqloc {

struct GaussRule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule (cached). Nodes by Newton iteration on the
/// Legendre polynomial, accurate to machine precision.
const GaussRule& gauss_legendre(int n);

/// Initial tensor-product grid over the chart box with excluded bands cut
/// out of the affected axes (used for residual sampling).
std::vector<Pt> tensor_grid_nodes(const Chart& chart, int nodes_per_axis);

struct IntegralResult {
    Complex value{0.0, 0.0};
    double error_estimate = 0.0;  // refinement difference + excluded-band bound
    int nodes_per_axis = 0;       // final rule size
};

struct MultiIntegralResult {
    std::vector<Complex> values;
    double error_estimate = 0.0;
    int nodes_per_axis = 0;
};

/// Tensor-product Gauss-Legendre integration of a pointwise density over the
/// chart box minus the excluded bands. The per-axis rule is doubled until two
/// successive estimates agree to `refine_rel` (relative, with a tiny absolute
/// floor) or the caps are hit; failure to converge raises an Integration
/// error.
IntegralResult integrate_over_chart(const Chart& chart,
                                    const std::function<Complex(const Pt&)>& density,
                                    int initial_nodes, int max_nodes,
                                    long max_total_nodes, double refine_rel);

/// Same driver for several densities sharing per-node work: the callback
/// fills `out` (size ncomp) at each node, refinement stops when every
/// component has converged. Node evaluation may be striped over two threads;
/// accumulation order is fixed by the stripe layout, so results are
/// bit-stable across runs.
MultiIntegralResult integrate_over_chart_multi(
    const Chart& chart, int ncomp,
    const std::function<void(const Pt&, std::span<Complex>)>& densities,
    int initial_nodes, int max_nodes, long max_total_nodes, double refine_rel);

}  // namespace eqloc
