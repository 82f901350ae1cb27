#pragma once

#include <functional>
#include <span>
#include <vector>

#include "cpev/cpe/operators.hpp"
#include "cpev/geometry/quadrature.hpp"

namespace cpev::cpe {

// Fills `sums` with integrand values at one node (the sweep multiplies them
// by the Riemannian volume element and the chart weight) and `maxima` with
// quantities whose largest value over the nodes is wanted.
using PointIntegrand = std::function<void(const TriplePoint& p, std::span<double> sums, std::span<double> maxima)>;

struct SweepResult {
  std::vector<double> integrals;
  std::vector<double> maxima;
};

// Integrates `count` quantities over the manifold in one pass. Nodes are
// grouped into slabs by their first coordinate; slabs are summed in a fixed
// order, so the result does not depend on `jobs`. A non-finite value raises
// EvaluationError naming the node.
SweepResult integrate_quantities(const CPETriple& t, const geometry::QuadratureRule& rule, std::size_t sum_count,
                                 std::size_t max_count, int jet_order, const PointIntegrand& integrand, int jobs = 1);

}  // namespace cpev::cpe
