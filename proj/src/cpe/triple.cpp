#include "cpev/cpe/triple.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cpev/cpe/operators.hpp"
#include "cpev/errors.hpp"
#include "cpev/geometry/sampling.hpp"

namespace cpev::cpe {

std::string to_string(Exactness e) {
  switch (e) {
    case Exactness::exact_cpe: return "exact_cpe";
    case Exactness::trace_only: return "trace_only";
    case Exactness::non_solution: return "non_solution";
  }
  return "non_solution";
}

CPETriple make_triple(std::shared_ptr<const geometry::ChartedManifold> m, geometry::ScalarField potential,
                      int samples, std::uint64_t seed) {
  if (!m) throw InputError("triple needs a manifold");
  if (samples < 1) throw InputError("triple classification needs at least one sample");
  CPETriple t;
  t.manifold = std::move(m);
  t.potential = std::move(potential);
  t.samples = samples;
  const int n = t.manifold->dim;

  const auto points = geometry::interior_samples(*t.manifold, samples, seed);
  std::vector<TriplePoint> data;
  data.reserve(points.size());
  double rmin = std::numeric_limits<double>::infinity(), rmax = -rmin, rsum = 0.0;
  for (const auto& p : points) {
    data.push_back(evaluate_point(t, p.chart, p.x, 2));
    const double r = data.back().curvature.scalar;
    rmin = std::min(rmin, r);
    rmax = std::max(rmax, r);
    rsum += r;
  }
  t.scalar_curvature = rsum / static_cast<double>(data.size());
  t.scalar_spread = rmax - rmin;
  for (const auto& p : data) {
    t.max_cpe_residual = std::max(t.max_cpe_residual, cpe_residual(p.curvature, p.jet, t.scalar_curvature).norm());
    t.max_trace_residual = std::max(t.max_trace_residual, std::abs(trace_residual(p.jet, t.scalar_curvature, n)));
  }

  const bool constant_scalar = t.scalar_spread <= kScalarSpreadThreshold * (1.0 + std::abs(t.scalar_curvature));
  if (!constant_scalar)
    t.exactness = Exactness::non_solution;
  else if (t.max_cpe_residual <= kExactThreshold)
    t.exactness = Exactness::exact_cpe;
  else if (t.max_trace_residual <= kTraceThreshold && t.max_cpe_residual > kSeparationThreshold)
    t.exactness = Exactness::trace_only;
  else
    t.exactness = Exactness::non_solution;
  return t;
}

}  // namespace cpev::cpe
