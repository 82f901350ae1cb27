#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "cpev/geometry/manifold.hpp"

namespace cpev::cpe {

enum class Exactness { exact_cpe, trace_only, non_solution };

std::string to_string(Exactness e);

inline constexpr double kExactThreshold = 1e-8;      // max |E| for exact_cpe
inline constexpr double kTraceThreshold = 1e-8;      // max |trace residual| for trace_only
inline constexpr double kSeparationThreshold = 1e-4; // max |E| must exceed this for trace_only
inline constexpr double kScalarSpreadThreshold = 1e-9;

// (M, g, f, R) with the classification measured on interior samples.
struct CPETriple {
  std::shared_ptr<const geometry::ChartedManifold> manifold;
  geometry::ScalarField potential;
  double scalar_curvature = 0.0;
  Exactness exactness = Exactness::non_solution;

  // Sample statistics behind the classification.
  int samples = 0;
  double max_cpe_residual = 0.0;    // max Frobenius norm of E
  double max_trace_residual = 0.0;  // max |Delta f + R f/(n-1)|
  double scalar_spread = 0.0;       // max - min of pointwise R
};

CPETriple make_triple(std::shared_ptr<const geometry::ChartedManifold> m, geometry::ScalarField potential,
                      int samples, std::uint64_t seed);

}  // namespace cpev::cpe
