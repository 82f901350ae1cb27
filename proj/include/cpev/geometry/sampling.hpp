#pragma once

#include <cstdint>
#include <vector>

#include "cpev/geometry/manifold.hpp"

namespace cpev::geometry {

inline constexpr int kDefaultSampleCount = 200;

struct SamplePoint {
  int chart = 0;
  std::vector<double> x;
};

// Halton points in each chart box with a Cranley-Patterson rotation drawn
// from `seed`, kept `margin` (fraction of each side) away from the box
// boundary so that polar coordinate singularities are avoided.
std::vector<SamplePoint> interior_samples(const ChartedManifold& m, int count, std::uint64_t seed,
                                          double margin = 0.05);

}  // namespace cpev::geometry
