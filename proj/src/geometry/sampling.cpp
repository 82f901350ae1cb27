#include "cpev/geometry/sampling.hpp"

#include <cmath>
#include <random>
#include <string>

#include "cpev/errors.hpp"

namespace cpev::geometry {

namespace {

constexpr int kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19};

double radical_inverse(std::uint64_t i, int base) {
  double inv = 1.0 / base, f = inv, r = 0.0;
  while (i > 0) {
    r += f * static_cast<double>(i % static_cast<std::uint64_t>(base));
    i /= static_cast<std::uint64_t>(base);
    f *= inv;
  }
  return r;
}

}  // namespace

std::vector<SamplePoint> interior_samples(const ChartedManifold& m, int count, std::uint64_t seed, double margin) {
  if (count < 0) throw InputError("sample count must be nonnegative");
  if (!(margin >= 0.0 && margin < 0.5)) throw InputError("sample margin must lie in [0, 0.5)");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<SamplePoint> out;
  for (std::size_t c = 0; c < m.charts.size(); ++c) {
    const CoordinateBox& box = m.charts[c].domain;
    const int dim = box.dim();
    if (dim > static_cast<int>(std::size(kPrimes))) throw InputError("too many coordinates for Halton sampling");
    std::vector<double> shift(static_cast<std::size_t>(dim));
    for (double& s : shift) s = unit(rng);
    for (int i = 0; i < count; ++i) {
      SamplePoint p;
      p.chart = static_cast<int>(c);
      p.x.resize(static_cast<std::size_t>(dim));
      for (int a = 0; a < dim; ++a) {
        double u = radical_inverse(static_cast<std::uint64_t>(i + 1), kPrimes[a]) + shift[static_cast<std::size_t>(a)];
        u -= std::floor(u);
        const double lo = box.lower[static_cast<std::size_t>(a)], hi = box.upper[static_cast<std::size_t>(a)];
        p.x[static_cast<std::size_t>(a)] = lo + (margin + (1.0 - 2.0 * margin) * u) * (hi - lo);
      }
      out.push_back(std::move(p));
    }
  }
  return out;
}

}  // namespace cpev::geometry
