#include "cpev/cpe/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>

#include "cpev/errors.hpp"

namespace cpev::cpe {

namespace {

struct Slab {
  std::size_t chart_rule = 0;
  std::size_t first = 0;
};

}  // namespace

SweepResult integrate_quantities(const CPETriple& t, const geometry::QuadratureRule& rule, std::size_t count,
                                 std::size_t max_count, int jet_order, const PointIntegrand& integrand, int jobs) {
  std::vector<Slab> slabs;
  for (std::size_t c = 0; c < rule.charts.size(); ++c)
    for (std::size_t i = 0; i < rule.charts[c].nodes[0].size(); ++i) slabs.push_back({c, i});

  std::vector<std::vector<double>> partial(slabs.size(), std::vector<double>(count, 0.0));
  std::vector<std::vector<double>> partial_max(slabs.size(), std::vector<double>(max_count, 0.0));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    std::vector<double> values(count), peaks(max_count);
    while (true) {
      const std::size_t s = next.fetch_add(1);
      if (s >= slabs.size()) return;
      {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (failure) return;
      }
      const geometry::ChartRule& cr = rule.charts[slabs[s].chart_rule];
      const geometry::Chart& chart = t.manifold->charts[static_cast<std::size_t>(cr.chart)];
      std::vector<double>& acc = partial[s];
      std::vector<double>& top = partial_max[s];
      std::size_t node = 0;
      try {
        geometry::for_each_node_slab(cr, slabs[s].first, slabs[s].first + 1,
                                     [&](int ci, std::span<const double> x, double w) {
                                       const TriplePoint p = evaluate_point(t, ci, x, jet_order, curvature::CurvatureDetail::ricci);
                                       std::fill(values.begin(), values.end(), 0.0);
                                       std::fill(peaks.begin(), peaks.end(), 0.0);
                                       integrand(p, values, peaks);
                                       const double measure = w * p.curvature.connection.sqrt_det * chart.weight(x);
                                       for (std::size_t q = 0; q < count; ++q) {
                                         if (!std::isfinite(values[q])) {
                                           std::ostringstream os;
                                           os << "non-finite integrand " << q << " at node " << node
                                              << " of slab " << slabs[s].first << " in chart " << ci << " (x =";
                                           for (double v : x) os << ' ' << v;
                                           os << ')';
                                           throw EvaluationError(os.str());
                                         }
                                         acc[q] += measure * values[q];
                                       }
                                       for (std::size_t q = 0; q < max_count; ++q) {
                                         if (!std::isfinite(peaks[q]))
                                           throw EvaluationError("non-finite pointwise maximum quantity at node " +
                                                                 std::to_string(node));
                                         top[q] = std::max(top[q], peaks[q]);
                                       }
                                       ++node;
                                     });
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };

  const int workers = std::max(1, jobs);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  SweepResult result;
  result.integrals.assign(count, 0.0);
  result.maxima.assign(max_count, 0.0);
  for (const auto& p : partial)
    for (std::size_t q = 0; q < count; ++q) result.integrals[q] += p[q];
  for (const auto& p : partial_max)
    for (std::size_t q = 0; q < max_count; ++q) result.maxima[q] = std::max(result.maxima[q], p[q]);
  return result;
}

}  // namespace cpev::cpe
