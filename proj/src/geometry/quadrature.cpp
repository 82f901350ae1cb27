#include "cpev/geometry/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "cpev/errors.hpp"

namespace cpev::geometry {

GaussRule gauss_legendre(int points) {
  if (points < 1) throw InputError("Gauss-Legendre rule needs at least one point");
  GaussRule rule;
  rule.nodes.resize(static_cast<std::size_t>(points));
  rule.weights.resize(static_cast<std::size_t>(points));
  const int half = (points + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (points + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= points; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (points == 1) p0 = 1.0;
      dp = points * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) <= 1e-16) break;
    }
    // Recompute the derivative at the converged node for the weight.
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= points; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = points * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[static_cast<std::size_t>(i)] = -x;
    rule.nodes[static_cast<std::size_t>(points - 1 - i)] = x;
    rule.weights[static_cast<std::size_t>(i)] = w;
    rule.weights[static_cast<std::size_t>(points - 1 - i)] = w;
  }
  if (points % 2 == 1) rule.nodes[static_cast<std::size_t>(points / 2)] = 0.0;
  return rule;
}

std::size_t ChartRule::node_count() const {
  std::size_t count = 1;
  for (const auto& axis : nodes) count *= axis.size();
  return count;
}

std::size_t QuadratureRule::node_count() const {
  std::size_t count = 0;
  for (const auto& c : charts) count += c.node_count();
  return count;
}

QuadratureRule build_rule(const ChartedManifold& m, int order) {
  if (order < kMinQuadratureOrder || order > kMaxQuadratureOrder)
    throw InputError("quadrature order must lie in [" + std::to_string(kMinQuadratureOrder) + ", " +
                     std::to_string(kMaxQuadratureOrder) + "], got " + std::to_string(order));
  const GaussRule base = gauss_legendre(order);
  QuadratureRule rule;
  rule.order = order;
  for (std::size_t c = 0; c < m.charts.size(); ++c) {
    const CoordinateBox& box = m.charts[c].domain;
    ChartRule cr;
    cr.chart = static_cast<int>(c);
    for (int a = 0; a < box.dim(); ++a) {
      const double lo = box.lower[static_cast<std::size_t>(a)], hi = box.upper[static_cast<std::size_t>(a)];
      const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
      std::vector<double> nodes, weights;
      for (int i = 0; i < order; ++i) {
        nodes.push_back(mid + half * base.nodes[static_cast<std::size_t>(i)]);
        weights.push_back(half * base.weights[static_cast<std::size_t>(i)]);
      }
      cr.nodes.push_back(std::move(nodes));
      cr.weights.push_back(std::move(weights));
    }
    rule.charts.push_back(std::move(cr));
  }
  return rule;
}

void for_each_node_slab(const ChartRule& cr, std::size_t begin, std::size_t end, const NodeVisitor& visit) {
  const std::size_t dim = cr.nodes.size();
  if (dim == 0) return;
  std::size_t inner = 1;
  for (std::size_t a = 1; a < dim; ++a) inner *= cr.nodes[a].size();
  std::vector<double> x(dim);
  for (std::size_t first = begin; first < end && first < cr.nodes[0].size(); ++first) {
    for (std::size_t flat = 0; flat < inner; ++flat) {
      std::size_t rest = flat;
      double w = cr.weights[0][first];
      x[0] = cr.nodes[0][first];
      for (std::size_t a = dim - 1; a >= 1; --a) {
        const std::size_t i = rest % cr.nodes[a].size();
        rest /= cr.nodes[a].size();
        x[a] = cr.nodes[a][i];
        w *= cr.weights[a][i];
      }
      visit(cr.chart, x, w);
    }
  }
}

void for_each_node(const QuadratureRule& rule, const NodeVisitor& visit) {
  for (const auto& cr : rule.charts) for_each_node_slab(cr, 0, cr.nodes.empty() ? 0 : cr.nodes[0].size(), visit);
}

double integrate(const ChartedManifold& m, const Integrand& integrand, const QuadratureRule& rule) {
  double total = 0.0;
  std::size_t index = 0;
  for_each_node(rule, [&](int chart, std::span<const double> x, double w) {
    const Chart& c = m.charts[static_cast<std::size_t>(chart)];
    const Matrix g = metric_value(c, x);
    const double det = determinant(g);
    const double value = integrand(chart, x);
    if (!std::isfinite(value) || !(det > 0.0)) {
      std::ostringstream os;
      os << "non-finite integrand at node " << index << " of chart " << chart << " (x =";
      for (double v : x) os << ' ' << v;
      os << ')';
      throw EvaluationError(os.str());
    }
    total += w * value * std::sqrt(det) * c.weight(x);
    ++index;
  });
  return total;
}

double volume(const ChartedManifold& m, const QuadratureRule& rule) {
  return integrate(m, [](int, std::span<const double>) { return 1.0; }, rule);
}

}  // namespace cpev::geometry
