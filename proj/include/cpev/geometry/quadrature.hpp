#pragma once

#include <functional>
#include <span>
#include <vector>

#include "cpev/geometry/manifold.hpp"

namespace cpev::geometry {

inline constexpr int kMinQuadratureOrder = 4;
inline constexpr int kMaxQuadratureOrder = 128;

struct GaussRule {
  std::vector<double> nodes;    // on (-1, 1), ascending
  std::vector<double> weights;  // positive, sum to 2
};

GaussRule gauss_legendre(int points);

// Tensor-product rule on one chart box; nodes are generated lazily.
struct ChartRule {
  int chart = 0;
  std::vector<std::vector<double>> nodes;    // per axis, mapped into the box
  std::vector<std::vector<double>> weights;  // per axis, including the box scaling

  std::size_t node_count() const;
};

struct QuadratureRule {
  int order = 0;
  std::vector<ChartRule> charts;

  std::size_t node_count() const;
};

QuadratureRule build_rule(const ChartedManifold& m, int order);

// Visits every node in a fixed order; `weight` is the flat coordinate weight.
using NodeVisitor = std::function<void(int chart, std::span<const double> x, double weight)>;
void for_each_node(const QuadratureRule& rule, const NodeVisitor& visit);

// Visits the nodes of chart rule `cr` whose first-axis index lies in [begin, end).
void for_each_node_slab(const ChartRule& cr, std::size_t begin, std::size_t end, const NodeVisitor& visit);

using Integrand = std::function<double(int chart, std::span<const double> x)>;

// Sum over nodes of weight * integrand * sqrt(det g) * partition weight.
double integrate(const ChartedManifold& m, const Integrand& integrand, const QuadratureRule& rule);

double volume(const ChartedManifold& m, const QuadratureRule& rule);

}  // namespace cpev::geometry
