#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cpev/geometry/jet.hpp"
#include "cpev/tensor/dense.hpp"

namespace cpev::geometry {

struct CoordinateBox {
  std::vector<double> lower;
  std::vector<double> upper;
  int dim() const { return static_cast<int>(lower.size()); }
  bool contains(std::span<const double> x) const;  // open box
};

// Metric components g_ij for i <= j (row-major upper triangle) as jets of
// the coordinate jets passed in.
using MetricExpression = std::function<std::vector<Jet>(std::span<const Jet> coordinates)>;
using WeightFunction = std::function<double(std::span<const double> coordinates)>;

struct Chart {
  CoordinateBox domain;
  MetricExpression metric;
  WeightFunction weight;  // partition-of-unity weight
};

struct SpectrumLevel {
  double eigenvalue = 0.0;  // of -Laplacian
  long long multiplicity = 0;
};

// A coordinate block carrying a round-sphere parametrization: coordinates
// [offset, offset + dim) are hyperspherical angles of a sphere of `radius`.
struct SphereFactor {
  int offset = 0;
  int dim = 0;
  double radius = 1.0;
};

struct ChartedManifold {
  std::string name;
  int dim = 0;
  std::vector<Chart> charts;
  std::optional<std::vector<SpectrumLevel>> analytic_spectrum;
  std::optional<double> known_volume;
  std::vector<SphereFactor> sphere_factors;
};

// Coordinate partials of the metric at a point. dg(i,j,a) = d_a g_ij,
// d2g(i,j,a,b) = d_a d_b g_ij, d3g(i,j,a,b,c) = d_a d_b d_c g_ij.
struct MetricDerivatives {
  int dim = 0;
  Matrix g;
  Rank3 dg;
  Rank4 d2g;
  Rank5 d3g;
};

MetricDerivatives metric_derivatives(const Chart& chart, std::span<const double> x);
Matrix metric_value(const Chart& chart, std::span<const double> x);

// Coordinate partials of a scalar field; entries above `order` are left zero.
struct ScalarDerivatives {
  int dim = 0;
  int order = 0;
  double value = 0.0;
  Vector d1;
  Matrix d2;
  Rank3 d3;
  Rank4 d4;
};

using FieldExpression = std::function<Jet(int chart, std::span<const Jet> coordinates)>;

struct ScalarField {
  std::string name;
  int max_order = kMaxJetOrder;
  FieldExpression expression;
};

ScalarDerivatives evaluate(const ScalarField& field, int chart, std::span<const double> x, int order);

// Round S^n of radius r in hyperspherical angles (theta_1..theta_{n-1}, phi),
// g = r^2 diag(1, sin^2 theta_1, sin^2 theta_1 sin^2 theta_2, ...).
ChartedManifold sphere(int n, double r);
ChartedManifold product(const ChartedManifold& m1, const ChartedManifold& m2);
// e^{2u} g_round with u = epsilon * sum_a c_a x_a / r over ambient coordinates.
ChartedManifold conformal_sphere(int n, double r, double epsilon, std::vector<double> ambient_coefficients);
// Flat torus [0, period)^n with the Euclidean metric.
ChartedManifold flat_torus(int n, double period);

double sphere_volume(int n, double r);
std::vector<SpectrumLevel> sphere_spectrum(int n, double r, int max_degree);
std::vector<SpectrumLevel> minkowski_sum(const std::vector<SpectrumLevel>& a, const std::vector<SpectrumLevel>& b);

// Ambient coordinate x_axis (1-based, 1..dim+1) of a sphere factor.
Jet ambient_coordinate(const SphereFactor& factor, std::span<const Jet> coordinates, int axis);

// amplitude * x_axis / r on a manifold whose coordinates are a single sphere block.
ScalarField height_function(const ChartedManifold& m, int axis, double amplitude);
// Height function of one sphere factor of a product.
ScalarField factor_height_function(const ChartedManifold& m, int factor, int axis, double amplitude);
ScalarField constant_field(double value);
ScalarField field_from_expression(std::string name, FieldExpression expression, int max_order = kMaxJetOrder);

}  // namespace cpev::geometry
