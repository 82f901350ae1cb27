#include "cpev/cpe/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cpev/cpe/sweep.hpp"
#include "cpev/errors.hpp"
#include "cpev/geometry/quadrature.hpp"
#include "cpev/geometry/sampling.hpp"
#include "cpev/tensor/trace_algebra.hpp"

namespace cpev::cpe {

TriplePoint evaluate_point(const CPETriple& t, int chart, std::span<const double> x, int jet_order,
                           curvature::CurvatureDetail detail) {
  const geometry::Chart& ch = t.manifold->charts.at(static_cast<std::size_t>(chart));
  TriplePoint p;
  p.curvature = curvature::curvature_from(curvature::connection_from(geometry::metric_derivatives(ch, x)), detail);
  const auto s = geometry::evaluate(t.potential, chart, x, jet_order);
  p.jet = jet_order >= 3 ? curvature::covariant_jet_from(p.curvature.connection, s)
                         : curvature::hessian_jet_from(p.curvature.connection, s);
  return p;
}

namespace {

double laplacian(const curvature::CovariantJet& f) {
  double s = 0.0;
  for (int a = 0; a < f.d2.dim(); ++a) s += f.d2(a, a);
  return s;
}

}  // namespace

StaticOperatorValue static_operator(const curvature::CurvaturePointData& c, const curvature::CovariantJet& f) {
  const int n = c.dim;
  const double lap = laplacian(f);
  StaticOperatorValue out{SymTensor2(n), SymTensor2(n)};
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      const double v = (a == b ? -lap : 0.0) + 0.5 * (f.d2(a, b) + f.d2(b, a)) - f.value * c.ricci(a, b);
      out.value.set(a, b, v);
      out.minus_traceless.set(a, b, v - c.traceless(a, b));
    }
  return out;
}

SymTensor2 cpe_residual(const curvature::CurvaturePointData& c, const curvature::CovariantJet& f, double scalar) {
  const int n = c.dim;
  const double k = scalar / (n * (n - 1.0));
  SymTensor2 e(n);
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b)
      e.set(a, b, 0.5 * (f.d2(a, b) + f.d2(b, a)) - (1.0 + f.value) * c.traceless(a, b) + (a == b ? k * f.value : 0.0));
  return e;
}

double trace_residual(const curvature::CovariantJet& f, double scalar, int n) {
  return laplacian(f) + scalar * f.value / (n - 1.0);
}

Rank3 third_derivative_residual(const curvature::CurvaturePointData& c, const curvature::CovariantJet& f,
                                double scalar) {
  if (f.order < 3) throw CapabilityError("third-derivative residual needs f_ijk");
  const int n = c.dim;
  const double k = scalar / (n * (n - 1.0));
  Rank3 r(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l)
        r(i, j, l) = f.d3(i, j, l) - (1.0 + f.value) * c.nabla_traceless(i, j, l) -
                     (c.traceless(i, j) - (i == j ? k : 0.0)) * f.d1[static_cast<std::size_t>(l)];
  return r;
}

StaticOperatorValue static_operator(const CPETriple& t, int chart, std::span<const double> x) {
  const TriplePoint p = evaluate_point(t, chart, x, 2);
  return static_operator(p.curvature, p.jet);
}

SymTensor2 cpe_residual(const CPETriple& t, int chart, std::span<const double> x) {
  const TriplePoint p = evaluate_point(t, chart, x, 2);
  return cpe_residual(p.curvature, p.jet, t.scalar_curvature);
}

double trace_residual(const CPETriple& t, int chart, std::span<const double> x) {
  const TriplePoint p = evaluate_point(t, chart, x, 2);
  return trace_residual(p.jet, t.scalar_curvature, t.manifold->dim);
}

Rank3 cpe_third_derivative_residual(const CPETriple& t, int chart, std::span<const double> x) {
  if (t.exactness != Exactness::exact_cpe)
    throw PreconditionError("third-derivative CPE residual requires an exact CPE triple, got " +
                            to_string(t.exactness));
  const TriplePoint p = evaluate_point(t, chart, x, 3);
  return third_derivative_residual(p.curvature, p.jet, t.scalar_curvature);
}

SpectralCheck besse_spectral_check(const geometry::ChartedManifold& m, double scalar, int n) {
  if (!m.analytic_spectrum || m.analytic_spectrum->empty())
    throw CapabilityError("manifold '" + m.name + "' carries no analytic spectrum");
  if (n < 2) throw DomainError("spectral condition needs n >= 2");
  SpectralCheck out;
  out.target = scalar / (n - 1.0);
  out.gap = std::numeric_limits<double>::infinity();
  for (const auto& level : *m.analytic_spectrum) {
    const double gap = std::abs(level.eigenvalue - out.target);
    if (gap < out.gap) {
      out.gap = gap;
      out.nearest = level.eigenvalue;
      out.multiplicity = level.multiplicity;
    }
  }
  out.in_spectrum = out.gap <= kSpectralTolerance * std::max(1.0, std::abs(out.target));
  return out;
}

namespace {

double weighted_power(double base, int k) {
  double v = 1.0;
  for (int i = 0; i < k; ++i) v *= base;
  return v;
}

}  // namespace

HypothesisMap hypothesis_checks(const CPETriple& t, int quadrature_order, int samples, std::uint64_t seed) {
  if (t.exactness == Exactness::non_solution)
    throw PreconditionError("hypothesis checks need an exact or trace-only triple");
  const geometry::QuadratureRule rule = geometry::build_rule(*t.manifold, quadrature_order);
  const std::vector<double> integrals =
      integrate_quantities(t, rule, kMaxWeightExponent + 1, 0, 2, [](const TriplePoint& p, std::span<double> out, std::span<double>) {
        const int n = p.curvature.dim;
        double q = 0.0;
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b)
            q += p.curvature.traceless(a, b) * p.jet.d1[static_cast<std::size_t>(a)] * p.jet.d1[static_cast<std::size_t>(b)];
        for (int k = 0; k <= kMaxWeightExponent; ++k) out[static_cast<std::size_t>(k)] = weighted_power(1.0 + p.jet.value, 2 * k) * q;
      }).integrals;
  return hypothesis_checks_from(t, integrals, samples, seed);
}

HypothesisMap hypothesis_checks_from(const CPETriple& t, const std::vector<double>& weighted_integrals, int samples,
                                     std::uint64_t seed) {
  if (t.exactness == Exactness::non_solution)
    throw PreconditionError("hypothesis checks need an exact or trace-only triple");
  const int n = t.manifold->dim;
  const double R = t.scalar_curvature;
  HypothesisMap out;

  for (int k = 0; k <= kMaxWeightExponent && k < static_cast<int>(weighted_integrals.size()); ++k) {
    HypothesisEntry e;
    e.quantity = "integral of (1+f)^" + std::to_string(2 * k) + " Rring(grad f, grad f)";
    e.summary.max_pointwise = std::abs(weighted_integrals[static_cast<std::size_t>(k)]);
    e.summary.l2_integral = weighted_integrals[static_cast<std::size_t>(k)];
    e.hypothesis_holds = weighted_integrals[static_cast<std::size_t>(k)] >= -1e-10;
    out["thm13:k=" + std::to_string(k)] = e;
  }

  const auto points = geometry::interior_samples(*t.manifold, samples, seed);
  double sum = 0.0, sum2 = 0.0;
  double min16 = std::numeric_limits<double>::infinity(), max17 = -min16;
  double min18_lower = min16, max18_upper = -min16;
  for (const auto& p : points) {
    const TriplePoint tp = evaluate_point(t, p.chart, p.x, 2);
    const SymTensor2 rr = SymTensor2::symmetrized(tp.curvature.traceless);
    const double n2 = rr.squared_norm();
    const double t3 = tensor::trace_power(rr, 3);
    sum += n2;
    sum2 += n2 * n2;
    min16 = std::min(min16, t3 + R / 12.0 * n2);
    max17 = std::max(max17, n2 - R * R / 24.0);
    min18_lower = std::min(min18_lower, t3 + 5.0 * R / 24.0 * n2);
    max18_upper = std::max(max18_upper, t3);
  }
  const double count = static_cast<double>(points.size());
  const double mean = sum / count;
  const double variance = std::max(0.0, sum2 / count - mean * mean);
  const double tol = 1e-10;

  HypothesisEntry e15;
  e15.quantity = "sample variance of |Rring|^2";
  e15.summary = {variance, mean};
  e15.hypothesis_holds = variance <= 1e-9 * (1.0 + mean * mean);
  out["thm15"] = e15;

  HypothesisEntry e16, e17, e18;
  e16.quantity = "min of tr(Rring^3) + (R/12)|Rring|^2";
  e17.quantity = "max of |Rring|^2 - R^2/24";
  e18.quantity = "min of tr(Rring^3) + (5R/24)|Rring|^2 and max of tr(Rring^3)";
  e16.summary = {min16, 0.0};
  e16.hypothesis_holds = min16 >= -tol;
  e17.summary = {max17, 0.0};
  e17.hypothesis_holds = max17 <= tol;
  e18.summary = {min18_lower, max18_upper};
  e18.hypothesis_holds = min18_lower >= -tol && max18_upper <= tol;
  e16.dimension_applies = e17.dimension_applies = e18.dimension_applies = (n == 3);
  out["thm16"] = e16;
  out["thm17"] = e17;
  out["thm18"] = e18;
  return out;
}

}  // namespace cpev::cpe
