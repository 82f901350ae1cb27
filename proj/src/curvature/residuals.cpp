#include "cpev/curvature/residuals.hpp"

#include <algorithm>
#include <cmath>

#include "cpev/errors.hpp"

namespace cpev::curvature {

Rank3 ricci_identity_residual(const CovariantJet& f, const CurvaturePointData& c) {
  const int n = c.dim;
  Rank3 r(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double v = f.d3(i, j, k) - f.d3(i, k, j);
        for (int m = 0; m < n; ++m) v -= f.d1[static_cast<std::size_t>(m)] * c.riemann(m, i, j, k);
        r(i, j, k) = v;
      }
  return r;
}

Rank3 ricci_identity_residual(const geometry::ChartedManifold& m, const geometry::ScalarField& f, int chart,
                              std::span<const double> x) {
  const CurvaturePointData c = curvature_at(m, chart, x);
  const int order = f.max_order >= 4 ? 4 : 3;
  if (f.max_order < 3) throw CapabilityError("field '" + f.name + "' lacks third partials");
  return ricci_identity_residual(covariant_jet_from(c.connection, geometry::evaluate(f, chart, x, order)), c);
}

std::optional<Rank4> second_ricci_identity_residual(const CovariantJet& f, const CurvaturePointData& c) {
  if (!f.d4) return std::nullopt;
  const int n = c.dim;
  const Rank4& T = *f.d4;
  Rank4 r(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double v = T(i, j, k, l) - T(i, j, l, k);
          for (int m = 0; m < n; ++m) v -= f.d2(m, j) * c.riemann(m, i, k, l) + f.d2(m, i) * c.riemann(m, j, k, l);
          r(i, j, k, l) = v;
        }
  return r;
}

BianchiResidual contracted_bianchi_residual(const CurvaturePointData& c) {
  const int n = c.dim;
  BianchiResidual b;
  b.ricci_form.assign(static_cast<std::size_t>(n), 0.0);
  b.traceless_form.assign(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    double div_ric = 0.0, div_tl = 0.0;
    for (int j = 0; j < n; ++j) {
      div_ric += c.nabla_ricci(i, j, j);
      div_tl += c.nabla_traceless(i, j, j);
    }
    const double ri = c.d_scalar[static_cast<std::size_t>(i)];
    b.ricci_form[static_cast<std::size_t>(i)] = div_ric - 0.5 * ri;
    b.traceless_form[static_cast<std::size_t>(i)] = div_tl - (n - 2.0) / (2.0 * n) * ri;
  }
  return b;
}

Rank4 weyl_decomposition_residual(const CurvaturePointData& c) {
  if (c.dim < 3) throw DomainError("Weyl decomposition requires n >= 3");
  Rank4 r = c.riemann;
  r -= c.weyl;
  r -= ricci_block(c.ricci, c.scalar, c.dim);
  return r;
}

Rank4 three_dim_decomposition_residual(const CurvaturePointData& c) {
  if (c.dim != 3) throw DomainError("the Weyl-free curvature formula is specific to n = 3");
  Rank4 r = c.riemann;
  r -= ricci_block(c.ricci, c.scalar, 3);
  return r;
}

SymmetryResidual symmetry_residuals(const CurvaturePointData& c) {
  const int n = c.dim;
  const Rank4& R = c.riemann;
  SymmetryResidual s;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          s.antisymmetry = std::max({s.antisymmetry, std::abs(R(i, j, k, l) + R(j, i, k, l)),
                                     std::abs(R(i, j, k, l) + R(i, j, l, k))});
          s.pair_symmetry = std::max(s.pair_symmetry, std::abs(R(i, j, k, l) - R(k, l, i, j)));
          s.first_bianchi = std::max(s.first_bianchi, std::abs(R(i, j, k, l) + R(i, k, l, j) + R(i, l, j, k)));
        }
  // Contractions of W over each index pair.
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      double t[6] = {0, 0, 0, 0, 0, 0};
      for (int m = 0; m < n; ++m) {
        t[0] += c.weyl(m, m, a, b);
        t[1] += c.weyl(m, a, m, b);
        t[2] += c.weyl(m, a, b, m);
        t[3] += c.weyl(a, m, m, b);
        t[4] += c.weyl(a, m, b, m);
        t[5] += c.weyl(a, b, m, m);
      }
      for (double v : t) s.weyl_trace = std::max(s.weyl_trace, std::abs(v));
    }
  double tr = 0.0;
  for (int a = 0; a < n; ++a) tr += c.traceless(a, a);
  s.traceless_trace = std::abs(tr);
  return s;
}

}  // namespace cpev::curvature
