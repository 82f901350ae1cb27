#include "cpev/curvature/covariant.hpp"

#include <string>

#include "cpev/curvature/curvature.hpp"
#include "cpev/errors.hpp"

namespace cpev::curvature {

namespace {

void fill_low_orders(const Connection& c, const geometry::ScalarDerivatives& s, CovariantJet& j) {
  const int n = c.dim;
  const Rank3& G = c.gamma;
  j.value = s.value;
  j.d1_coord = s.d1;
  j.d2_coord = Matrix(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      double v = s.d2(a, b);
      for (int p = 0; p < n; ++p) v -= G(p, a, b) * s.d1[static_cast<std::size_t>(p)];
      j.d2_coord(a, b) = v;
    }
  j.d1 = covector_to_frame(j.d1_coord, c.frame);
  j.d2 = to_frame(j.d2_coord, c.frame);
}

}  // namespace

CovariantJet hessian_jet_from(const Connection& c, const geometry::ScalarDerivatives& s) {
  if (s.order < 2) throw CapabilityError("Hessian needs second partials");
  CovariantJet j;
  j.order = 2;
  fill_low_orders(c, s, j);
  return j;
}

CovariantJet covariant_jet_from(const Connection& c, const geometry::ScalarDerivatives& s) {
  if (s.order < 3)
    throw CapabilityError("third covariant derivatives need third partials, field provides order " +
                          std::to_string(s.order));
  const int n = c.dim;
  const Rank3& G = c.gamma;
  const Rank4& dG = c.dgamma;
  CovariantJet j;
  j.order = s.order >= 4 ? 4 : 3;
  fill_low_orders(c, s, j);
  const Matrix& H = j.d2_coord;

  // dH(i,j,k) = d_k H_ij = f_,ijk - d_k G^p_ij f_,p - G^p_ij f_,pk
  Rank3 dH(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int k = 0; k < n; ++k) {
        double v = s.d3(a, b, k);
        for (int p = 0; p < n; ++p)
          v -= dG(p, a, b, k) * s.d1[static_cast<std::size_t>(p)] + G(p, a, b) * s.d2(p, k);
        dH(a, b, k) = v;
      }
  j.d3_coord = Rank3(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int k = 0; k < n; ++k) {
        double v = dH(a, b, k);
        for (int p = 0; p < n; ++p) v -= G(p, k, a) * H(p, b) + G(p, k, b) * H(a, p);
        j.d3_coord(a, b, k) = v;
      }
  j.d3 = to_frame(j.d3_coord, c.frame);

  if (j.order < 4) return j;
  const Rank5& d2G = c.d2gamma;
  // ddH(i,j,k,l) = d_l d_k H_ij
  Rank4 ddH(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double v = s.d4(a, b, k, l);
          for (int p = 0; p < n; ++p)
            v -= d2G(p, a, b, k, l) * s.d1[static_cast<std::size_t>(p)] + dG(p, a, b, k) * s.d2(p, l) +
                 dG(p, a, b, l) * s.d2(p, k) + G(p, a, b) * s.d3(p, k, l);
          ddH(a, b, k, l) = v;
        }
  // dT(i,j,k,l) = d_l T_ijk with T = nabla^3 f
  const Rank3& T = j.d3_coord;
  Rank4 T4(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double dT = ddH(a, b, k, l);
          for (int p = 0; p < n; ++p)
            dT -= dG(p, k, a, l) * H(p, b) + G(p, k, a) * dH(p, b, l) + dG(p, k, b, l) * H(a, p) +
                  G(p, k, b) * dH(a, p, l);
          double v = dT;
          for (int p = 0; p < n; ++p) v -= G(p, l, a) * T(p, b, k) + G(p, l, b) * T(a, p, k) + G(p, l, k) * T(a, b, p);
          T4(a, b, k, l) = v;
        }
  j.d4 = to_frame(T4, c.frame);
  return j;
}

CovariantJet covariant_jet(const geometry::ChartedManifold& m, const geometry::ScalarField& f, int chart,
                           std::span<const double> x) {
  if (f.max_order < 3)
    throw CapabilityError("field '" + f.name + "' lacks the third partials needed for covariant derivatives");
  const geometry::Chart& ch = m.charts.at(static_cast<std::size_t>(chart));
  const Connection c = connection_from(geometry::metric_derivatives(ch, x));
  const int order = f.max_order >= 4 ? 4 : 3;
  return covariant_jet_from(c, geometry::evaluate(f, chart, x, order));
}

}  // namespace cpev::curvature
