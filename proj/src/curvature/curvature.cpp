#include "cpev/curvature/curvature.hpp"

#include <utility>

namespace cpev::curvature {

namespace {

double kron(int a, int b) { return a == b ? 1.0 : 0.0; }

}  // namespace

Vector covector_to_frame(const Vector& t, const Matrix& e) {
  const int n = e.dim();
  Vector out(static_cast<std::size_t>(n), 0.0);
  for (int a = 0; a < n; ++a)
    for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(a)] += e(i, a) * t[static_cast<std::size_t>(i)];
  return out;
}

Matrix to_frame(const Matrix& t, const Matrix& e) {
  const int n = e.dim();
  Matrix half(n), out(n);
  for (int a = 0; a < n; ++a)
    for (int i = 0; i < n; ++i) {
      const double eia = e(i, a);
      if (eia == 0.0) continue;
      for (int j = 0; j < n; ++j) half(a, j) += eia * t(i, j);
    }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int j = 0; j < n; ++j) out(a, b) += e(j, b) * half(a, j);
  return out;
}

Rank3 to_frame(const Rank3& t, const Matrix& e) {
  const int n = e.dim();
  // Contract one slot at a time; each pass moves the leading index to the back.
  Rank3 cur = t;
  for (int pass = 0; pass < 3; ++pass) {
    Rank3 next(n);
    for (int i = 0; i < n; ++i)
      for (int a = 0; a < n; ++a) {
        const double eia = e(i, a);
        if (eia == 0.0) continue;
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k) next(j, k, a) += eia * cur(i, j, k);
      }
    cur = std::move(next);
  }
  return cur;
}

Rank4 to_frame(const Rank4& t, const Matrix& e) {
  const int n = e.dim();
  Rank4 cur = t;
  for (int pass = 0; pass < 4; ++pass) {
    Rank4 next(n);
    for (int i = 0; i < n; ++i)
      for (int a = 0; a < n; ++a) {
        const double eia = e(i, a);
        if (eia == 0.0) continue;
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l) next(j, k, l, a) += eia * cur(i, j, k, l);
      }
    cur = std::move(next);
  }
  return cur;
}

Rank4 ricci_block(const Matrix& ric, double scalar, int n) {
  Rank4 out(n);
  if (n < 3) return out;
  const double c1 = 1.0 / (n - 2);
  const double c2 = scalar / ((n - 1.0) * (n - 2.0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          out(i, j, k, l) = c1 * (ric(i, k) * kron(j, l) + ric(j, l) * kron(i, k) - ric(j, k) * kron(i, l) -
                                  ric(i, l) * kron(j, k)) -
                            c2 * (kron(i, k) * kron(j, l) - kron(j, k) * kron(i, l));
  return out;
}

CurvaturePointData curvature_from(const Connection& c, CurvatureDetail detail) {
  return curvature_from(Connection(c), detail);
}

CurvaturePointData curvature_from(Connection&& conn, CurvatureDetail detail) {
  CurvaturePointData d;
  d.connection = std::move(conn);
  const Connection& c = d.connection;
  const int n = c.dim;
  d.dim = n;
  const bool full = detail == CurvatureDetail::full;
  const Rank3& G = c.gamma;
  const Rank4& dG = c.dgamma;
  const Rank5& d2G = c.d2gamma;

  // Rm(r, s, m, v) = R^r_{smv} = d_m G^r_vs - d_v G^r_ms + G^r_ml G^l_vs - G^r_vl G^l_ms
  Rank4 mixed(n);
  for (int r = 0; r < n; ++r)
    for (int s = 0; s < n; ++s)
      for (int m = 0; m < n; ++m)
        for (int v = 0; v < n; ++v) {
          if (m == v || (!full && m != r)) continue;
          double val = dG(r, v, s, m) - dG(r, m, s, v);
          for (int l = 0; l < n; ++l) val += G(r, m, l) * G(l, v, s) - G(r, v, l) * G(l, m, s);
          mixed(r, s, m, v) = val;
        }
  if (full) d.riemann_coord = Rank4(n);
  for (int i = 0; i < n && full; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double val = 0.0;
          for (int r = 0; r < n; ++r) val += c.g(k, r) * mixed(r, l, i, j);
          d.riemann_coord(i, j, k, l) = val;
        }

  // Ric_sv = R^r_{srv}; its partials differentiate the same expression.
  d.ricci_coord = Matrix(n);
  d.d_ricci_coord = Rank3(n);
  for (int s = 0; s < n; ++s)
    for (int v = 0; v < n; ++v) {
      double ric = 0.0;
      for (int r = 0; r < n; ++r) ric += mixed(r, s, r, v);
      d.ricci_coord(s, v) = ric;
      for (int a = 0; a < n; ++a) {
        double val = 0.0;
        for (int r = 0; r < n; ++r) {
          val += d2G(r, v, s, a, r) - d2G(r, r, s, a, v);
          for (int l = 0; l < n; ++l) {
            const double lvs = G(l, v, s), lrs = G(l, r, s), rrl = G(r, r, l), rvl = G(r, v, l);
            if (lvs != 0.0) val += dG(r, r, l, a) * lvs;
            if (rrl != 0.0) val += rrl * dG(l, v, s, a);
            if (lrs != 0.0) val -= dG(r, v, l, a) * lrs;
            if (rvl != 0.0) val -= rvl * dG(l, r, s, a);
          }
        }
        d.d_ricci_coord(s, v, a) = val;
      }
    }

  d.nabla_ricci_coord = Rank3(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int a = 0; a < n; ++a) {
        double val = d.d_ricci_coord(i, j, a);
        for (int p = 0; p < n; ++p) val -= G(p, a, i) * d.ricci_coord(p, j) + G(p, a, j) * d.ricci_coord(i, p);
        d.nabla_ricci_coord(i, j, a) = val;
      }
  d.d_scalar_coord.assign(static_cast<std::size_t>(n), 0.0);
  for (int a = 0; a < n; ++a)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) d.d_scalar_coord[static_cast<std::size_t>(a)] += c.ginv(i, j) * d.nabla_ricci_coord(i, j, a);

  const Matrix& e = c.frame;
  if (full) d.riemann = to_frame(d.riemann_coord, e);
  d.ricci = to_frame(d.ricci_coord, e);
  d.scalar = 0.0;
  for (int a = 0; a < n; ++a) d.scalar += d.ricci(a, a);
  d.traceless = d.ricci;
  for (int a = 0; a < n; ++a) d.traceless(a, a) -= d.scalar / n;
  d.d_scalar = covector_to_frame(d.d_scalar_coord, e);
  d.nabla_ricci = to_frame(d.nabla_ricci_coord, e);
  d.nabla_traceless = d.nabla_ricci;
  for (int a = 0; a < n; ++a)
    for (int k = 0; k < n; ++k) d.nabla_traceless(a, a, k) -= d.d_scalar[static_cast<std::size_t>(k)] / n;

  if (full) d.weyl = Rank4(n);
  if (full && n >= 3) {
    // W = Rm - (1/(n-2)) R-ring block - R/(n(n-1)) (d_ik d_jl - d_jk d_il)
    const double c1 = 1.0 / (n - 2);
    const double c2 = d.scalar / (n * (n - 1.0));
    const Matrix& t = d.traceless;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l)
            d.weyl(i, j, k, l) =
                d.riemann(i, j, k, l) -
                c1 * (t(i, k) * kron(j, l) + t(j, l) * kron(i, k) - t(j, k) * kron(i, l) - t(i, l) * kron(j, k)) -
                c2 * (kron(i, k) * kron(j, l) - kron(j, k) * kron(i, l));
  }
  return d;
}

CurvaturePointData curvature_at(const geometry::ChartedManifold& m, int chart, std::span<const double> x) {
  const auto md = geometry::metric_derivatives(m.charts.at(static_cast<std::size_t>(chart)), x);
  return curvature_from(connection_from(md), CurvatureDetail::full);
}

}  // namespace cpev::curvature
