#include "cpev/curvature/connection.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "cpev/errors.hpp"
#include "cpev/tensor/sym_tensor.hpp"

namespace cpev::curvature {

Connection connection_from(const geometry::MetricDerivatives& md) {
  const int n = md.dim;
  Connection c;
  c.dim = n;
  c.g = md.g;
  c.dg = md.dg;

  const tensor::EigenDecomposition eig = tensor::jacobi_eigen(md.g);
  if (!(eig.values[0] > 0.0) || !std::isfinite(eig.values[0]))
    throw GeometryError("metric is not positive definite (smallest eigenvalue " + std::to_string(eig.values[0]) + ")");
  c.min_metric_eigenvalue = eig.values[0];
  c.frame = Matrix(n);
  c.ginv = Matrix(n);
  double det = 1.0;
  for (int a = 0; a < n; ++a) {
    const double lam = eig.values[static_cast<std::size_t>(a)];
    det *= lam;
    const double s = 1.0 / std::sqrt(lam);
    for (int i = 0; i < n; ++i) c.frame(i, a) = eig.vectors(i, a) * s;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double v = 0.0;
      for (int a = 0; a < n; ++a) v += c.frame(i, a) * c.frame(j, a);
      c.ginv(i, j) = v;
    }
  c.sqrt_det = std::sqrt(det);

  // Lowered symbols: low(l,i,j) = Gamma_{l,ij}; partials are formed on the fly.
  Rank3 low(n);
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) low(l, i, j) = 0.5 * (md.dg(j, l, i) + md.dg(i, l, j) - md.dg(i, j, l));

  auto raise3 = [&](const Rank3& t) {
    Rank3 out(n);
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l) {
        const double gi = c.ginv(k, l);
        if (gi == 0.0) continue;
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) out(k, i, j) += gi * t(l, i, j);
      }
    return out;
  };
  c.gamma = raise3(low);

  // couple[k] lists the p with g_kp, d g_kp or d^2 g_kp not identically zero here.
  std::vector<std::vector<int>> couple(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k)
    for (int p = 0; p < n; ++p) {
      bool nz = md.g(k, p) != 0.0;
      for (int a = 0; a < n && !nz; ++a) {
        nz = md.dg(k, p, a) != 0.0;
        for (int b = 0; b < n && !nz; ++b) nz = md.d2g(k, p, a, b) != 0.0;
      }
      if (nz) couple[static_cast<std::size_t>(k)].push_back(p);
    }

  // d_a Gamma^l_ij = g^{lk} (d_a Gamma_{k,ij} - d_a g_kp Gamma^p_ij)
  Rank4 tmp(n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int a = 0; a < n; ++a) {
          double v = 0.5 * (md.d2g(j, k, i, a) + md.d2g(i, k, j, a) - md.d2g(i, j, k, a));
          for (int p : couple[static_cast<std::size_t>(k)]) v -= md.dg(k, p, a) * c.gamma(p, i, j);
          tmp(k, i, j, a) = v;
        }
  c.dgamma = Rank4(n);
  for (int l = 0; l < n; ++l)
    for (int k = 0; k < n; ++k) {
      const double gi = c.ginv(l, k);
      if (gi == 0.0) continue;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int a = 0; a < n; ++a) c.dgamma(l, i, j, a) += gi * tmp(k, i, j, a);
    }

  // d_b d_a Gamma^l_ij = g^{lk} (d_ab Gamma_{k,ij} - d_ab g_kp Gamma^p_ij
  //                              - d_a g_kp d_b Gamma^p_ij - d_b g_kp d_a Gamma^p_ij)
  Rank5 tmp2(n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j)
        for (int a = 0; a < n; ++a)
          for (int b = a; b < n; ++b) {
            double v = 0.5 * (md.d3g(j, k, i, a, b) + md.d3g(i, k, j, a, b) - md.d3g(i, j, k, a, b));
            for (int p : couple[static_cast<std::size_t>(k)])
              v -= md.d2g(k, p, a, b) * c.gamma(p, i, j) + md.dg(k, p, a) * c.dgamma(p, i, j, b) +
                   md.dg(k, p, b) * c.dgamma(p, i, j, a);
            tmp2(k, i, j, a, b) = v;
            tmp2(k, j, i, a, b) = v;
            tmp2(k, i, j, b, a) = v;
            tmp2(k, j, i, b, a) = v;
          }
  c.d2gamma = Rank5(n);
  for (int l = 0; l < n; ++l)
    for (int k = 0; k < n; ++k) {
      const double gi = c.ginv(l, k);
      if (gi == 0.0) continue;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) c.d2gamma(l, i, j, a, b) += gi * tmp2(k, i, j, a, b);
    }
  return c;
}

}  // namespace cpev::curvature
