#pragma once

#include "cpev/geometry/manifold.hpp"
#include "cpev/tensor/dense.hpp"

namespace cpev::curvature {

// Levi-Civita connection data in chart coordinates at one point, plus an
// orthonormal frame obtained by diagonalizing g.
//   gamma(k, i, j)          = Gamma^k_ij
//   dgamma(k, i, j, a)      = d_a Gamma^k_ij
//   d2gamma(k, i, j, a, b)  = d_a d_b Gamma^k_ij
//   frame(i, a)             = i-th coordinate component of frame vector e_a
struct Connection {
  int dim = 0;
  Matrix g;
  Matrix ginv;
  double sqrt_det = 0.0;
  double min_metric_eigenvalue = 0.0;
  Rank3 dg;
  Rank3 gamma;
  Rank4 dgamma;
  Rank5 d2gamma;
  Matrix frame;
};

// Throws GeometryError when g is not positive definite.
Connection connection_from(const geometry::MetricDerivatives& md);

}  // namespace cpev::curvature
