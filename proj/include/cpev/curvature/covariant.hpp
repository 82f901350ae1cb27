#pragma once

#include <optional>
#include <span>

#include "cpev/curvature/connection.hpp"
#include "cpev/geometry/manifold.hpp"

namespace cpev::curvature {

// Covariant derivatives of a scalar in orthonormal-frame components:
// d1(i) = f_i, d2(i,j) = f_ij, d3(i,j,k) = f_ijk = (nabla_k nabla^2 f)_ij,
// d4(i,j,k,l) = f_ijkl = (nabla_l nabla^3 f)_ijk when fourth partials exist.
struct CovariantJet {
  int order = 0;
  double value = 0.0;
  Vector d1;
  Matrix d2;
  Rank3 d3;
  std::optional<Rank4> d4;

  // Chart components of the same quantities.
  Vector d1_coord;
  Matrix d2_coord;
  Rank3 d3_coord;
};

// Requires scalar partials of order >= 3 (CapabilityError otherwise); d4 is
// filled when the partials reach order 4.
CovariantJet covariant_jet_from(const Connection& c, const geometry::ScalarDerivatives& s);

// Lower-order variant for integrands that need only f, f_i, f_ij.
CovariantJet hessian_jet_from(const Connection& c, const geometry::ScalarDerivatives& s);

CovariantJet covariant_jet(const geometry::ChartedManifold& m, const geometry::ScalarField& f, int chart,
                           std::span<const double> x);

}  // namespace cpev::curvature
