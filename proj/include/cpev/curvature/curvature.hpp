#pragma once

#include <span>

#include "cpev/curvature/connection.hpp"
#include "cpev/geometry/manifold.hpp"

namespace cpev::curvature {

// Sign conventions. R(X,Y) = [nabla_X, nabla_Y] - nabla_[X,Y] and
// R_ijkl = <R(e_i, e_j) e_l, e_k>, so that R_ijij is the sectional curvature
// of span(e_i, e_j) and the unit sphere has R_ijkl = d_ik d_jl - d_il d_jk.
// Ric_jl = sum_i R_ijil. Covariant derivative indices are appended on the
// right: T_ij,k = (nabla_k T)_ij.
//
// Frame quantities are components in the orthonormal frame Connection::frame.
struct CurvaturePointData {
  int dim = 0;
  Connection connection;

  // Chart components.
  Rank4 riemann_coord;      // R_ijkl
  Matrix ricci_coord;       // Ric_ij
  Rank3 d_ricci_coord;      // (i, j, a) = d_a Ric_ij
  Rank3 nabla_ricci_coord;  // (i, j, a) = Ric_ij,a
  Vector d_scalar_coord;    // d_a R

  // Orthonormal-frame components.
  Rank4 riemann;
  Matrix ricci;
  double scalar = 0.0;
  Matrix traceless;  // Ric - (R/n) g
  Rank4 weyl;        // zero for n < 3
  Vector d_scalar;   // e_a(R)
  Rank3 nabla_ricci;
  Rank3 nabla_traceless;
};

enum class CurvatureDetail {
  full,   // everything above
  ricci,  // Ricci-level data only: riemann, riemann_coord and weyl are left empty
};

CurvaturePointData curvature_from(const Connection& connection, CurvatureDetail detail = CurvatureDetail::full);
CurvaturePointData curvature_from(Connection&& connection, CurvatureDetail detail = CurvatureDetail::full);
CurvaturePointData curvature_at(const geometry::ChartedManifold& m, int chart, std::span<const double> x);

// Frame transforms T_ab... = E_ia E_jb ... T_ij... for covariant tensors.
Vector covector_to_frame(const Vector& t, const Matrix& frame);
Matrix to_frame(const Matrix& t, const Matrix& frame);
Rank3 to_frame(const Rank3& t, const Matrix& frame);
Rank4 to_frame(const Rank4& t, const Matrix& frame);

// Non-Weyl part of the curvature written with the full Ricci tensor:
// (Ric_ik d_jl + Ric_jl d_ik - Ric_jk d_il - Ric_il d_jk)/(n-2)
//   - R/((n-1)(n-2)) (d_ik d_jl - d_jk d_il). Zero for n < 3.
Rank4 ricci_block(const Matrix& ric, double scalar, int n);

}  // namespace cpev::curvature
