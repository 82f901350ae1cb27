#pragma once

#include <optional>

#include "cpev/curvature/covariant.hpp"
#include "cpev/curvature/curvature.hpp"

namespace cpev::curvature {

// f_ijk - f_ikj - sum_m f_m R_mijk
Rank3 ricci_identity_residual(const CovariantJet& f, const CurvaturePointData& c);
Rank3 ricci_identity_residual(const geometry::ChartedManifold& m, const geometry::ScalarField& f, int chart,
                              std::span<const double> x);

// f_ijkl - f_ijlk - sum_m (f_mj R_mikl + f_mi R_mjkl); empty without fourth derivatives.
std::optional<Rank4> second_ricci_identity_residual(const CovariantJet& f, const CurvaturePointData& c);

struct BianchiResidual {
  Vector ricci_form;      // sum_j Ric_ij,j - (1/2) R_i
  Vector traceless_form;  // sum_j Rring_ij,j - ((n-2)/(2n)) R_i
};
BianchiResidual contracted_bianchi_residual(const CurvaturePointData& c);

// Riemann minus (W + Ricci block); n >= 3 (DomainError otherwise).
Rank4 weyl_decomposition_residual(const CurvaturePointData& c);
// Riemann minus the Ricci block with W omitted; n = 3 only.
Rank4 three_dim_decomposition_residual(const CurvaturePointData& c);

// Largest violations of the algebraic curvature symmetries and trace conditions.
struct SymmetryResidual {
  double antisymmetry = 0.0;  // R_ijkl + R_jikl, R_ijkl + R_ijlk
  double pair_symmetry = 0.0; // R_ijkl - R_klij
  double first_bianchi = 0.0; // R_ijkl + R_iklj + R_iljk
  double weyl_trace = 0.0;    // all single contractions of W
  double traceless_trace = 0.0;
};
SymmetryResidual symmetry_residuals(const CurvaturePointData& c);

}  // namespace cpev::curvature
