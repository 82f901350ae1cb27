#pragma once

#include "cpev/curvature/connection.hpp"
#include "cpev/curvature/covariant.hpp"
#include "cpev/curvature/curvature.hpp"
#include "cpev/curvature/frame_dual.hpp"

namespace cpev::curvature {

// Frame-dual views of the basic ingredients.
FrameScalar frame_scalar(const CovariantJet& f);
FrameVector frame_gradient(const CovariantJet& f);  // needs f_ij
FrameMatrix frame_traceless_ricci(const CurvaturePointData& c);

// (1/sqrt g) d_i (sqrt g V^i) = d_i V^i + (1/2) V^i g^{ab} d_i g_ab,
// with V^i chart components and dv(i, k) = d_k V^i.
double coordinate_divergence(const Connection& c, const Vector& v, const Matrix& dv);

}  // namespace cpev::curvature
