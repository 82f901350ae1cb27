#include "cpev/curvature/divergence.hpp"

namespace cpev::curvature {

FrameScalar frame_scalar(const CovariantJet& f) {
  FrameScalar s;
  s.dim = static_cast<int>(f.d1.size());
  s.value = f.value;
  for (int c = 0; c < s.dim; ++c) s.d[c] = f.d1[static_cast<std::size_t>(c)];
  return s;
}

FrameVector frame_gradient(const CovariantJet& f) {
  FrameVector v;
  v.dim = static_cast<int>(f.d1.size());
  for (int a = 0; a < v.dim; ++a) {
    v.v[a] = f.d1[static_cast<std::size_t>(a)];
    for (int c = 0; c < v.dim; ++c) v.d[a][c] = f.d2(a, c);
  }
  return v;
}

FrameMatrix frame_traceless_ricci(const CurvaturePointData& c) {
  FrameMatrix t;
  t.dim = c.dim;
  for (int a = 0; a < c.dim; ++a)
    for (int b = 0; b < c.dim; ++b) {
      t.t[a][b] = c.traceless(a, b);
      for (int k = 0; k < c.dim; ++k) t.d[a][b][k] = c.nabla_traceless(a, b, k);
    }
  return t;
}

double coordinate_divergence(const Connection& c, const Vector& v, const Matrix& dv) {
  const int n = c.dim;
  double div = 0.0;
  for (int i = 0; i < n; ++i) {
    div += dv(i, i);
    double tr = 0.0;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) tr += c.ginv(a, b) * c.dg(a, b, i);
    div += 0.5 * v[static_cast<std::size_t>(i)] * tr;
  }
  return div;
}

}  // namespace cpev::curvature
