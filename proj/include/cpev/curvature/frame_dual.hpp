#pragma once

#include <algorithm>
#include <array>
#include <cmath>


namespace cpev::curvature {

inline constexpr int kMaxFrameDim = 6;

// Orthonormal-frame tensors carried together with their covariant
// derivative at a point, so that products obey the Leibniz rule and the
// divergence of a composite vector field can be read off directly.
struct FrameScalar {
  int dim = 0;
  double value = 0.0;
  std::array<double, kMaxFrameDim> d{};  // e_c(value)
};

struct FrameVector {
  int dim = 0;
  std::array<double, kMaxFrameDim> v{};
  std::array<std::array<double, kMaxFrameDim>, kMaxFrameDim> d{};  // d[a][c] = (nabla_c V)_a
};

struct FrameMatrix {
  int dim = 0;
  std::array<std::array<double, kMaxFrameDim>, kMaxFrameDim> t{};
  std::array<std::array<std::array<double, kMaxFrameDim>, kMaxFrameDim>, kMaxFrameDim> d{};  // d[a][b][c] = T_ab,c
};

inline FrameScalar constant_scalar(int dim, double value) {
  FrameScalar s;
  s.dim = dim;
  s.value = value;
  return s;
}

inline FrameScalar operator+(FrameScalar a, const FrameScalar& b) {
  a.value += b.value;
  for (int c = 0; c < a.dim; ++c) a.d[c] += b.d[c];
  return a;
}

inline FrameScalar operator*(const FrameScalar& a, const FrameScalar& b) {
  FrameScalar out;
  out.dim = a.dim;
  out.value = a.value * b.value;
  for (int c = 0; c < a.dim; ++c) out.d[c] = a.d[c] * b.value + a.value * b.d[c];
  return out;
}

inline FrameScalar operator*(double s, FrameScalar a) {
  a.value *= s;
  for (int c = 0; c < a.dim; ++c) a.d[c] *= s;
  return a;
}

inline FrameScalar pow(const FrameScalar& a, int k) {
  FrameScalar out = constant_scalar(a.dim, 1.0);
  for (int i = 0; i < k; ++i) out = out * a;
  return out;
}

inline FrameVector operator*(const FrameScalar& s, const FrameVector& v) {
  FrameVector out;
  out.dim = v.dim;
  for (int a = 0; a < v.dim; ++a) {
    out.v[a] = s.value * v.v[a];
    for (int c = 0; c < v.dim; ++c) out.d[a][c] = s.d[c] * v.v[a] + s.value * v.d[a][c];
  }
  return out;
}

inline FrameVector operator-(FrameVector a, const FrameVector& b) {
  for (int i = 0; i < a.dim; ++i) {
    a.v[i] -= b.v[i];
    for (int c = 0; c < a.dim; ++c) a.d[i][c] -= b.d[i][c];
  }
  return a;
}

// (T V)_a = sum_b T_ab V_b
inline FrameVector operator*(const FrameMatrix& t, const FrameVector& v) {
  FrameVector out;
  const int n = v.dim;
  out.dim = n;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      out.v[a] += t.t[a][b] * v.v[b];
      for (int c = 0; c < n; ++c) out.d[a][c] += t.d[a][b][c] * v.v[b] + t.t[a][b] * v.d[b][c];
    }
  return out;
}

// (A B)_ab = sum_m A_am B_mb
inline FrameMatrix operator*(const FrameMatrix& x, const FrameMatrix& y) {
  FrameMatrix out;
  const int n = x.dim;
  out.dim = n;
  for (int a = 0; a < n; ++a)
    for (int m = 0; m < n; ++m)
      for (int b = 0; b < n; ++b) {
        out.t[a][b] += x.t[a][m] * y.t[m][b];
        for (int c = 0; c < n; ++c) out.d[a][b][c] += x.d[a][m][c] * y.t[m][b] + x.t[a][m] * y.d[m][b][c];
      }
  return out;
}

inline FrameMatrix operator*(const FrameScalar& s, const FrameMatrix& x) {
  FrameMatrix out;
  const int n = x.dim;
  out.dim = n;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      out.t[a][b] = s.value * x.t[a][b];
      for (int c = 0; c < n; ++c) out.d[a][b][c] = s.d[c] * x.t[a][b] + s.value * x.d[a][b][c];
    }
  return out;
}

// |V|^2 with its gradient.
inline FrameScalar squared_norm(const FrameVector& v) {
  FrameScalar out;
  out.dim = v.dim;
  for (int a = 0; a < v.dim; ++a) {
    out.value += v.v[a] * v.v[a];
    for (int c = 0; c < v.dim; ++c) out.d[c] += 2.0 * v.v[a] * v.d[a][c];
  }
  return out;
}

inline FrameScalar squared_norm(const FrameMatrix& x) {
  FrameScalar out;
  out.dim = x.dim;
  for (int a = 0; a < x.dim; ++a)
    for (int b = 0; b < x.dim; ++b) {
      out.value += x.t[a][b] * x.t[a][b];
      for (int c = 0; c < x.dim; ++c) out.d[c] += 2.0 * x.t[a][b] * x.d[a][b][c];
    }
  return out;
}

// div V = sum_a (nabla_a V)_a
inline double divergence(const FrameVector& v) {
  double s = 0.0;
  for (int a = 0; a < v.dim; ++a) s += v.d[a][a];
  return s;
}

inline double max_abs_derivative(const FrameVector& v) {
  double m = 0.0;
  for (int a = 0; a < v.dim; ++a)
    for (int c = 0; c < v.dim; ++c) m = std::max(m, std::abs(v.d[a][c]));
  return m;
}

inline double norm(const FrameVector& v) { return std::sqrt(squared_norm(v).value); }

// Gradient norm |nabla V| (Frobenius).
inline double derivative_norm(const FrameVector& v) {
  double s = 0.0;
  for (int a = 0; a < v.dim; ++a)
    for (int c = 0; c < v.dim; ++c) s += v.d[a][c] * v.d[a][c];
  return std::sqrt(s);
}

}  // namespace cpev::curvature
