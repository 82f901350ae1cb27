#include "cpev/tensor/trace_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cpev/errors.hpp"

namespace cpev::tensor {

SymTensor2 traceless_part(const SymTensor2& s) {
  SymTensor2 out = s;
  const double mean = s.trace() / s.dim();
  for (int i = 0; i < s.dim(); ++i) out.set(i, i, s(i, i) - mean);
  return out;
}

double trace_power(const SymTensor2& s, int p) {
  if (p < 1 || p > kMaxTracePower)
    throw InputError("trace power must lie in [1, " + std::to_string(kMaxTracePower) + "], got " +
                     std::to_string(p));
  if (p == 1) return s.trace();
  const Matrix m = s.to_matrix();
  // tr(S^p) = <S^a, S^b> with a + b = p, using only about p/2 products.
  const int half = p / 2;
  Matrix left = m;
  for (int k = 1; k < half; ++k) left = matmul(left, m);
  const Matrix right = (p % 2 == 0) ? left : matmul(left, m);
  double tr = 0.0;
  const int n = s.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) tr += left(i, j) * right(j, i);
  return tr;
}

double cube_sum_bound_constant(int n) {
  if (n < 3) throw DomainError("cube-sum bound requires n >= 3, got " + std::to_string(n));
  return (n - 2) / std::sqrt(static_cast<double>(n) * (n - 1));
}

namespace {

bool n_minus_one_equal(std::vector<double> a, double rel) {
  std::sort(a.begin(), a.end());
  double scale = 0.0;
  for (double v : a) scale = std::max(scale, std::abs(v));
  const double tol = rel * scale;
  const std::size_t n = a.size();
  const bool low_cluster = a[n - 2] - a[0] <= tol;
  const bool high_cluster = a[n - 1] - a[1] <= tol;
  return low_cluster || high_cluster;
}

}  // namespace

Verdict cube_sum_check(std::span<const double> a) {
  const int n = static_cast<int>(a.size());
  const double c = cube_sum_bound_constant(n);
  double sum = 0.0, abs_sum = 0.0, sq = 0.0, cube = 0.0;
  for (double v : a) {
    sum += v;
    abs_sum += std::abs(v);
    sq += v * v;
    cube += v * v * v;
  }
  if (std::abs(sum) > 1e-9 * abs_sum)
    throw InputError("cube-sum check requires a zero-sum vector (sum = " + std::to_string(sum) + ")");
  Verdict v;
  v.margin = c * std::pow(sq, 1.5) - std::abs(cube);
  v.holds = v.margin >= -1e-9 * (1.0 + std::pow(sq, 1.5));
  v.equality_case = n_minus_one_equal(std::vector<double>(a.begin(), a.end()), 1e-8);
  return v;
}

std::vector<double> cube_sum_extremal(int n, int sign, double scale) {
  if (n < 3) throw DomainError("cube-sum extremal requires n >= 3, got " + std::to_string(n));
  if (sign != 1 && sign != -1) throw InputError("sign must be +1 or -1");
  if (!(scale > 0.0)) throw InputError("scale must be positive");
  // (n-1) entries equal to -sign and one entry sign*(n-1); length sqrt(n(n-1)).
  const double unit = scale / std::sqrt(static_cast<double>(n) * (n - 1));
  std::vector<double> a(static_cast<std::size_t>(n), -sign * unit);
  a[0] = sign * (n - 1) * unit;
  return a;
}

TracePowerResiduals traceless3_trace_identities(const SymTensor2& t) {
  if (t.dim() != 3) throw DomainError("trace-power reductions are specific to dimension 3");
  const double norm = t.norm();
  if (std::abs(t.trace()) > 1e-10 * (1.0 + norm)) throw InputError("tensor is not traceless");
  const double n2 = t.squared_norm();
  const double t3 = trace_power(t, 3);
  TracePowerResiduals r;
  r.r4 = trace_power(t, 4) - 0.5 * n2 * n2;
  r.r5 = trace_power(t, 5) - (5.0 / 6.0) * n2 * t3;
  r.r6 = trace_power(t, 6) - 0.25 * n2 * n2 * n2 - t3 * t3 / 3.0;
  return r;
}

namespace {

void require_traceless3(const SymTensor2& t, std::span<const double> v) {
  if (t.dim() != 3) throw DomainError("gradient bounds are specific to dimension 3");
  if (v.size() != 3) throw InputError("vector must have 3 components");
  if (std::abs(t.trace()) > 1e-10 * (1.0 + t.norm())) throw InputError("tensor is not traceless");
}

double squared_image(const SymTensor2& t, std::span<const double> v) {
  const Vector tv = t.apply(v);
  return dot(tv, tv);  // <T^2 v, v> for symmetric T
}

}  // namespace

Verdict gradient_quadratic_bound(const SymTensor2& t, std::span<const double> v) {
  require_traceless3(t, v);
  const double scale = t.squared_norm() * dot(v, v);
  Verdict out;
  out.margin = 1.5 * scale - 2.0 * squared_image(t, v);
  const double tol = 1e-9 * (1.0 + scale);
  out.holds = out.margin >= -tol;
  out.equality_case = std::abs(out.margin) <= tol;
  return out;
}

double eigenframe_signed_cube_margin(double a1, double a2) { return (a1 - a2) * (a1 - a2) - 3.0 * a1 * a2; }

SignedCubeBound signed_cube_gradient_bound(const SymTensor2& t, std::span<const double> v) {
  require_traceless3(t, v);
  const double cube = trace_power(t, 3);
  if (cube > 1e-10 * (1.0 + std::pow(t.norm(), 3)))
    throw PreconditionError("signed gradient bound requires tr(T^3) <= 0, got " + std::to_string(cube));
  const double v2 = dot(v, v);
  const double scale = t.squared_norm() * v2;
  const double tol = 1e-9 * (1.0 + scale);
  const Spectrum spec = eigenvalues(t);

  SignedCubeBound out;
  out.eigenframe.margin = eigenframe_signed_cube_margin(spec.values[0], spec.values[1]) * v2;
  out.eigenframe.holds = out.eigenframe.margin >= -tol;
  out.eigenframe.equality_case = std::abs(out.eigenframe.margin) <= tol;

  out.bilinear.margin = 3.5 * scale - 6.0 * squared_image(t, v);
  out.bilinear.holds = out.bilinear.margin >= -tol;
  out.bilinear.equality_case = std::abs(out.bilinear.margin) <= tol;
  return out;
}

}  // namespace cpev::tensor
