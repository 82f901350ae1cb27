#pragma once

#include <span>
#include <vector>

#include "cpev/tensor/sym_tensor.hpp"

namespace cpev::tensor {

// S - (tr S / n) Id.
SymTensor2 traceless_part(const SymTensor2& s);

inline constexpr int kMaxTracePower = 8;

// tr(S^p) for 1 <= p <= kMaxTracePower.
double trace_power(const SymTensor2& s, int p);

// (n-2)/sqrt(n(n-1)): sharp constant in |sum a_i^3| <= c (sum a_i^2)^{3/2}
// over zero-sum vectors of length n >= 3.
double cube_sum_bound_constant(int n);

// margin = c(n) (sum a^2)^{3/2} - |sum a^3|. equality_case is set when n-1
// of the entries agree to 1e-8 relative. Input must be zero-sum to 1e-9
// relative (InputError otherwise).
Verdict cube_sum_check(std::span<const double> a);

// A zero-sum vector with n-1 equal entries attaining the cube-sum bound,
// normalized to Euclidean length `scale`. sign = -1 gives the configuration
// with negative cube sum, e.g. (-2, 1, 1) for n = 3.
std::vector<double> cube_sum_extremal(int n, int sign, double scale);

// Residuals of the 3x3 traceless trace-power reductions:
//   r4 = tr T^4 - |T|^4 / 2
//   r5 = tr T^5 - (5/6) |T|^2 tr T^3
//   r6 = tr T^6 - |T|^6 / 4 - (tr T^3)^2 / 3
struct TracePowerResiduals {
  double r4 = 0.0;
  double r5 = 0.0;
  double r6 = 0.0;
};
TracePowerResiduals traceless3_trace_identities(const SymTensor2& t);

// margin = (3/2)|T|^2 |v|^2 - 2 <T^2 v, v> for traceless 3x3 T.
Verdict gradient_quadratic_bound(const SymTensor2& t, std::span<const double> v);

// Two readings of the 7/2-versus-6 gradient bound for traceless 3x3 T with
// tr T^3 <= 0:
//   eigenframe: [(a1 - a2)^2 - 3 a1 a2] |v|^2 with a1 <= a2 <= a3 the
//               eigenvalues of T;
//   bilinear:   (7/2)|T|^2 |v|^2 - 6 <T^2 v, v>, which is NOT nonnegative in
//               general (T = diag(-2,1,1), v = e1 gives -3).
struct SignedCubeBound {
  Verdict eigenframe;
  Verdict bilinear;
};
SignedCubeBound signed_cube_gradient_bound(const SymTensor2& t, std::span<const double> v);

// (a1 - a2)^2 - 3 a1 a2 for the two smallest entries of a sorted triple.
double eigenframe_signed_cube_margin(double a1, double a2);

}  // namespace cpev::tensor
