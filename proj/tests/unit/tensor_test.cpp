#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "cpev/errors.hpp"
#include "cpev/tensor/sym_tensor.hpp"
#include "cpev/tensor/trace_algebra.hpp"
#include "oracles.hpp"

using namespace cpev;
using namespace cpev::tensor;

namespace {

double naive_trace_power(const SymTensor2& s, int p) {
  Matrix m = identity_matrix(s.dim());
  const Matrix a = s.to_matrix();
  for (int k = 0; k < p; ++k) m = matmul(m, a);
  double tr = 0.0;
  for (int i = 0; i < s.dim(); ++i) tr += m(i, i);
  return tr;
}

SymTensor2 diag3(double a, double b, double c) {
  const double d[] = {a, b, c};
  return SymTensor2::diagonal(d);
}

}  // namespace

TEST_CASE("symmetric tensor storage is symmetric and reports norms") {
  SymTensor2 s(3);
  s.set(0, 1, 2.0);
  s.set(2, 2, -3.0);
  CHECK(s(1, 0) == 2.0);
  CHECK(s.trace() == doctest::Approx(-3.0));
  CHECK(s.squared_norm() == doctest::Approx(4.0 + 4.0 + 9.0));
  CHECK(s.max_abs() == 3.0);
  const double v[] = {1.0, 1.0, 1.0};
  CHECK(s.quadratic_form(v) == doctest::Approx(4.0 - 3.0));
}

TEST_CASE("from_matrix rejects asymmetric input") {
  Matrix m(2);
  m(0, 1) = 1.0;
  m(1, 0) = 0.5;
  CHECK_THROWS_AS(SymTensor2::from_matrix(m), InputError);
  CHECK(SymTensor2::symmetrized(m)(0, 1) == doctest::Approx(0.75));
}

TEST_CASE("trace powers match repeated products") {
  oracle::Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = rng.integer(2, 6);
    const SymTensor2 s = rng.symmetric(n);
    for (int p = 1; p <= kMaxTracePower; ++p) {
      const double ref = naive_trace_power(s, p);
      CHECK(std::abs(trace_power(s, p) - ref) <= 1e-13 * (1.0 + std::abs(ref)) * std::pow(n, p));
    }
  }
  CHECK_THROWS_AS(trace_power(SymTensor2(3), 0), InputError);
  CHECK_THROWS_AS(trace_power(SymTensor2(3), kMaxTracePower + 1), InputError);
}

TEST_CASE("trace powers equal eigenvalue power sums") {
  oracle::Rng rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const SymTensor2 s = rng.symmetric(rng.integer(2, 6));
    const auto spec = eigenvalues(s);
    for (int p = 1; p <= 6; ++p) {
      double sum = 0.0;
      for (double a : spec.values) sum += std::pow(a, p);
      CHECK(trace_power(s, p) == doctest::Approx(sum).epsilon(1e-10));
    }
  }
}

TEST_CASE("Jacobi eigen reconstructs, orthonormal, sorted") {
  oracle::Rng rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = rng.integer(1, 6);
    const SymTensor2 s = rng.symmetric(n, -5.0, 5.0);
    const auto e = jacobi_eigen(s.to_matrix());
    CHECK(std::is_sorted(e.values.begin(), e.values.end()));
    Matrix recon(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int a = 0; a < n; ++a) recon(i, j) += e.vectors(i, a) * e.values[a] * e.vectors(j, a);
    CHECK(oracle::max_abs_diff(recon, s.to_matrix()) <= 1e-11);
    const Matrix qtq = matmul(transpose(e.vectors), e.vectors);
    CHECK(oracle::max_abs_diff(qtq, identity_matrix(n)) <= 1e-12);
    for (int a = 0; a < n; ++a) {
      int first = 0;
      while (first < n && std::abs(e.vectors(first, a)) <= 1e-12) ++first;
      if (first < n) CHECK(e.vectors(first, a) > 0.0);
    }
  }
}

TEST_CASE("eigenvalues of a known matrix") {
  Matrix m(2);
  m(0, 0) = 2.0;
  m(0, 1) = m(1, 0) = 1.0;
  m(1, 1) = 2.0;
  const auto e = jacobi_eigen(m);
  CHECK(e.values[0] == doctest::Approx(1.0));
  CHECK(e.values[1] == doctest::Approx(3.0));
  CHECK(e.vectors(0, 1) == doctest::Approx(1.0 / std::sqrt(2.0)));
}

TEST_CASE("traceless part has zero trace and keeps off-diagonals") {
  oracle::Rng rng(14);
  for (int trial = 0; trial < 100; ++trial) {
    const SymTensor2 s = rng.symmetric(rng.integer(2, 6), -3.0, 3.0);
    const SymTensor2 t = traceless_part(s);
    CHECK(std::abs(t.trace()) <= 1e-13);
    if (s.dim() > 1) CHECK(t(0, 1) == s(0, 1));
  }
}

TEST_CASE("cube-sum constant and extremal vectors") {
  CHECK(cube_sum_bound_constant(3) == doctest::Approx(1.0 / std::sqrt(6.0)).epsilon(1e-15));
  CHECK_THROWS_AS(cube_sum_bound_constant(2), DomainError);
  const auto e = cube_sum_extremal(3, -1, std::sqrt(6.0));
  REQUIRE(e.size() == 3);
  std::vector<double> sorted = e;
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted[0] == doctest::Approx(-2.0));
  CHECK(sorted[1] == doctest::Approx(1.0));
  CHECK(sorted[2] == doctest::Approx(1.0));
  for (int n = 3; n <= 8; ++n)
    for (int sign : {-1, 1}) {
      const auto a = cube_sum_extremal(n, sign, 2.5);
      const auto v = cube_sum_check(a);
      CHECK(v.holds);
      CHECK(v.equality_case);
      CHECK(std::abs(v.margin) <= 1e-12 * std::pow(2.5, 3));
    }
  CHECK_THROWS_AS(cube_sum_extremal(3, 0, 1.0), InputError);
}

TEST_CASE("cube-sum bound holds on random zero-sum vectors") {
  oracle::Rng rng(15);
  for (int n = 3; n <= 8; ++n)
    for (int trial = 0; trial < 2000; ++trial) {
      const auto a = rng.zero_sum(n);
      const auto v = cube_sum_check(a);
      CHECK(v.holds);
    }
  const double bad[] = {1.0, 1.0, 1.0};
  CHECK_THROWS_AS(cube_sum_check(bad), InputError);
}

TEST_CASE("3x3 traceless trace identities, worked values") {
  const SymTensor2 t = diag3(-2.0, 1.0, 1.0);
  CHECK(trace_power(t, 3) == doctest::Approx(-6.0));
  CHECK(trace_power(t, 4) == doctest::Approx(18.0));
  CHECK(trace_power(t, 5) == doctest::Approx(-30.0));
  CHECK(trace_power(t, 6) == doctest::Approx(66.0));
  const auto r = traceless3_trace_identities(t);
  CHECK(std::abs(r.r4) <= 1e-12);
  CHECK(std::abs(r.r5) <= 1e-12);
  CHECK(std::abs(r.r6) <= 1e-12);
}

TEST_CASE("3x3 traceless trace identities on random tensors") {
  oracle::Rng rng(16);
  for (int trial = 0; trial < 5000; ++trial) {
    const SymTensor2 t = rng.traceless(3);
    const auto r = traceless3_trace_identities(t);
    CHECK(std::abs(r.r4) <= 1e-10);
    CHECK(std::abs(r.r5) <= 1e-10);
    CHECK(std::abs(r.r6) <= 1e-10);
  }
}

TEST_CASE("gradient quadratic bound: nonnegative, equality on the extremal eigenvector") {
  oracle::Rng rng(17);
  for (int trial = 0; trial < 5000; ++trial) {
    const SymTensor2 t = rng.traceless(3);
    const auto v = rng.vector(3);
    CHECK(gradient_quadratic_bound(t, v).margin >= -1e-9);
  }
  // T = diag(-2,1,1), v = e1: (3/2)*6 - 2*4 = 1.
  const double e1[] = {1.0, 0.0, 0.0};
  CHECK(gradient_quadratic_bound(diag3(-2.0, 1.0, 1.0), e1).margin == doctest::Approx(1.0));
}

TEST_CASE("signed cube bound: eigenframe form holds, bilinear form fails on diag(-2,1,1)") {
  const double e1[] = {1.0, 0.0, 0.0};
  const auto b = signed_cube_gradient_bound(diag3(-2.0, 1.0, 1.0), e1);
  CHECK(b.bilinear.margin == doctest::Approx(-3.0));
  CHECK_FALSE(b.bilinear.holds);
  CHECK(b.eigenframe.holds);
  // (a1 - a2)^2 - 3 a1 a2 with a1 = -2, a2 = 1.
  CHECK(eigenframe_signed_cube_margin(-2.0, 1.0) == doctest::Approx(15.0));

  oracle::Rng rng(18);
  int tested = 0;
  while (tested < 3000) {
    const SymTensor2 t = rng.traceless(3);
    if (trace_power(t, 3) > 0.0) continue;
    ++tested;
    const auto v = rng.vector(3);
    CHECK(signed_cube_gradient_bound(t, v).eigenframe.margin >= -1e-9);
  }
}

TEST_CASE("determinant by elimination") {
  Matrix m(3);
  m(0, 0) = 2.0;
  m(1, 1) = 3.0;
  m(2, 2) = 4.0;
  m(0, 2) = 1.0;
  CHECK(determinant(m) == doctest::Approx(24.0));
  CHECK(determinant(identity_matrix(4)) == 1.0);
}
