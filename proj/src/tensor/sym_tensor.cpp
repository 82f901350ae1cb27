#include "cpev/tensor/sym_tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "cpev/errors.hpp"

namespace cpev::tensor {

SymTensor2::SymTensor2(int dim) : dim_(dim), packed_(static_cast<std::size_t>(dim * (dim + 1) / 2), 0.0) {
  if (dim < 1) throw InputError("SymTensor2 dimension must be positive");
}

std::size_t SymTensor2::index(int i, int j) const {
  if (i > j) std::swap(i, j);
  // row-major upper triangle
  return static_cast<std::size_t>(i * dim_ - i * (i - 1) / 2 + (j - i));
}

SymTensor2 SymTensor2::identity(int dim) {
  SymTensor2 s(dim);
  for (int i = 0; i < dim; ++i) s.set(i, i, 1.0);
  return s;
}

SymTensor2 SymTensor2::diagonal(std::span<const double> entries) {
  SymTensor2 s(static_cast<int>(entries.size()));
  for (int i = 0; i < s.dim(); ++i) s.set(i, i, entries[static_cast<std::size_t>(i)]);
  return s;
}

SymTensor2 SymTensor2::from_matrix(const Matrix& m, double tolerance) {
  const int n = m.dim();
  double asym = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) asym = std::max(asym, std::abs(m(i, j) - m(j, i)));
  if (asym > tolerance * (1.0 + m.norm()))
    throw InputError("matrix is not symmetric (max asymmetry " + std::to_string(asym) + ")");
  return symmetrized(m);
}

SymTensor2 SymTensor2::symmetrized(const Matrix& m) {
  const int n = m.dim();
  SymTensor2 s(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) s.set(i, j, 0.5 * (m(i, j) + m(j, i)));
  return s;
}

double SymTensor2::trace() const {
  double t = 0.0;
  for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double SymTensor2::squared_norm() const {
  double s = 0.0;
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) s += (*this)(i, j) * (*this)(i, j);
  return s;
}

double SymTensor2::norm() const { return std::sqrt(squared_norm()); }

double SymTensor2::max_abs() const {
  double m = 0.0;
  for (double v : packed_) m = std::max(m, std::abs(v));
  return m;
}

Matrix SymTensor2::to_matrix() const {
  Matrix m(dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) m(i, j) = (*this)(i, j);
  return m;
}

Vector SymTensor2::apply(std::span<const double> v) const {
  if (static_cast<int>(v.size()) != dim_) throw InputError("vector length does not match tensor dimension");
  Vector out(v.size(), 0.0);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) out[static_cast<std::size_t>(i)] += (*this)(i, j) * v[static_cast<std::size_t>(j)];
  return out;
}

double SymTensor2::quadratic_form(std::span<const double> v) const {
  const Vector sv = apply(v);
  return dot(sv, v);
}

SymTensor2& SymTensor2::operator+=(const SymTensor2& o) {
  if (o.dim_ != dim_) throw InputError("dimension mismatch");
  for (std::size_t i = 0; i < packed_.size(); ++i) packed_[i] += o.packed_[i];
  return *this;
}

SymTensor2& SymTensor2::operator-=(const SymTensor2& o) {
  if (o.dim_ != dim_) throw InputError("dimension mismatch");
  for (std::size_t i = 0; i < packed_.size(); ++i) packed_[i] -= o.packed_[i];
  return *this;
}

SymTensor2& SymTensor2::operator*=(double s) {
  for (double& v : packed_) v *= s;
  return *this;
}

EigenDecomposition jacobi_eigen(const Matrix& symmetric) {
  const int n = symmetric.dim();
  Matrix a = symmetric;
  Matrix q = identity_matrix(n);

  double total = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) total += a(i, j) * a(i, j);

  int sweep = 0;
  for (;; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
    if (off <= 1e-300 || off <= 1e-32 * total) break;
    if (sweep >= kJacobiSweepCap)
      throw ConvergenceError("Jacobi eigensolver did not converge in " + std::to_string(kJacobiSweepCap) +
                             " sweeps (ill-conditioned input)");

    for (int p = 0; p < n; ++p) {
      for (int r = p + 1; r < n; ++r) {
        const double apr = a(p, r);
        if (apr == 0.0) continue;
        const double theta = (a(r, r) - a(p, p)) / (2.0 * apr);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akr = a(k, r);
          a(k, p) = c * akp - s * akr;
          a(k, r) = s * akp + c * akr;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double ark = a(r, k);
          a(p, k) = c * apk - s * ark;
          a(r, k) = s * apk + c * ark;
        }
        for (int k = 0; k < n; ++k) {
          const double qkp = q(k, p);
          const double qkr = q(k, r);
          q(k, p) = c * qkp - s * qkr;
          q(k, r) = s * qkp + c * qkr;
        }
        a(p, r) = 0.0;
        a(r, p) = 0.0;
      }
    }
  }

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return a(x, x) < a(y, y); });

  EigenDecomposition out;
  out.sweeps = sweep;
  out.values.resize(static_cast<std::size_t>(n));
  out.vectors = Matrix(n);
  for (int col = 0; col < n; ++col) {
    const int src = order[static_cast<std::size_t>(col)];
    out.values[static_cast<std::size_t>(col)] = a(src, src);
    double sign = 1.0;
    for (int k = 0; k < n; ++k) {
      if (std::abs(q(k, src)) > 1e-12) {
        sign = q(k, src) > 0.0 ? 1.0 : -1.0;
        break;
      }
    }
    for (int k = 0; k < n; ++k) out.vectors(k, col) = sign * q(k, src);
  }
  return out;
}

Spectrum eigenvalues(const SymTensor2& s) { return Spectrum{jacobi_eigen(s.to_matrix()).values}; }

}  // namespace cpev::tensor
