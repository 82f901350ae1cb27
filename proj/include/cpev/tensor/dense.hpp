#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace cpev {

using Vector = std::vector<double>;

// Dense cube array of a fixed rank over a runtime dimension. Index order is
// the order of the arguments; the last index varies fastest.
template <std::size_t Rank>
class DenseTensor {
 public:
  DenseTensor() = default;
  explicit DenseTensor(int dim) : dim_(dim), data_(element_count(dim), 0.0) {}

  static std::size_t element_count(int dim) {
    std::size_t count = 1;
    for (std::size_t r = 0; r < Rank; ++r) count *= static_cast<std::size_t>(dim);
    return count;
  }

  int dim() const { return dim_; }
  std::size_t size() const { return data_.size(); }

  template <typename... Index>
  double& operator()(Index... idx) {
    static_assert(sizeof...(Index) == Rank, "index count must equal tensor rank");
    return data_[offset(idx...)];
  }
  template <typename... Index>
  double operator()(Index... idx) const {
    static_assert(sizeof...(Index) == Rank, "index count must equal tensor rank");
    return data_[offset(idx...)];
  }

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  void fill(double value) { std::fill(data_.begin(), data_.end(), value); }

  double max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
  }
  double squared_norm() const {
    double s = 0.0;
    for (double v : data_) s += v * v;
    return s;
  }
  double norm() const { return std::sqrt(squared_norm()); }

  DenseTensor& operator+=(const DenseTensor& o) {
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  DenseTensor& operator-=(const DenseTensor& o) {
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  DenseTensor& operator*=(double s) {
    for (double& v : data_) v *= s;
    return *this;
  }
  friend DenseTensor operator-(DenseTensor a, const DenseTensor& b) { return a -= b; }
  friend DenseTensor operator+(DenseTensor a, const DenseTensor& b) { return a += b; }
  friend DenseTensor operator*(double s, DenseTensor a) { return a *= s; }

 private:
  template <typename... Index>
  std::size_t offset(Index... idx) const {
    std::size_t off = 0;
    ((off = off * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(idx)), ...);
    return off;
  }

  int dim_ = 0;
  std::vector<double> data_;
};

using Matrix = DenseTensor<2>;
using Rank3 = DenseTensor<3>;
using Rank4 = DenseTensor<4>;
using Rank5 = DenseTensor<5>;

inline Matrix identity_matrix(int dim) {
  Matrix m(dim);
  for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

inline Matrix matmul(const Matrix& a, const Matrix& b) {
  const int n = a.dim();
  Matrix c(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

inline Matrix transpose(const Matrix& a) {
  const int n = a.dim();
  Matrix t(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t(i, j) = a(j, i);
  return t;
}

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Determinant by Gaussian elimination with partial pivoting.
inline double determinant(Matrix a) {
  const int n = a.dim();
  double det = 1.0;
  for (int c = 0; c < n; ++c) {
    int pivot = c;
    for (int r = c + 1; r < n; ++r)
      if (std::abs(a(r, c)) > std::abs(a(pivot, c))) pivot = r;
    if (a(pivot, c) == 0.0) return 0.0;
    if (pivot != c) {
      for (int k = 0; k < n; ++k) std::swap(a(c, k), a(pivot, k));
      det = -det;
    }
    det *= a(c, c);
    for (int r = c + 1; r < n; ++r) {
      const double f = a(r, c) / a(c, c);
      if (f == 0.0) continue;
      for (int k = c; k < n; ++k) a(r, k) -= f * a(c, k);
    }
  }
  return det;
}

}  // namespace cpev
