#pragma once

#include <span>
#include <vector>

#include "cpev/tensor/dense.hpp"

namespace cpev::tensor {

// Symmetric rank-2 tensor stored as its upper triangle, so symmetry holds
// exactly by construction.
class SymTensor2 {
 public:
  SymTensor2() = default;
  explicit SymTensor2(int dim);

  static SymTensor2 identity(int dim);
  static SymTensor2 diagonal(std::span<const double> entries);
  // Rejects matrices whose asymmetry exceeds `tolerance` times their norm.
  static SymTensor2 from_matrix(const Matrix& m, double tolerance = 1e-12);
  // Averages m and its transpose.
  static SymTensor2 symmetrized(const Matrix& m);

  int dim() const { return dim_; }
  double operator()(int i, int j) const { return packed_[index(i, j)]; }
  void set(int i, int j, double value) { packed_[index(i, j)] = value; }

  double trace() const;
  // Frobenius norm |S| = sqrt(sum_ij S_ij^2).
  double norm() const;
  double squared_norm() const;
  double max_abs() const;

  Matrix to_matrix() const;
  Vector apply(std::span<const double> v) const;
  double quadratic_form(std::span<const double> v) const;

  SymTensor2& operator+=(const SymTensor2& o);
  SymTensor2& operator-=(const SymTensor2& o);
  SymTensor2& operator*=(double s);
  friend SymTensor2 operator+(SymTensor2 a, const SymTensor2& b) { return a += b; }
  friend SymTensor2 operator-(SymTensor2 a, const SymTensor2& b) { return a -= b; }
  friend SymTensor2 operator*(double s, SymTensor2 a) { return a *= s; }

 private:
  std::size_t index(int i, int j) const;

  int dim_ = 0;
  std::vector<double> packed_;
};

// Eigenvalues sorted ascending.
struct Spectrum {
  std::vector<double> values;
};

struct Verdict {
  bool holds = false;
  double margin = 0.0;
  bool equality_case = false;
};

struct EigenDecomposition {
  Vector values;    // ascending
  Matrix vectors;   // column a is the eigenvector for values[a]
  int sweeps = 0;
};

inline constexpr int kJacobiSweepCap = 100;

// Cyclic Jacobi rotations on a symmetric matrix. Eigenvectors are sign-fixed
// so that the first component with magnitude above 1e-12 is positive.
// Throws ConvergenceError if the off-diagonal mass does not vanish within
// kJacobiSweepCap sweeps.
EigenDecomposition jacobi_eigen(const Matrix& symmetric);

Spectrum eigenvalues(const SymTensor2& s);

}  // namespace cpev::tensor
