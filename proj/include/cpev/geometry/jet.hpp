#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace cpev::geometry {

inline constexpr int kMaxJetVariables = 6;
inline constexpr int kMaxJetOrder = 4;

// Monomial bookkeeping for truncated multivariate Taylor polynomials in a
// fixed number of variables up to a fixed total degree. Layouts are built
// once per (variables, order) pair and never mutated afterwards.
class JetLayout {
 public:
  using Exponents = std::array<std::uint8_t, kMaxJetVariables>;

  JetLayout(int variables, int order);

  int variables() const { return variables_; }
  int order() const { return order_; }
  std::size_t size() const { return monomials_.size(); }

  const Exponents& exponents(std::size_t idx) const { return monomials_[idx]; }
  // Index of the monomial with the given exponents; -1 if its degree exceeds the order.
  int index_of(const Exponents& e) const;
  // Index of the monomial x_{i1} x_{i2} ... for a list of variable indices.
  int index_of_partial(std::span<const int> variables) const;
  // Product of exponent factorials, converting Taylor coefficients to partials.
  double factorial_weight(std::size_t idx) const { return weights_[idx]; }

  // Coefficient index for the partial along the flattened k-tuple of variable
  // indices (row-major, last index fastest); -1 when k exceeds the order.
  int partial_index(int k, std::size_t flat) const { return partial_tables_[static_cast<std::size_t>(k)][flat]; }

  struct Product {
    std::uint32_t lhs, rhs, out;
  };
  const std::vector<Product>& products() const { return products_; }

  static const JetLayout& get(int variables, int order);

 private:
  std::size_t key(const Exponents& e) const;

  int variables_;
  int order_;
  std::vector<Exponents> monomials_;
  std::vector<double> weights_;
  std::vector<int> lookup_;
  std::vector<Product> products_;
  std::array<std::vector<int>, kMaxJetOrder + 1> partial_tables_;
};

// Truncated multivariate Taylor expansion about a point. Arithmetic and the
// elementary functions propagate all partial derivatives up to the layout
// order exactly (up to rounding), which is how closed-form chart expressions
// are differentiated.
class Jet {
 public:
  Jet() = default;
  explicit Jet(const JetLayout& layout, double value = 0.0);

  static Jet variable(const JetLayout& layout, int index, double value);

  const JetLayout& layout() const { return *layout_; }
  double value() const { return coeffs_[0]; }
  // Partial derivative d^k/dx_{i1}...dx_{ik}; zero for k above the order.
  double partial(std::span<const int> variables) const;
  double partial(std::initializer_list<int> variables) const {
    return partial(std::span<const int>(variables.begin(), variables.size()));
  }

  // Same as partial() with the variable tuple given in flattened form.
  double partial_flat(int k, std::size_t flat) const {
    const int idx = layout_->partial_index(k, flat);
    if (idx < 0) return 0.0;
    return coeffs_[static_cast<std::size_t>(idx)] * layout_->factorial_weight(static_cast<std::size_t>(idx));
  }

  std::span<const double> coefficients() const { return coeffs_; }

  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator*=(const Jet& o);
  Jet& operator+=(double c);
  Jet& operator*=(double c);

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator+(Jet a, double c) { return a += c; }
  friend Jet operator+(double c, Jet a) { return a += c; }
  friend Jet operator-(Jet a, double c) { return a += -c; }
  friend Jet operator-(double c, const Jet& a) { return (-1.0 * a) + c; }
  friend Jet operator*(Jet a, double c) { return a *= c; }
  friend Jet operator*(double c, Jet a) { return a *= c; }
  friend Jet operator-(const Jet& a) { return -1.0 * a; }

  // f(jet) for a univariate f given its derivatives f^(k)(value()), k = 0..order.
  Jet compose(std::span<const double> derivatives) const;

 private:
  const JetLayout* layout_ = nullptr;
  std::vector<double> coeffs_;
};

Jet sin(const Jet& x);
Jet cos(const Jet& x);
Jet exp(const Jet& x);
Jet reciprocal(const Jet& x);
Jet sqrt(const Jet& x);

}  // namespace cpev::geometry
