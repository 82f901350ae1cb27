#include "cpev/geometry/jet.hpp"

#include <cmath>
#include <memory>
#include <string>

#include "cpev/errors.hpp"

namespace cpev::geometry {

namespace {

template <typename F>
void enumerate_exponents(int variables, int degree, int var, JetLayout::Exponents& cur, F&& emit) {
  if (var == variables - 1) {
    cur[static_cast<std::size_t>(var)] = static_cast<std::uint8_t>(degree);
    emit(cur);
    return;
  }
  for (int e = degree; e >= 0; --e) {
    cur[static_cast<std::size_t>(var)] = static_cast<std::uint8_t>(e);
    enumerate_exponents(variables, degree - e, var + 1, cur, emit);
  }
}

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace

JetLayout::JetLayout(int variables, int order) : variables_(variables), order_(order) {
  if (variables < 1 || variables > kMaxJetVariables)
    throw InputError("jet variable count must lie in [1, " + std::to_string(kMaxJetVariables) + "]");
  if (order < 0 || order > kMaxJetOrder)
    throw InputError("jet order must lie in [0, " + std::to_string(kMaxJetOrder) + "]");

  for (int degree = 0; degree <= order; ++degree) {
    Exponents cur{};
    enumerate_exponents(variables, degree, 0, cur, [&](const Exponents& e) { monomials_.push_back(e); });
  }

  std::size_t span = 1;
  for (int v = 0; v < variables; ++v) span *= static_cast<std::size_t>(order + 1);
  lookup_.assign(span, -1);
  weights_.resize(monomials_.size());
  for (std::size_t i = 0; i < monomials_.size(); ++i) {
    lookup_[key(monomials_[i])] = static_cast<int>(i);
    double w = 1.0;
    for (int v = 0; v < variables; ++v) w *= factorial(monomials_[i][static_cast<std::size_t>(v)]);
    weights_[i] = w;
  }

  for (int k = 0; k <= kMaxJetOrder; ++k) {
    std::size_t count = 1;
    for (int r = 0; r < k; ++r) count *= static_cast<std::size_t>(variables);
    auto& table = partial_tables_[static_cast<std::size_t>(k)];
    table.assign(count, -1);
    if (k > order) continue;
    std::vector<int> tuple(static_cast<std::size_t>(k));
    for (std::size_t flat = 0; flat < count; ++flat) {
      std::size_t rest = flat;
      for (int r = k - 1; r >= 0; --r) {
        tuple[static_cast<std::size_t>(r)] = static_cast<int>(rest % static_cast<std::size_t>(variables));
        rest /= static_cast<std::size_t>(variables);
      }
      table[flat] = index_of_partial(tuple);
    }
  }

  for (std::size_t a = 0; a < monomials_.size(); ++a) {
    for (std::size_t b = 0; b < monomials_.size(); ++b) {
      Exponents sum{};
      int degree = 0;
      for (int v = 0; v < variables; ++v) {
        const auto s = static_cast<std::uint8_t>(monomials_[a][static_cast<std::size_t>(v)] +
                                                 monomials_[b][static_cast<std::size_t>(v)]);
        sum[static_cast<std::size_t>(v)] = s;
        degree += s;
      }
      if (degree > order) continue;
      products_.push_back(Product{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b),
                                  static_cast<std::uint32_t>(lookup_[key(sum)])});
    }
  }
}

std::size_t JetLayout::key(const Exponents& e) const {
  std::size_t k = 0;
  for (int v = 0; v < variables_; ++v) k = k * static_cast<std::size_t>(order_ + 1) + e[static_cast<std::size_t>(v)];
  return k;
}

int JetLayout::index_of(const Exponents& e) const {
  int degree = 0;
  for (int v = 0; v < variables_; ++v) degree += e[static_cast<std::size_t>(v)];
  if (degree > order_) return -1;
  return lookup_[key(e)];
}

int JetLayout::index_of_partial(std::span<const int> vars) const {
  if (static_cast<int>(vars.size()) > order_) return -1;
  Exponents e{};
  for (int v : vars) {
    if (v < 0 || v >= variables_) throw InputError("jet variable index out of range");
    ++e[static_cast<std::size_t>(v)];
  }
  return index_of(e);
}

const JetLayout& JetLayout::get(int variables, int order) {
  // Built eagerly on first use; immutable afterwards, so concurrent readers are safe.
  static const auto layouts = [] {
    std::vector<std::unique_ptr<JetLayout>> all;
    for (int v = 1; v <= kMaxJetVariables; ++v)
      for (int o = 0; o <= kMaxJetOrder; ++o) all.push_back(std::make_unique<JetLayout>(v, o));
    return all;
  }();
  if (variables < 1 || variables > kMaxJetVariables || order < 0 || order > kMaxJetOrder)
    throw InputError("unsupported jet layout");
  return *layouts[static_cast<std::size_t>((variables - 1) * (kMaxJetOrder + 1) + order)];
}

Jet::Jet(const JetLayout& layout, double value) : layout_(&layout), coeffs_(layout.size(), 0.0) { coeffs_[0] = value; }

Jet Jet::variable(const JetLayout& layout, int index, double value) {
  Jet j(layout, value);
  if (layout.order() >= 1) {
    const int one[] = {index};
    j.coeffs_[static_cast<std::size_t>(layout.index_of_partial(one))] = 1.0;
  }
  return j;
}

double Jet::partial(std::span<const int> vars) const {
  const int idx = layout_->index_of_partial(vars);
  if (idx < 0) return 0.0;
  return coeffs_[static_cast<std::size_t>(idx)] * layout_->factorial_weight(static_cast<std::size_t>(idx));
}

Jet& Jet::operator+=(const Jet& o) {
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

Jet& Jet::operator+=(double c) {
  coeffs_[0] += c;
  return *this;
}

Jet& Jet::operator*=(double c) {
  for (double& v : coeffs_) v *= c;
  return *this;
}

Jet operator*(const Jet& a, const Jet& b) {
  Jet out(*a.layout_, 0.0);
  for (const auto& p : a.layout_->products()) out.coeffs_[p.out] += a.coeffs_[p.lhs] * b.coeffs_[p.rhs];
  return out;
}

Jet& Jet::operator*=(const Jet& o) {
  *this = *this * o;
  return *this;
}

Jet Jet::compose(std::span<const double> derivatives) const {
  const int order = layout_->order();
  if (static_cast<int>(derivatives.size()) < order + 1)
    throw InputError("composition needs derivatives up to the jet order");
  // f(a + h) = sum_k f^(k)(a) h^k / k!, with h nilpotent of degree order+1.
  Jet h = *this;
  h.coeffs_[0] = 0.0;
  Jet out(*layout_, derivatives[0]);
  Jet power(*layout_, 1.0);
  double inv_fact = 1.0;
  for (int k = 1; k <= order; ++k) {
    power = power * h;
    inv_fact /= k;
    const double c = derivatives[static_cast<std::size_t>(k)] * inv_fact;
    for (std::size_t i = 0; i < out.coeffs_.size(); ++i) out.coeffs_[i] += c * power.coeffs_[i];
  }
  return out;
}

Jet sin(const Jet& x) {
  const double s = std::sin(x.value()), c = std::cos(x.value());
  const double d[] = {s, c, -s, -c, s};
  return x.compose(d);
}

Jet cos(const Jet& x) {
  const double s = std::sin(x.value()), c = std::cos(x.value());
  const double d[] = {c, -s, -c, s, c};
  return x.compose(d);
}

Jet exp(const Jet& x) {
  const double e = std::exp(x.value());
  const double d[] = {e, e, e, e, e};
  return x.compose(d);
}

Jet reciprocal(const Jet& x) {
  const double v = x.value();
  if (v == 0.0) throw EvaluationError("reciprocal of a jet with zero value");
  const double r = 1.0 / v;
  // d^k/dv^k v^{-1} = (-1)^k k! v^{-k-1}
  const double d[] = {r, -r * r, 2.0 * r * r * r, -6.0 * r * r * r * r, 24.0 * r * r * r * r * r};
  return x.compose(d);
}

Jet sqrt(const Jet& x) {
  const double v = x.value();
  if (!(v > 0.0)) throw EvaluationError("square root of a non-positive jet value");
  const double s = std::sqrt(v);
  const double d[] = {s, 0.5 / s, -0.25 / (s * v), 0.375 / (s * v * v), -0.9375 / (s * v * v * v)};
  return x.compose(d);
}

}  // namespace cpev::geometry
