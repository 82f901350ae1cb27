#pragma once

// Independent reference computations for the unit and acceptance suites.
// Nothing here calls into the jet or connection code: derivatives come from
// finite differences of metric values and closed forms come from textbook
// formulas.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <vector>

#include "cpev/geometry/manifold.hpp"
#include "cpev/tensor/sym_tensor.hpp"

namespace cpev::oracle {

inline constexpr double kPi = std::numbers::pi;

// Seeded random variates for property tests.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(gen_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }

  std::vector<double> zero_sum(int n) {
    std::vector<double> a(static_cast<std::size_t>(n));
    double mean = 0.0;
    for (auto& v : a) mean += (v = normal());
    mean /= n;
    for (auto& v : a) v -= mean;
    return a;
  }

  tensor::SymTensor2 symmetric(int n, double lo = -1.0, double hi = 1.0) {
    tensor::SymTensor2 s(n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) s.set(i, j, uniform(lo, hi));
    return s;
  }

  tensor::SymTensor2 traceless(int n, double lo = -1.0, double hi = 1.0) {
    tensor::SymTensor2 s = symmetric(n, lo, hi);
    const double m = s.trace() / n;
    for (int i = 0; i < n; ++i) s.set(i, i, s(i, i) - m);
    return s;
  }

  std::vector<double> vector(int n) {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (auto& x : v) x = normal();
    return v;
  }

 private:
  std::mt19937_64 gen_;
};

// Volume of the round n-sphere of radius r from the Gamma function.
inline double sphere_volume(int n, double r) {
  return 2.0 * std::pow(kPi, 0.5 * (n + 1)) / std::tgamma(0.5 * (n + 1)) * std::pow(r, n);
}

// Christoffel symbols Gamma^k_ij by central differences of metric values.
inline Rank3 fd_christoffel(const geometry::Chart& chart, std::span<const double> x, double h = 1e-5) {
  const int n = static_cast<int>(x.size());
  const Matrix g = metric_value(chart, x);
  Rank3 dg(n);  // (i, j, a) = d_a g_ij
  std::vector<double> xp(x.begin(), x.end()), xm(x.begin(), x.end());
  for (int a = 0; a < n; ++a) {
    xp = {x.begin(), x.end()};
    xm = {x.begin(), x.end()};
    xp[static_cast<std::size_t>(a)] += h;
    xm[static_cast<std::size_t>(a)] -= h;
    const Matrix gp = metric_value(chart, xp), gm = metric_value(chart, xm);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) dg(i, j, a) = (gp(i, j) - gm(i, j)) / (2.0 * h);
  }
  // Inverse of g by Gauss-Jordan.
  Matrix inv = identity_matrix(n), work = g;
  for (int c = 0; c < n; ++c) {
    int p = c;
    for (int r = c + 1; r < n; ++r)
      if (std::abs(work(r, c)) > std::abs(work(p, c))) p = r;
    for (int k = 0; k < n; ++k) {
      std::swap(work(c, k), work(p, k));
      std::swap(inv(c, k), inv(p, k));
    }
    const double d = work(c, c);
    for (int k = 0; k < n; ++k) {
      work(c, k) /= d;
      inv(c, k) /= d;
    }
    for (int r = 0; r < n; ++r) {
      if (r == c) continue;
      const double f = work(r, c);
      for (int k = 0; k < n; ++k) {
        work(r, k) -= f * work(c, k);
        inv(r, k) -= f * inv(c, k);
      }
    }
  }
  Rank3 gamma(n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int l = 0; l < n; ++l) s += inv(k, l) * (dg(l, i, j) + dg(l, j, i) - dg(i, j, l));
        gamma(k, i, j) = 0.5 * s;
      }
  return gamma;
}

// Coordinate Ricci tensor from nested central differences of the metric.
inline Matrix fd_ricci(const geometry::Chart& chart, std::span<const double> x, double h = 1e-4) {
  const int n = static_cast<int>(x.size());
  const Rank3 gamma = fd_christoffel(chart, x);
  Rank4 dgamma(n);  // (k, i, j, a) = d_a Gamma^k_ij
  for (int a = 0; a < n; ++a) {
    std::vector<double> xp(x.begin(), x.end()), xm(x.begin(), x.end());
    xp[static_cast<std::size_t>(a)] += h;
    xm[static_cast<std::size_t>(a)] -= h;
    const Rank3 gp = fd_christoffel(chart, xp), gm = fd_christoffel(chart, xm);
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) dgamma(k, i, j, a) = (gp(k, i, j) - gm(k, i, j)) / (2.0 * h);
  }
  // Ric_ij = d_k G^k_ij - d_j G^k_ik + G^k_kl G^l_ij - G^k_jl G^l_ik
  Matrix ric(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int k = 0; k < n; ++k) {
        s += dgamma(k, i, j, k) - dgamma(k, i, k, j);
        for (int l = 0; l < n; ++l) s += gamma(k, k, l) * gamma(l, i, j) - gamma(k, j, l) * gamma(l, i, k);
      }
      ric(i, j) = s;
    }
  return ric;
}

// Scalar curvature of e^{2u} g_round on S^n(r) with u = eps <c, x>/r:
// R = e^{-2u} (R0 - 2(n-1) Delta0 u - (n-2)(n-1) |grad0 u|^2), where for the
// linear function u on S^n(r), Delta0 u = -n u / r^2 and
// |grad0 u|^2 = (eps^2 |c|^2 - u^2) / r^2.
inline double conformal_sphere_scalar(int n, double r, double eps, std::span<const double> c,
                                      std::span<const double> ambient) {
  double u = 0.0, c2 = 0.0;
  for (std::size_t a = 0; a < c.size(); ++a) {
    u += eps * c[a] * ambient[a] / r;
    c2 += c[a] * c[a];
  }
  const double r0 = n * (n - 1.0) / (r * r);
  const double lap = -n * u / (r * r);
  const double grad2 = (eps * eps * c2 - u * u) / (r * r);
  return std::exp(-2.0 * u) * (r0 - 2.0 * (n - 1) * lap - (n - 2.0) * (n - 1.0) * grad2);
}

// Ambient coordinates of a hyperspherical-angle point on S^n(r).
inline std::vector<double> ambient_point(std::span<const double> angles, double r) {
  const int n = static_cast<int>(angles.size());
  std::vector<double> out(static_cast<std::size_t>(n + 1));
  double running = r;
  for (int k = 0; k < n; ++k) {
    out[static_cast<std::size_t>(k)] = running * std::cos(angles[static_cast<std::size_t>(k)]);
    running *= std::sin(angles[static_cast<std::size_t>(k)]);
  }
  out[static_cast<std::size_t>(n)] = running;
  return out;
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
  double m = 0.0;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

}  // namespace cpev::oracle
