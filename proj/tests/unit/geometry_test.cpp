#include <doctest.h>

#include <cmath>
#include <numeric>

#include "cpev/errors.hpp"
#include "cpev/geometry/jet.hpp"
#include "cpev/geometry/manifold.hpp"
#include "cpev/geometry/quadrature.hpp"
#include "cpev/geometry/sampling.hpp"
#include "cpev/curvature/connection.hpp"
#include "oracles.hpp"

using namespace cpev;
using namespace cpev::geometry;
using oracle::kPi;

TEST_CASE("jets propagate partials of a closed-form expression") {
  const JetLayout& layout = JetLayout::get(2, 4);
  const double x0 = 0.7, y0 = -0.3;
  const Jet x = Jet::variable(layout, 0, x0), y = Jet::variable(layout, 1, y0);
  // f = sin(x) e^{xy}
  const Jet f = sin(x) * exp(x * y);
  const double e = std::exp(x0 * y0), s = std::sin(x0), c = std::cos(x0);
  CHECK(f.value() == doctest::Approx(s * e));
  CHECK(f.partial({0}) == doctest::Approx(c * e + s * y0 * e));
  CHECK(f.partial({1}) == doctest::Approx(s * x0 * e));
  CHECK(f.partial({1, 1}) == doctest::Approx(s * x0 * x0 * e));
  CHECK(f.partial({0, 1}) == doctest::Approx(c * x0 * e + s * e + s * y0 * x0 * e));
  CHECK(f.partial({1, 0}) == doctest::Approx(f.partial({0, 1})));
  CHECK(f.partial({1, 1, 1, 1}) == doctest::Approx(s * std::pow(x0, 4) * e));
}

TEST_CASE("jet reciprocal and sqrt invert multiplication") {
  const JetLayout& layout = JetLayout::get(3, 4);
  const Jet a = Jet::variable(layout, 0, 1.3) * Jet::variable(layout, 1, 0.4) + cos(Jet::variable(layout, 2, 0.2)) + 2.0;
  const Jet one = a * reciprocal(a);
  const Jet sq = sqrt(a);
  const Jet back = sq * sq;
  for (std::size_t i = 0; i < one.coefficients().size(); ++i) {
    CHECK(one.coefficients()[i] == doctest::Approx(i == 0 ? 1.0 : 0.0).epsilon(1e-12).scale(1.0));
    CHECK(back.coefficients()[i] == doctest::Approx(a.coefficients()[i]).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("jet partials match central differences") {
  oracle::Rng rng(21);
  const JetLayout& layout = JetLayout::get(2, 2);
  auto fn = [](const Jet& x, const Jet& y) { return exp(sin(x) * y) * reciprocal(2.0 + cos(x * y)); };
  auto fv = [&](double x, double y) {
    const JetLayout& l0 = JetLayout::get(2, 0);
    return fn(Jet::variable(l0, 0, x), Jet::variable(l0, 1, y)).value();
  };
  for (int trial = 0; trial < 20; ++trial) {
    const double x = rng.uniform(-1, 1), y = rng.uniform(-1, 1), h = 1e-5;
    const Jet j = fn(Jet::variable(layout, 0, x), Jet::variable(layout, 1, y));
    CHECK(j.partial({0}) == doctest::Approx((fv(x + h, y) - fv(x - h, y)) / (2 * h)).epsilon(1e-8));
    CHECK(j.partial({1}) == doctest::Approx((fv(x, y + h) - fv(x, y - h)) / (2 * h)).epsilon(1e-8));
    const double h2 = 1e-4;
    const double fxy = (fv(x + h2, y + h2) - fv(x + h2, y - h2) - fv(x - h2, y + h2) + fv(x - h2, y - h2)) / (4 * h2 * h2);
    CHECK(j.partial({0, 1}) == doctest::Approx(fxy).epsilon(1e-6));
  }
}

TEST_CASE("Gauss-Legendre nodes, weights and polynomial exactness") {
  const auto r2 = gauss_legendre(2);
  CHECK(r2.nodes[0] == doctest::Approx(-1.0 / std::sqrt(3.0)));
  CHECK(r2.weights[1] == doctest::Approx(1.0));
  for (int p : {1, 3, 8, 17, 32, 64}) {
    const auto r = gauss_legendre(p);
    CHECK(std::accumulate(r.weights.begin(), r.weights.end(), 0.0) == doctest::Approx(2.0).epsilon(1e-14));
    for (std::size_t i = 1; i < r.nodes.size(); ++i) CHECK(r.nodes[i] > r.nodes[i - 1]);
    for (int d = 0; d <= 2 * p - 1; d += 1) {
      double s = 0.0;
      for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * std::pow(r.nodes[i], d);
      const double exact = d % 2 ? 0.0 : 2.0 / (d + 1);
      CHECK(std::abs(s - exact) <= 1e-13);
    }
  }
  CHECK_THROWS_AS(gauss_legendre(0), InputError);
}

TEST_CASE("sphere volumes against the Gamma-function formula") {
  CHECK(oracle::sphere_volume(2, 1.0) == doctest::Approx(4.0 * kPi));
  CHECK(oracle::sphere_volume(3, 1.0) == doctest::Approx(2.0 * kPi * kPi));
  CHECK(oracle::sphere_volume(4, 1.0) == doctest::Approx(8.0 / 3.0 * kPi * kPi));
  for (int n = 2; n <= 4; ++n)
    for (double r : {0.5, 1.0, 2.0}) {
      const auto m = sphere(n, r);
      const double v = volume(m, build_rule(m, 24));
      CHECK(std::abs(v / oracle::sphere_volume(n, r) - 1.0) <= 1e-10);
    }
}

TEST_CASE("product and torus volumes") {
  const auto p = product(sphere(2, 1.0), sphere(2, 1.0 / std::sqrt(2.0)));
  CHECK(volume(p, build_rule(p, 16)) == doctest::Approx(4.0 * kPi * 2.0 * kPi).epsilon(1e-10));
  const auto t = flat_torus(3, 2.0);
  CHECK(volume(t, build_rule(t, 4)) == doctest::Approx(8.0).epsilon(1e-13));
}

TEST_CASE("integral of height squared over the unit 3-sphere") {
  const auto m = sphere(3, 1.0);
  const auto h = height_function(m, 2, 1.0);
  const double v = integrate(
      m, [&](int chart, std::span<const double> x) { return std::pow(evaluate(h, chart, x, 0).value, 2); },
      build_rule(m, 32));
  CHECK(std::abs(v / (kPi * kPi / 2.0) - 1.0) <= 1e-10);
}

TEST_CASE("quadrature converges on a non-polynomial integrand") {
  const auto m = sphere(2, 1.0);
  // exp(z) over S^2: 2 pi (e - 1/e)
  const double exact = 2.0 * kPi * (std::exp(1.0) - std::exp(-1.0));
  auto err = [&](int order) {
    const double v = integrate(
        m,
        [&](int, std::span<const double> x) { return std::exp(std::cos(x[0])); }, build_rule(m, order));
    return std::abs(v - exact);
  };
  CHECK(err(8) > err(16));
  CHECK(err(16) <= 1e-10);
  CHECK_THROWS_AS(build_rule(m, kMinQuadratureOrder - 1), InputError);
}

TEST_CASE("sphere spectrum levels and multiplicities") {
  const auto s2 = sphere_spectrum(2, 1.0, 3);
  CHECK(s2[1].eigenvalue == doctest::Approx(2.0));
  CHECK(s2[1].multiplicity == 3);
  CHECK(s2[2].eigenvalue == doctest::Approx(6.0));
  CHECK(s2[2].multiplicity == 5);
  const auto s3 = sphere_spectrum(3, 2.0, 2);
  CHECK(s3[1].eigenvalue == doctest::Approx(0.75));
  CHECK(s3[1].multiplicity == 4);
  CHECK(s3[2].multiplicity == 9);
  const auto sum = minkowski_sum(sphere_spectrum(2, 1.0, 6), sphere_spectrum(2, 1.0 / std::sqrt(2.0), 6));
  // 0, 2, 4, 6 from {0,2,6,...} + {0,4,12,...}; 6 has multiplicity 5 + 3*3.
  REQUIRE(sum.size() > 3);
  CHECK(sum[0].eigenvalue == doctest::Approx(0.0));
  CHECK(sum[1].eigenvalue == doctest::Approx(2.0));
  CHECK(sum[2].eigenvalue == doctest::Approx(4.0));
  CHECK(sum[3].eigenvalue == doctest::Approx(6.0));
  CHECK(sum[3].multiplicity == 5 + 9);
}

TEST_CASE("metric partials match finite-difference Christoffel symbols") {
  const auto cs = conformal_sphere(3, 1.0, 0.1, {0.3, -0.2, 0.5, 0.4});
  const auto pts = interior_samples(cs, 10, 3);
  for (const auto& p : pts) {
    const auto conn = curvature::connection_from(metric_derivatives(cs.charts[0], p.x));
    const Rank3 ref = oracle::fd_christoffel(cs.charts[0], p.x);
    for (std::size_t i = 0; i < ref.size(); ++i)
      CHECK(std::abs(conn.gamma.data()[i] - ref.data()[i]) <= 1e-7 * (1.0 + std::abs(ref.data()[i])));
  }
}

TEST_CASE("round 2-sphere Christoffel symbols in closed form") {
  const auto m = sphere(2, 1.5);
  const double x[] = {0.8, 2.1};
  const auto c = curvature::connection_from(metric_derivatives(m.charts[0], x));
  CHECK(c.gamma(0, 1, 1) == doctest::Approx(-std::sin(0.8) * std::cos(0.8)));
  CHECK(c.gamma(1, 0, 1) == doctest::Approx(std::cos(0.8) / std::sin(0.8)));
  CHECK(c.gamma(0, 0, 0) == doctest::Approx(0.0));
  CHECK(c.sqrt_det == doctest::Approx(1.5 * 1.5 * std::sin(0.8)));
}

TEST_CASE("height function is the ambient coordinate over the radius") {
  const auto m = sphere(3, 2.0);
  const double x[] = {0.4, 1.1, 2.5};
  const auto amb = oracle::ambient_point(x, 2.0);
  for (int axis = 1; axis <= 4; ++axis) {
    const auto h = height_function(m, axis, 3.0);
    CHECK(evaluate(h, 0, x, 0).value == doctest::Approx(3.0 * amb[static_cast<std::size_t>(axis - 1)] / 2.0));
  }
  CHECK_THROWS_AS(height_function(m, 5, 1.0), InputError);
  CHECK_THROWS_AS(height_function(product(sphere(2, 1), sphere(2, 1)), 1, 1.0), InputError);
}

TEST_CASE("interior samples stay inside the margin and are seed-reproducible") {
  const auto m = sphere(3, 1.0);
  const auto a = interior_samples(m, 300, 9);
  const auto b = interior_samples(m, 300, 9);
  const auto c = interior_samples(m, 300, 10);
  REQUIRE(a.size() == 300);
  bool differs = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].x == b[i].x);
    if (a[i].x != c[i].x) differs = true;
    const auto& box = m.charts[0].domain;
    for (int k = 0; k < 3; ++k) {
      const double w = box.upper[k] - box.lower[k];
      CHECK(a[i].x[k] >= box.lower[k] + 0.05 * w - 1e-12);
      CHECK(a[i].x[k] <= box.upper[k] - 0.05 * w + 1e-12);
    }
  }
  CHECK(differs);
  CHECK_THROWS_AS(interior_samples(m, -1, 0), InputError);
}

TEST_CASE("catalog constructors reject bad parameters") {
  CHECK_THROWS_AS(sphere(5, 1.0), InputError);
  CHECK_THROWS_AS(sphere(3, 0.0), InputError);
  CHECK_THROWS_AS(conformal_sphere(3, 1.0, 0.1, {1.0, 2.0}), InputError);
  CHECK_THROWS_AS(product(sphere(4, 1), sphere(3, 1)), InputError);
}
