#include <doctest.h>

#include <cmath>
#include <memory>

#include "cpev/cpe/operators.hpp"
#include "cpev/cpe/sweep.hpp"
#include "cpev/cpe/triple.hpp"
#include "cpev/errors.hpp"
#include "cpev/geometry/sampling.hpp"
#include "oracles.hpp"

using namespace cpev;
using namespace cpev::cpe;

namespace {

std::shared_ptr<const geometry::ChartedManifold> shared(geometry::ChartedManifold m) {
  return std::make_shared<const geometry::ChartedManifold>(std::move(m));
}

CPETriple sphere_triple(int n, double r, double amplitude, int axis = 2) {
  auto m = shared(geometry::sphere(n, r));
  return make_triple(m, geometry::height_function(*m, axis, amplitude), 50, 3);
}

CPETriple trace_only_triple() {
  auto m = shared(geometry::product(geometry::sphere(2, 1.0), geometry::sphere(2, 1.0 / std::sqrt(2.0))));
  return make_triple(m, geometry::factor_height_function(*m, 0, 3, 1.0), 50, 3);
}

}  // namespace

TEST_CASE("height functions give exact CPE triples on round spheres") {
  for (int n = 2; n <= 4; ++n)
    for (double r : {1.0, 2.0})
      for (double amp : {0.1, 1.0, 10.0}) {
        const auto t = sphere_triple(n, r, amp);
        CHECK(t.exactness == Exactness::exact_cpe);
        CHECK(t.scalar_curvature == doctest::Approx(n * (n - 1) / (r * r)).epsilon(1e-12));
        CHECK(t.max_cpe_residual <= 1e-9 * (1.0 + amp));
        CHECK(t.max_trace_residual <= 1e-9 * (1.0 + amp));
      }
}

TEST_CASE("the trace-only product separates the trace equation from the full system") {
  const auto t = trace_only_triple();
  CHECK(t.exactness == Exactness::trace_only);
  CHECK(t.scalar_curvature == doctest::Approx(6.0));
  CHECK(t.max_trace_residual <= 1e-9);
  CHECK(t.max_cpe_residual > 1e-2);
  // E = Hess f - (1+f) Rring + (R/12) f g with Hess f = -f g on the first factor
  // and Rring = diag(-1/2, -1/2, 1/2, 1/2): E restricted to the first factor is
  // -f + (1+f)/2 + f/2 = 1/2, and on the second -(1+f)/2 + f/2 = -1/2.
  for (const auto& p : geometry::interior_samples(*t.manifold, 10, 4)) {
    const auto e = cpe_residual(t, p.chart, p.x);
    CHECK(e.norm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(e.trace()) <= 1e-12);
  }
}

TEST_CASE("mismatched sphere potential and conformal metric are non-solutions") {
  auto s3 = shared(geometry::sphere(3, 1.0));
  const auto factor = s3->sphere_factors[0];
  const auto squared = geometry::field_from_expression("x1^2", [factor](int, std::span<const geometry::Jet> x) {
    const auto h = geometry::ambient_coordinate(factor, x, 1);
    return h * h;
  });
  const auto sq = make_triple(s3, squared, 30, 1);
  CHECK(sq.exactness == Exactness::non_solution);
  CHECK(sq.max_trace_residual > 1e-2);
  auto cs = shared(geometry::conformal_sphere(3, 1.0, 0.1, {0.3, -0.2, 0.5, 0.4}));
  const auto t = make_triple(cs, geometry::height_function(*cs, 4, 1.0), 30, 1);
  CHECK(t.exactness == Exactness::non_solution);
  CHECK(t.scalar_spread > 1e-3);
  auto prod = shared(geometry::product(geometry::sphere(2, 1.0), geometry::sphere(2, 1.0)));
  CHECK(make_triple(prod, geometry::factor_height_function(*prod, 0, 3, 1.0), 30, 1).exactness ==
        Exactness::non_solution);
  CHECK_THROWS_AS(make_triple(nullptr, geometry::constant_field(0.0), 10, 1), InputError);
  CHECK_THROWS_AS(make_triple(s3, geometry::constant_field(0.0), 0, 1), InputError);
}

TEST_CASE("static operator and CPE residual agree up to the trace equation") {
  for (const auto& t : {sphere_triple(3, 1.0, 2.0), trace_only_triple()}) {
    const int n = t.manifold->dim;
    for (const auto& p : geometry::interior_samples(*t.manifold, 10, 5)) {
      const auto op = static_operator(t, p.chart, p.x);
      auto e = cpe_residual(t, p.chart, p.x);
      const double tr = trace_residual(t, p.chart, p.x);
      for (int a = 0; a < n; ++a) e.set(a, a, e(a, a) - tr);
      CHECK((op.minus_traceless - e).max_abs() <= 1e-12 * (1.0 + e.norm()));
      const auto ev = cpe_residual(t, p.chart, p.x);
      CHECK(ev.trace() == doctest::Approx(tr).epsilon(1e-12).scale(1.0));
    }
  }
}

TEST_CASE("differentiated CPE on exact data; refused elsewhere") {
  const auto t = sphere_triple(3, 2.0, 1.5);
  for (const auto& p : geometry::interior_samples(*t.manifold, 10, 6))
    CHECK(cpe_third_derivative_residual(t, p.chart, p.x).max_abs() <= 1e-10);
  const auto q = trace_only_triple();
  const auto p = geometry::interior_samples(*q.manifold, 1, 1)[0];
  CHECK_THROWS_AS(cpe_third_derivative_residual(q, p.chart, p.x), PreconditionError);
}

TEST_CASE("Besse spectral condition on the catalog") {
  auto s31 = geometry::sphere(3, 1.0), s32 = geometry::sphere(3, 2.0);
  const auto c1 = besse_spectral_check(s31, 6.0, 3);
  CHECK(c1.in_spectrum);
  CHECK(c1.target == doctest::Approx(3.0));
  CHECK(c1.gap <= 1e-9);
  CHECK(c1.multiplicity == 4);
  const auto c2 = besse_spectral_check(s32, 1.5, 3);
  CHECK(c2.in_spectrum);
  CHECK(c2.target == doctest::Approx(0.75));
  const auto prod = geometry::product(geometry::sphere(2, 1.0), geometry::sphere(2, 1.0 / std::sqrt(2.0)));
  const auto c3 = besse_spectral_check(prod, 6.0, 4);
  CHECK(c3.in_spectrum);
  CHECK(c3.target == doctest::Approx(2.0));
  CHECK_FALSE(besse_spectral_check(s31, 7.0, 3).in_spectrum);
  CHECK_THROWS_AS(besse_spectral_check(geometry::conformal_sphere(3, 1.0, 0.1, {1, 0, 0, 0}), 6.0, 3),
                  CapabilityError);
}

TEST_CASE("hypothesis checks on the sphere and refusal on non-solutions") {
  const auto t = sphere_triple(3, 1.0, 1.0);
  const auto h = hypothesis_checks(t, 16, 50, 2);
  REQUIRE(h.count("thm13:k=0"));
  REQUIRE(h.count("thm18"));
  for (const auto& [key, e] : h) CHECK(e.hypothesis_holds);
  CHECK(std::abs(h.at("thm13:k=0").summary.l2_integral) <= 1e-8);
  auto cs = std::make_shared<const geometry::ChartedManifold>(geometry::conformal_sphere(3, 1.0, 0.1, {0.3, -0.2, 0.5, 0.4}));
  const auto bad = make_triple(cs, geometry::height_function(*cs, 4, 1.0), 30, 1);
  CHECK_THROWS_AS(hypothesis_checks(bad, 8, 10, 1), PreconditionError);
}

TEST_CASE("sweep results are independent of the worker count") {
  const auto t = trace_only_triple();
  const auto rule = geometry::build_rule(*t.manifold, 16);
  auto integrand = [](const TriplePoint& p, std::span<double> sums, std::span<double> maxima) {
    sums[0] = 1.0;
    sums[1] = p.jet.value * p.jet.value;
    maxima[0] = std::abs(p.jet.value);
  };
  const auto one = integrate_quantities(t, rule, 2, 1, 2, integrand, 1);
  const auto three = integrate_quantities(t, rule, 2, 1, 2, integrand, 3);
  CHECK(one.integrals == three.integrals);
  CHECK(one.maxima == three.maxima);
  // Volume 8 pi^2; int x3^2 over S^2(1) times vol S^2(1/sqrt2) = (4 pi / 3)(2 pi).
  CHECK(one.integrals[1] == doctest::Approx(8.0 * oracle::kPi * oracle::kPi / 3.0).epsilon(1e-10));
  CHECK(one.maxima[0] <= 1.0);
}
