#include <doctest.h>

#include <cmath>
#include <memory>

#include "cpev/curvature/divergence.hpp"
#include "cpev/errors.hpp"
#include "cpev/geometry/sampling.hpp"
#include "cpev/identities/check.hpp"
#include "oracles.hpp"

using namespace cpev;
using namespace cpev::identities;

namespace {

cpe::CPETriple triple(geometry::ChartedManifold m, int factor, int axis, double amplitude = 1.0) {
  auto sm = std::make_shared<const geometry::ChartedManifold>(std::move(m));
  auto f = geometry::factor_height_function(*sm, factor, axis, amplitude);
  return cpe::make_triple(sm, std::move(f), 50, 1);
}

cpe::CPETriple sphere3() { return triple(geometry::sphere(3, 1.0), 0, 4); }
cpe::CPETriple trace_only() {
  return triple(geometry::product(geometry::sphere(2, 1.0), geometry::sphere(2, 1.0 / std::sqrt(2.0))), 0, 3);
}
cpe::CPETriple bumpy() { return triple(geometry::conformal_sphere(3, 1.0, 0.1, {0.3, -0.2, 0.5, 0.4}), 0, 4); }

FieldBasis synthetic_basis(std::array<double, 3> diag, std::array<double, 3> grad, double f) {
  FieldBasis b;
  b.traceless.dim = b.gradient.dim = b.potential.dim = 3;
  for (int a = 0; a < 3; ++a) {
    b.traceless.t[a][a] = diag[a];
    b.gradient.v[a] = grad[a];
  }
  b.potential.value = f;
  return b;
}

}  // namespace

TEST_CASE("identity ids parse and round-trip") {
  for (const auto& c : all_identity_cases()) CHECK(parse_identity_case(c.id()) == c);
  CHECK(parse_identity_case("prop21:7").k == 7);
  CHECK(all_identity_cases().size() == 12);
  CHECK_THROWS_AS(parse_identity_case("prop21"), InputError);
  CHECK_THROWS_AS(parse_identity_case("prop21:-1"), InputError);
  CHECK_THROWS_AS(parse_identity_case("prop99"), InputError);
  CHECK(parse_identity_case("prop31").applies_to_dim(3));
  CHECK_FALSE(parse_identity_case("prop31").applies_to_dim(4));
  CHECK(parse_identity_case("prop22").applies_to_dim(5));
  CHECK_FALSE(parse_identity_case("prop22").applies_to_dim(2));
}

TEST_CASE("fields vanish on the round sphere") {
  const auto t = sphere3();
  for (const auto& sp : geometry::interior_samples(*t.manifold, 10, 2)) {
    const auto p = cpe::evaluate_point(t, sp.chart, sp.x, 2);
    for (int k = 0; k <= 4; ++k) CHECK(curvature::norm(field_Zk(p, k)) <= 1e-12);
    CHECK(curvature::norm(field_fZ(p)) <= 1e-12);
    for (auto w : {CubicField::X, CubicField::Y, CubicField::Z}) CHECK(curvature::norm(fields_XYZ(p, w)) <= 1e-12);
  }
}

TEST_CASE("Z field on the trace-only product in closed form") {
  const auto t = trace_only();
  for (const auto& sp : geometry::interior_samples(*t.manifold, 10, 3)) {
    const auto p = cpe::evaluate_point(t, sp.chart, sp.x, 2);
    // grad f lies in the first factor where Rring = -1/2; |grad h|^2 = 1 - h^2 on S^2(1).
    const double h = p.jet.value;
    const auto z = field_Zk(p, 0);
    CHECK(curvature::squared_norm(z).value == doctest::Approx(0.25 * (1.0 - h * h)).epsilon(1e-12));
    const auto fz = field_fZ(p);
    CHECK(curvature::squared_norm(fz).value == doctest::Approx(0.25 * h * h * (1.0 - h * h)).epsilon(1e-12).scale(1.0));
    CHECK_THROWS_AS(fields_XYZ(p, CubicField::X), DomainError);
  }
}

TEST_CASE("Z_k homogeneity under scaling of the potential") {
  const double c = 2.5;
  const auto t1 = triple(geometry::product(geometry::sphere(2, 1.0), geometry::sphere(2, 1.0 / std::sqrt(2.0))), 0, 3);
  const auto tc = triple(geometry::product(geometry::sphere(2, 1.0), geometry::sphere(2, 1.0 / std::sqrt(2.0))), 0, 3, c);
  for (const auto& sp : geometry::interior_samples(*t1.manifold, 5, 4)) {
    const auto p1 = cpe::evaluate_point(t1, sp.chart, sp.x, 2);
    const auto pc = cpe::evaluate_point(tc, sp.chart, sp.x, 2);
    const double f = p1.jet.value;
    const auto z1 = field_Zk(p1, 0), zc = field_Zk(pc, 2);
    for (int a = 0; a < 4; ++a)
      CHECK(zc.v[a] == doctest::Approx(c * std::pow(1.0 + c * f, 2) * z1.v[a]).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("X, Y, Z contractions on a diagonal tensor; multilinear in grad f") {
  const auto b = synthetic_basis({-2.0, 1.0, 1.0}, {1.0, 0.0, 0.0}, 0.0);
  const auto x = identity_field(parse_identity_case("id314"), b);
  CHECK(x.v[0] == doctest::Approx(-8.0));
  CHECK(x.v[1] == 0.0);
  CHECK(identity_field(parse_identity_case("id315"), b).v[0] == doctest::Approx(16.0));
  CHECK(identity_field(parse_identity_case("id316"), b).v[0] == doctest::Approx(-32.0));
  const auto b2 = synthetic_basis({-2.0, 1.0, 1.0}, {2.0, 0.0, 0.0}, 0.0);
  for (const char* id : {"id314", "id315", "id316"}) {
    const auto c = parse_identity_case(id);
    CHECK(identity_field(c, b2).v[0] == doctest::Approx(2.0 * identity_field(c, b).v[0]));
  }
}

TEST_CASE("divergence of a product field follows the Leibniz rule") {
  const auto t = bumpy();
  for (const auto& sp : geometry::interior_samples(*t.manifold, 10, 5)) {
    const auto p = cpe::evaluate_point(t, sp.chart, sp.x, 2);
    const auto b = field_basis(p);
    const auto v = b.potential * b.gradient;
    double expected = b.potential.value * curvature::divergence(b.gradient);
    for (int a = 0; a < 3; ++a) expected += b.potential.d[a] * b.gradient.v[a];
    CHECK(curvature::divergence(v) == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("sphere CPE: every identity passes with vanishing terms") {
  const auto t = sphere3();
  const auto rule = geometry::build_rule(*t.manifold, 16);
  const auto batch = check_identities(all_identity_cases(), t, rule);
  REQUIRE(batch.reports.size() == 12);
  for (const auto& r : batch.reports) {
    CAPTURE(r.identity.id());
    CHECK(r.verdict == CheckVerdict::pass);
    for (const auto& [name, v] : r.terms) CHECK(std::abs(v) <= 1e-10);
    CHECK(r.divergence.within_tolerance);
  }
  CHECK(batch.volume == doctest::Approx(2.0 * oracle::kPi * oracle::kPi).epsilon(1e-10));
}

TEST_CASE("trace-only product: prop21:0 is not applicable, divergence theorem holds") {
  const auto t = trace_only();
  const auto r = check_identity(parse_identity_case("prop21:0"), t, geometry::build_rule(*t.manifold, 16));
  CHECK(r.verdict == CheckVerdict::not_applicable);
  CHECK(std::abs(r.total) > 1.0);
  CHECK(std::abs(r.divergence.integral) <= 1e-7);
  CHECK(r.cpe_residual_l2 > 1.0);
  CHECK(r.diagnostics.find("trace_only") != std::string::npos);
  CHECK_THROWS_AS(check_identity(parse_identity_case("prop31"), t, geometry::build_rule(*t.manifold, 8)), DomainError);
}

TEST_CASE("prop23 equals prop21(1) minus prop22 on every kind of triple") {
  for (const auto& t : {sphere3(), trace_only(), bumpy()}) {
    const auto batch = check_identities({parse_identity_case("prop21:1"), parse_identity_case("prop22"),
                                         parse_identity_case("prop23")},
                                        t, geometry::build_rule(*t.manifold, 12));
    const double lhs = batch.reports[2].total;
    const double rhs = batch.reports[0].total - batch.reports[1].total;
    CHECK(std::abs(lhs - rhs) <= 1e-10 * (1.0 + std::abs(lhs)));
  }
}

TEST_CASE("divergence theorem for gradient fields") {
  const auto t = sphere3();
  const auto d = divergence_theorem_check(
      t, [](const cpe::TriplePoint& p) { return curvature::frame_gradient(p.jet); }, geometry::build_rule(*t.manifold, 24));
  CHECK(std::abs(d.integral) <= 1e-8);
  CHECK(d.within_tolerance);
}

TEST_CASE("divergence theorem on a non-symmetric metric, with convergence") {
  const auto t = bumpy();
  const auto studies = divergence_convergence(t, catalog_fields(3), {8, 16, 32});
  REQUIRE(studies.size() == catalog_fields(3).size());
  for (const auto& s : studies) {
    CAPTURE(s.field);
    CHECK(s.final_within_tolerance);
    CHECK(s.monotone);
  }
}

TEST_CASE("a wrong covariant derivative fails the check") {
  const auto t = sphere3();
  // Adding the identity to nabla V gives div V = Delta f + n, whose integral is n vol.
  const auto d = divergence_theorem_check(
      t,
      [](const cpe::TriplePoint& p) {
        auto v = curvature::frame_gradient(p.jet);
        for (int a = 0; a < v.dim; ++a) v.d[a][a] += 1.0;
        return v;
      },
      geometry::build_rule(*t.manifold, 12));
  CHECK_FALSE(d.within_tolerance);
  CHECK(d.integral == doctest::Approx(3.0 * 2.0 * oracle::kPi * oracle::kPi).epsilon(1e-8));
}

TEST_CASE("theorem audits on the sphere pass and reconstruct the odd-exponent combination") {
  const auto t = sphere3();
  const auto pipe = theorem_pipeline(t, geometry::build_rule(*t.manifold, 16));
  REQUIRE(pipe.audits.size() == 9);
  for (const auto& a : pipe.audits) {
    CAPTURE(a.theorem);
    CHECK(a.verdict == CheckVerdict::pass);
    CHECK(a.max_traceless <= 1e-9);
  }
  for (int k = 0; k <= 4; ++k) {
    const IdentityCase c{IdentityKind::prop21, 2 * k + 1};
    for (const auto& r : pipe.identities.reports)
      if (r.identity == c)
        CHECK(std::abs(r.terms[0].second - (2 * k + 1) * pipe.identities.weighted_integrals[k]) <= 1e-10);
  }
}

TEST_CASE("theorem audits on trace-only data are diagnostic only") {
  const auto t = trace_only();
  const auto pipe = theorem_pipeline(t, geometry::build_rule(*t.manifold, 8));
  for (const auto& a : pipe.audits) {
    CAPTURE(a.theorem);
    CHECK(a.verdict == CheckVerdict::not_applicable);
    CHECK_FALSE(a.diagnostics.empty());
  }
  for (int k = 0; k <= 4; ++k) {
    const IdentityCase c{IdentityKind::prop21, 2 * k + 1};
    for (const auto& r : pipe.identities.reports)
      if (r.identity == c) {
        const double w = pipe.identities.weighted_integrals[k];
        CHECK(std::abs(r.terms[0].second - (2 * k + 1) * w) <= 1e-10 * (1.0 + std::abs(w)));
      }
  }
}
