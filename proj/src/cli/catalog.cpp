#include "cpev/cli/catalog.hpp"

#include <cmath>

namespace cpev::cli {

namespace {

ManifoldSpec sphere_spec(int n, double r) {
  ManifoldSpec m;
  m.kind = "sphere";
  m.dim = n;
  m.radius = r;
  return m;
}

ManifoldSpec product_spec(ManifoldSpec a, ManifoldSpec b) {
  ManifoldSpec m;
  m.kind = "product";
  m.dim = a.dim + b.dim;
  m.factors = {std::move(a), std::move(b)};
  return m;
}

PotentialSpec height(int axis, double amplitude, int factor = 0) {
  PotentialSpec p;
  p.kind = "height";
  p.axis = axis;
  p.amplitude = amplitude;
  p.factor = factor;
  return p;
}

CatalogEntry entry(std::string name, std::string summary, ManifoldSpec m, PotentialSpec p) {
  CaseManifest c;
  c.name = name;
  c.manifold = std::move(m);
  c.potential = p;
  return CatalogEntry{std::move(name), std::move(summary), std::move(c)};
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = [] {
    std::vector<CatalogEntry> e;
    e.push_back(entry("sphere2", "round S^2(1), height potential x3 (exact CPE)", sphere_spec(2, 1.0), height(3, 1.0)));
    e.push_back(entry("sphere3", "round S^3(1), height potential x4 (exact CPE)", sphere_spec(3, 1.0), height(4, 1.0)));
    e.push_back(
        entry("sphere3-r2", "round S^3(2), height potential x4/2 (exact CPE)", sphere_spec(3, 2.0), height(4, 1.0)));
    e.push_back(entry("sphere4", "round S^4(1), height potential x5 (exact CPE)", sphere_spec(4, 1.0), height(5, 1.0)));
    e.push_back(entry("product-s2xs2", "S^2(1) x S^2(1), Einstein, height of the first factor (non-solution)",
                      product_spec(sphere_spec(2, 1.0), sphere_spec(2, 1.0)), height(3, 1.0, 0)));
    e.push_back(entry("product-trace-only",
                      "S^2(1) x S^2(1/sqrt 2), R = 6, height of the first factor (trace-only)",
                      product_spec(sphere_spec(2, 1.0), sphere_spec(2, 1.0 / std::sqrt(2.0))), height(3, 1.0, 0)));
    ManifoldSpec conformal;
    conformal.kind = "conformal_sphere";
    conformal.dim = 3;
    conformal.radius = 1.0;
    conformal.epsilon = 0.1;
    conformal.coefficients = {0.3, -0.2, 0.5, 0.4};
    e.push_back(entry("conformal-sphere3", "e^{2u} g on S^3(1), u linear in ambient coordinates (non-constant R)",
                      conformal, height(4, 1.0)));
    return e;
  }();
  return entries;
}

const CatalogEntry* find_catalog_case(const std::string& name) {
  for (const auto& e : catalog())
    if (e.name == name) return &e;
  return nullptr;
}

}  // namespace cpev::cli
