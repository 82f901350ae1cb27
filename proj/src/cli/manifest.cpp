#include "cpev/cli/manifest.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace cpev::cli {

namespace {

// Line and column of a byte offset into `text` (both 1-based).
std::string position(const std::string& text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

class Reader {
 public:
  explicit Reader(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(const std::string& path, const std::string& what) const {
    throw ManifestError(source_, path, what);
  }

  const Json& object(const Json& j, const std::string& path) const {
    if (!j.is_object()) fail(path, "expected an object");
    return j;
  }

  void only_keys(const Json& j, const std::string& path, std::initializer_list<const char*> keys) const {
    for (const auto& [k, v] : j.items()) {
      bool known = false;
      for (const char* key : keys) known = known || k == key;
      if (!known) fail(join(path, k), "unknown field");
    }
  }

  static std::string join(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
  }

  const Json* find(const Json& j, const char* key) const {
    const auto it = j.find(key);
    return it == j.end() ? nullptr : &*it;
  }

  const Json& require(const Json& j, const std::string& path, const char* key) const {
    const Json* v = find(j, key);
    if (!v) fail(join(path, key), "missing required field");
    return *v;
  }

  std::string string(const Json& v, const std::string& path) const {
    if (!v.is_string()) fail(path, "expected a string");
    return v.get<std::string>();
  }

  double number(const Json& v, const std::string& path) const {
    if (!v.is_number()) fail(path, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) fail(path, "expected a finite number");
    return d;
  }

  long long integer(const Json& v, const std::string& path) const {
    if (!v.is_number_integer()) fail(path, "expected an integer");
    return v.get<long long>();
  }

  std::uint64_t unsigned_integer(const Json& v, const std::string& path) const {
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer() && v.get<long long>() >= 0) return static_cast<std::uint64_t>(v.get<long long>());
    fail(path, "expected a nonnegative integer");
  }

  ManifoldSpec manifold(const Json& j, const std::string& path) const {
    object(j, path);
    only_keys(j, path, {"kind", "dim", "radius", "factors", "epsilon", "coefficients"});
    ManifoldSpec m;
    m.kind = string(require(j, path, "kind"), join(path, "kind"));
    if (m.kind == "sphere" || m.kind == "conformal_sphere") {
      m.dim = static_cast<int>(integer(require(j, path, "dim"), join(path, "dim")));
      if (m.dim < 2 || m.dim > 4) fail(join(path, "dim"), "sphere dimension must lie in 2..4");
      if (const Json* r = find(j, "radius")) {
        m.radius = number(*r, join(path, "radius"));
        if (!(m.radius > 0.0)) fail(join(path, "radius"), "radius must be positive");
      }
      if (find(j, "factors")) fail(join(path, "factors"), "only products have factors");
      if (m.kind == "conformal_sphere") {
        m.epsilon = number(require(j, path, "epsilon"), join(path, "epsilon"));
        const Json& c = require(j, path, "coefficients");
        const std::string cpath = join(path, "coefficients");
        if (!c.is_array() || c.size() != static_cast<std::size_t>(m.dim + 1))
          fail(cpath, "expected an array of " + std::to_string(m.dim + 1) + " numbers");
        for (std::size_t i = 0; i < c.size(); ++i)
          m.coefficients.push_back(number(c[i], cpath + "[" + std::to_string(i) + "]"));
      } else if (find(j, "epsilon") || find(j, "coefficients")) {
        fail(path, "epsilon and coefficients belong to conformal_sphere");
      }
    } else if (m.kind == "product") {
      const Json& f = require(j, path, "factors");
      const std::string fpath = join(path, "factors");
      if (!f.is_array() || f.size() != 2) fail(fpath, "expected an array of two manifolds");
      for (std::size_t i = 0; i < 2; ++i) {
        m.factors.push_back(manifold(f[i], fpath + "[" + std::to_string(i) + "]"));
        m.dim += m.factors.back().dim;
      }
      if (m.dim > geometry::kMaxJetVariables)
        fail(fpath, "product dimension exceeds " + std::to_string(geometry::kMaxJetVariables));
      if (const Json* d = find(j, "dim")) {
        if (integer(*d, join(path, "dim")) != m.dim)
          fail(join(path, "dim"), "does not match the sum of the factor dimensions (" + std::to_string(m.dim) + ")");
      }
      if (find(j, "radius")) fail(join(path, "radius"), "products take their radii from the factors");
    } else {
      fail(join(path, "kind"), "expected \"sphere\", \"product\" or \"conformal_sphere\", got \"" + m.kind + "\"");
    }
    return m;
  }

  PotentialSpec potential(const Json& j, const std::string& path, const ManifoldSpec& m) const {
    object(j, path);
    only_keys(j, path, {"kind", "axis", "amplitude", "factor"});
    PotentialSpec p;
    p.kind = string(require(j, path, "kind"), join(path, "kind"));
    if (p.kind == "zero") {
      for (const char* key : {"axis", "amplitude", "factor"})
        if (find(j, key)) fail(join(path, key), "a zero potential takes no parameters");
      p.axis = 0;
      p.amplitude = 0.0;
      return p;
    }
    if (p.kind != "height") fail(join(path, "kind"), "expected \"height\" or \"zero\", got \"" + p.kind + "\"");
    const ManifoldSpec* block = &m;
    if (const Json* f = find(j, "factor")) {
      if (m.kind != "product") fail(join(path, "factor"), "only product manifolds have factors");
      p.factor = static_cast<int>(integer(*f, join(path, "factor")));
      if (p.factor < 0 || p.factor > 1) fail(join(path, "factor"), "factor index must be 0 or 1");
    }
    if (m.kind == "product") {
      block = &m.factors[static_cast<std::size_t>(p.factor)];
      if (block->kind == "product") fail(join(path, "factor"), "height functions need a sphere factor");
    }
    p.axis = static_cast<int>(integer(require(j, path, "axis"), join(path, "axis")));
    if (p.axis < 1 || p.axis > block->dim + 1)
      fail(join(path, "axis"), "axis must lie in 1.." + std::to_string(block->dim + 1));
    if (const Json* a = find(j, "amplitude")) p.amplitude = number(*a, join(path, "amplitude"));
    return p;
  }

  CaseManifest manifest(const Json& j) const {
    only_keys(j, "", {"name", "manifold", "potential", "quadrature_order", "samples", "seed"});
    CaseManifest c;
    if (const Json* n = find(j, "name")) c.name = string(*n, "name");
    c.manifold = manifold(require(j, "", "manifold"), "manifold");
    if (const Json* p = find(j, "potential")) c.potential = potential(*p, "potential", c.manifold);
    if (const Json* q = find(j, "quadrature_order")) {
      const long long v = integer(*q, "quadrature_order");
      if (v < 4 || v > 128) fail("quadrature_order", "must lie in [4, 128]");
      c.quadrature_order = static_cast<int>(v);
    }
    if (const Json* s = find(j, "samples")) {
      const long long v = integer(*s, "samples");
      if (v < 1) fail("samples", "must be positive");
      c.samples = static_cast<int>(v);
    }
    if (const Json* s = find(j, "seed")) c.seed = unsigned_integer(*s, "seed");
    return c;
  }

 private:
  std::string source_;
};

std::shared_ptr<geometry::ChartedManifold> build_manifold(const ManifoldSpec& m) {
  if (m.kind == "sphere") return std::make_shared<geometry::ChartedManifold>(geometry::sphere(m.dim, m.radius));
  if (m.kind == "conformal_sphere")
    return std::make_shared<geometry::ChartedManifold>(
        geometry::conformal_sphere(m.dim, m.radius, m.epsilon, m.coefficients));
  if (m.kind == "product")
    return std::make_shared<geometry::ChartedManifold>(
        geometry::product(*build_manifold(m.factors[0]), *build_manifold(m.factors[1])));
  throw InputError("unknown manifold kind '" + m.kind + "'");
}

}  // namespace

CaseManifest parse_manifest(const std::string& text, const std::string& source) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::string what = e.what();
    const auto cut = what.find("; ");
    if (cut != std::string::npos) what = what.substr(cut + 2);
    throw ManifestError(source, position(text, e.byte > 0 ? e.byte - 1 : 0), what);
  }
  Reader r(source);
  if (!j.is_object()) r.fail("(root)", "expected an object");
  return r.manifest(j);
}

CaseManifest load_manifest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read manifest '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  CaseManifest c = parse_manifest(buf.str(), path);
  if (c.name.empty()) {
    const auto slash = path.find_last_of('/');
    std::string stem = slash == std::string::npos ? path : path.substr(slash + 1);
    const auto dot = stem.rfind('.');
    if (dot != std::string::npos && dot > 0) stem = stem.substr(0, dot);
    c.name = stem;
  }
  return c;
}

Json to_json(const ManifoldSpec& m) {
  Json j;
  j["kind"] = m.kind;
  j["dim"] = m.dim;
  if (m.kind == "product") {
    j["factors"] = Json::array();
    for (const auto& f : m.factors) j["factors"].push_back(to_json(f));
  } else {
    j["radius"] = m.radius;
  }
  if (m.kind == "conformal_sphere") {
    j["epsilon"] = m.epsilon;
    j["coefficients"] = m.coefficients;
  }
  return j;
}

Json to_json(const PotentialSpec& p) {
  Json j;
  j["kind"] = p.kind;
  if (p.kind == "height") {
    j["axis"] = p.axis;
    j["amplitude"] = p.amplitude;
    j["factor"] = p.factor;
  }
  return j;
}

Json to_json(const CaseManifest& c) {
  Json j;
  j["name"] = c.name;
  j["manifold"] = to_json(c.manifold);
  j["potential"] = to_json(c.potential);
  if (c.manifold.kind != "product") j["potential"].erase("factor");
  if (c.quadrature_order) j["quadrature_order"] = *c.quadrature_order;
  if (c.samples) j["samples"] = *c.samples;
  if (c.seed) j["seed"] = *c.seed;
  return j;
}

BuiltCase build_case(const CaseManifest& c) {
  BuiltCase b;
  auto m = build_manifold(c.manifold);
  if (c.potential.kind == "zero") {
    b.potential = geometry::constant_field(0.0);
  } else if (c.manifold.kind == "product") {
    b.potential = geometry::factor_height_function(*m, c.potential.factor, c.potential.axis, c.potential.amplitude);
  } else {
    b.potential = geometry::height_function(*m, c.potential.axis, c.potential.amplitude);
  }
  b.manifold = std::move(m);
  return b;
}

}  // namespace cpev::cli
