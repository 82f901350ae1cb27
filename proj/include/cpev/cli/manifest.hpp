#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cpev/errors.hpp"
#include "cpev/geometry/manifold.hpp"

namespace cpev::cli {

using Json = nlohmann::ordered_json;

// Manifest validation failure. `where` is "line L, column C" for syntax
// errors or the dotted field path for schema errors.
class ManifestError : public InputError {
 public:
  ManifestError(std::string source, std::string where, const std::string& what)
      : InputError(source + ": " + where + ": " + what), source_(std::move(source)), where_(std::move(where)) {}
  const std::string& source() const { return source_; }
  const std::string& where() const { return where_; }

 private:
  std::string source_;
  std::string where_;
};

struct ManifoldSpec {
  std::string kind;  // "sphere" | "product" | "conformal_sphere"
  int dim = 0;
  double radius = 1.0;
  std::vector<ManifoldSpec> factors;  // product
  double epsilon = 0.0;               // conformal_sphere
  std::vector<double> coefficients;   // conformal_sphere, dim + 1 entries
};

struct PotentialSpec {
  std::string kind = "zero";  // "height" | "zero"
  int axis = 1;
  double amplitude = 1.0;
  int factor = 0;  // sphere factor carrying the height function on products
};

struct CaseManifest {
  std::string name;
  ManifoldSpec manifold;
  PotentialSpec potential;
  std::optional<int> quadrature_order;
  std::optional<int> samples;
  std::optional<std::uint64_t> seed;
};

CaseManifest parse_manifest(const std::string& text, const std::string& source);
CaseManifest load_manifest(const std::string& path);

Json to_json(const ManifoldSpec& m);
Json to_json(const PotentialSpec& p);
Json to_json(const CaseManifest& c);

struct BuiltCase {
  std::shared_ptr<const geometry::ChartedManifold> manifold;
  geometry::ScalarField potential;
};

// InputError when the manifest describes nothing constructible.
BuiltCase build_case(const CaseManifest& c);

}  // namespace cpev::cli
