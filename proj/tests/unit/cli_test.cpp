#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cpev/cli/catalog.hpp"
#include "cpev/cli/checks.hpp"
#include "cpev/cli/manifest.hpp"
#include "cpev/cli/run.hpp"

using namespace cpev;
using namespace cpev::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "cpev_cli_test";
  fs::create_directories(dir);
  return dir;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

int run_binary(const std::string& args) {
  const std::string cmd = std::string(CPEV_VERIFY_BINARY) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

RunConfig quick(std::vector<std::string> cases, std::vector<std::string> checks) {
  RunConfig c;
  c.cases = std::move(cases);
  c.checks = std::move(checks);
  c.order = 8;
  c.samples = 20;
  c.timestamp = false;
  return c;
}

std::string manifest_error(const std::string& text) {
  try {
    parse_manifest(text, "m.json");
  } catch (const ManifestError& e) {
    return e.where() + ": " + e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("glob matching") {
  CHECK(glob_match("prop21:*", "prop21:3"));
  CHECK(glob_match("prop2?", "prop22"));
  CHECK_FALSE(glob_match("prop2?", "prop21:0"));
  CHECK(glob_match("*", ""));
  CHECK(glob_match("id31*", "id316"));
  CHECK_FALSE(glob_match("id31", "id316"));
}

TEST_CASE("check selection") {
  const auto all = select_checks({"all"});
  CHECK(all.identities.size() == 12);
  CHECK(all.matrix);
  CHECK(all.lemma31);
  CHECK(all.theorems);
  const auto some = select_checks({"prop21:*", "lemma31"});
  CHECK(some.identities.size() == 5);
  CHECK(some.lemma31);
  CHECK_FALSE(some.matrix);
  CHECK(some.any_case_check());
  CHECK(select_checks({"lemma31"}).any_general_check());
  CHECK_FALSE(select_checks({"lemma31"}).any_case_check());
  CHECK_THROWS_AS(select_checks({"prop99"}), InputError);
  CHECK_THROWS_AS(select_checks({"zzz*"}), InputError);
}

TEST_CASE("ranges") {
  CHECK(parse_range("3..8") == std::pair{3, 8});
  CHECK(parse_range("5") == std::pair{5, 5});
  CHECK_THROWS_AS(parse_range("8..3"), InputError);
  CHECK_THROWS_AS(parse_range("a..b"), InputError);
}

TEST_CASE("catalog contents") {
  for (const char* name : {"sphere2", "sphere3", "sphere4", "product-s2xs2", "product-trace-only"})
    CHECK(find_catalog_case(name) != nullptr);
  CHECK(find_catalog_case("nope") == nullptr);
  std::ostringstream a, b;
  list_cases(a);
  list_cases(b);
  CHECK(a.str() == b.str());
  CHECK(a.str().find("prop21:0") != std::string::npos);
  CHECK(a.str().find("product-trace-only") != std::string::npos);
}

TEST_CASE("manifest parsing and field-path diagnostics") {
  const auto m = parse_manifest(R"({"manifold": {"kind": "sphere", "dim": 3, "radius": 2},
                                     "potential": {"kind": "height", "axis": 4, "amplitude": 0.5},
                                     "quadrature_order": 12, "seed": 4})",
                                "m.json");
  CHECK(m.manifold.dim == 3);
  CHECK(m.manifold.radius == 2.0);
  CHECK(m.potential.axis == 4);
  CHECK(m.quadrature_order == 12);
  CHECK(m.seed == 4u);
  const auto round = parse_manifest(to_json(m).dump(), "again.json");
  CHECK(to_json(round) == to_json(m));

  CHECK(manifest_error(R"({"manifold": {"kind": "sphere", "dim": 3,})").find("line 1") == 0);
  CHECK(manifest_error("{\n  \"manifold\": {\"kind\": \"sphere\",\n  \"dim\": }\n}").find("line 3") == 0);
  CHECK(manifest_error(R"({"manifold": {"kind": "sphere", "dim": 7}})").find("manifold.dim") == 0);
  CHECK(manifest_error(R"({"manifold": {"kind": "sphere", "dim": 3, "colour": 1}})").find("manifold.colour") == 0);
  CHECK(manifest_error(R"({"manifold": {"kind": "torus"}})").find("manifold.kind") == 0);
  CHECK(manifest_error(R"({"manifold": {"kind": "sphere", "dim": 2}, "potential": {"kind": "height", "axis": 9}})")
            .find("potential.axis") == 0);
  CHECK(manifest_error(R"({"manifold": {"kind": "product", "factors": [{"kind": "sphere", "dim": 2}]}})")
            .find("manifold.factors") == 0);
  CHECK(manifest_error(R"({"potential": {"kind": "zero"}})").find("manifold") == 0);
  CHECK(manifest_error(R"({"manifold": {"kind": "conformal_sphere", "dim": 3, "epsilon": 0.1, "coefficients": [1, 2]}})")
            .find("manifold.coefficients") == 0);
  CHECK(manifest_error(R"({"manifold": {"kind": "sphere", "dim": 3}, "quadrature_order": 2})").find("quadrature_order") == 0);
}

TEST_CASE("built cases match their manifests") {
  const auto* e = find_catalog_case("product-trace-only");
  REQUIRE(e);
  const auto built = build_case(e->manifest);
  CHECK(built.manifold->dim == 4);
  CHECK(built.manifold->sphere_factors.size() == 2);
}

TEST_CASE("exit 0 with not-applicable on trace-only data") {
  const auto r = execute(quick({"product-trace-only"}, {"prop21:0"}));
  CHECK(r.exit_code == kExitOk);
  const auto& checks = r.report["cases"][0]["checks"];
  REQUIRE(checks.size() == 1);
  CHECK(checks[0]["verdict"] == "not-applicable");
  CHECK(checks[0]["total"].get<double>() != 0.0);
  CHECK_FALSE(checks[0]["diagnostics"].get<std::string>().empty());
  CHECK(r.report["config"]["seed"] == 1);
  CHECK(r.report["config"]["order"] == 8);
  CHECK(r.report["generated_at"].is_null());
}

TEST_CASE("exit 1 on a failing check") {
  // A vanishing tolerance scale makes every quadrature-limited check fail.
  auto c = quick({"sphere3"}, {"divergence"});
  c.tolerance_scale = 1e-30;
  const auto r = execute(c);
  CHECK(r.exit_code == kExitFail);
  CHECK(r.report["summary"]["fail"].get<int>() > 0);
  CHECK(r.report["summary"]["exit_code"] == kExitFail);
}

TEST_CASE("configuration errors are rejected before computing") {
  CHECK_THROWS_AS(execute(quick({"nope"}, {"all"})), InputError);
  CHECK_THROWS_AS(execute(quick({"sphere3"}, {"prop99"})), InputError);
  CHECK_THROWS_AS(execute(quick({}, {"curvature"})), InputError);
}

TEST_CASE("reports are byte-identical across runs and worker counts") {
  auto c = quick({"product-trace-only", "sphere3"}, {"prop21:*", "prop22", "curvature"});
  const std::string a = render(execute(c).report, OutputFormat::json);
  c.jobs = 3;
  const std::string b = render(execute(c).report, OutputFormat::json);
  CHECK(a == b);
}

TEST_CASE("csv summary has one row per check") {
  const auto r = execute(quick({"sphere3"}, {"prop21:0", "prop22"}));
  const std::string csv = render_csv_summary(r.report);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "case,check,total,divergence_check,verdict");
  int rows = 0;
  while (std::getline(in, line))
    if (!line.empty()) {
      ++rows;
      CHECK(line.rfind("sphere3,", 0) == 0);
      CHECK(line.find(",pass") != std::string::npos);
    }
  CHECK(rows == 2);
}

TEST_CASE("atomic writes replace the target") {
  const auto p = scratch_dir() / "atomic.json";
  write_atomically(p.string(), "first");
  write_atomically(p.string(), "second");
  CHECK(read_file(p) == "second");
  for (const auto& entry : fs::directory_iterator(scratch_dir()))
    CHECK(entry.path().filename().string().find(".tmp") == std::string::npos);
}

TEST_CASE("command line exit codes") {
  const auto out = scratch_dir() / "cli.json";
  CHECK(run_binary("--case product-trace-only --checks prop21:0 --order 8 --samples 20 --out " + out.string()) == 0);
  CHECK(run_binary("--checks lemma31 --n 3..4 --samples 1000 --seed 7 --out " + out.string()) == 0);
  CHECK(run_binary("--case sphere3 --checks prop99") == 2);
  CHECK(run_binary("--case nowhere") == 2);
  CHECK(run_binary("--order banana") == 2);
  CHECK(run_binary("--case sphere3 --checks divergence --order 8 --tolerance-scale 1e-30 --out " + out.string()) == 1);
  CHECK(run_binary("--help") == 0);
  CHECK(run_binary("--list") == 0);

  const auto bad = scratch_dir() / "bad.json";
  write_file(bad, "{\"manifold\": {\"kind\": \"sphere\", \"dim\": 3,}}");
  CHECK(run_binary("--manifest " + bad.string()) == 2);

  const auto good = scratch_dir() / "good.json";
  write_file(good, R"({"manifold": {"kind": "sphere", "dim": 2}, "potential": {"kind": "height", "axis": 3}})");
  CHECK(run_binary("--manifest " + good.string() + " --checks curvature --order 8 --out " + out.string()) == 0);
  const auto report = Json::parse(read_file(out));
  CHECK(report["cases"][0]["case"] == "good");
}

TEST_CASE("environment variables configure the command line") {
  const auto out = scratch_dir() / "env.json";
  const std::string cmd = "CPEV_ORDER=8 CPEV_SAMPLES=10 CPEV_SEED=5 " + std::string(CPEV_VERIFY_BINARY) +
                          " --case sphere2 --checks curvature --no-timestamp --out " + out.string() + " >/dev/null 2>&1";
  REQUIRE(std::system(cmd.c_str()) == 0);
  const auto report = Json::parse(read_file(out));
  CHECK(report["config"]["order"] == 8);
  CHECK(report["config"]["seed"] == 5);
}
