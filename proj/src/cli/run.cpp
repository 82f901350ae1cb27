#include "cpev/cli/run.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <unistd.h>

#include "cpev/cli/catalog.hpp"
#include "cpev/cli/checks.hpp"
#include "cpev/identities/case.hpp"

namespace cpev::cli {

namespace {

constexpr const char* kSchema = "cpev-report/1";
constexpr const char* kVersion = "1.0.0";

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string format_name(OutputFormat f) { return f == OutputFormat::json ? "json" : "csv-summary"; }

void validate(const RunConfig& c) {
  if (c.order && (*c.order < geometry::kMinQuadratureOrder || *c.order > geometry::kMaxQuadratureOrder))
    throw InputError("--order must lie in [4, 128], got " + std::to_string(*c.order));
  if (c.samples && *c.samples < 1) throw InputError("--samples must be positive");
  if (c.jobs < 1) throw InputError("--jobs must be positive");
  if (!(c.tolerance_scale > 0.0)) throw InputError("--tolerance-scale must be positive");
  if (c.n_min < 3 || c.n_max < c.n_min || c.n_max > 64)
    throw InputError("--n range must satisfy 3 <= a <= b <= 64, got " + std::to_string(c.n_min) + ".." +
                     std::to_string(c.n_max));
}

struct ResolvedCase {
  CaseManifest manifest;
  BuiltCase built;
};

void tally(const Json& check, int& pass, int& fail, int& na) {
  const std::string v = check.at("verdict").get<std::string>();
  if (v == "pass") ++pass;
  else if (v == "fail") ++fail;
  else ++na;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string csv_number(const Json& v) { return v.is_null() ? "" : v.dump(); }

}  // namespace

std::pair<int, int> parse_range(const std::string& text) {
  auto to_int = [&](const std::string& s) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) throw InputError("invalid dimension range '" + text + "'");
    return v;
  };
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const int v = to_int(text);
    return {v, v};
  }
  const int lo = to_int(text.substr(0, dots)), hi = to_int(text.substr(dots + 2));
  if (lo > hi) throw InputError("empty dimension range '" + text + "'");
  return {lo, hi};
}

RunResult execute(const RunConfig& config) {
  validate(config);
  const CheckSelection selection = select_checks(config.checks);

  std::vector<ResolvedCase> cases;
  for (const auto& name : config.cases) {
    const CatalogEntry* e = find_catalog_case(name);
    if (!e) throw InputError("unknown case '" + name + "' (see --list)");
    cases.push_back({e->manifest, {}});
  }
  for (const auto& path : config.manifests) cases.push_back({load_manifest(path), {}});
  for (auto& c : cases) c.built = build_case(c.manifest);
  if (cases.empty() && selection.any_case_check())
    throw InputError("the selected checks need a case: pass --case or --manifest");

  identities::Tolerances tol;
  tol.scale = config.tolerance_scale;

  CheckSettings general;
  general.order = config.order.value_or(kDefaultOrder);
  general.samples = config.samples.value_or(kDefaultSamples);
  general.seed = config.seed.value_or(kDefaultSeed);
  general.tolerances = tol;
  general.jobs = config.jobs;
  general.n_min = config.n_min;
  general.n_max = config.n_max;

  Json report;
  report["schema"] = kSchema;
  report["tool"] = {{"name", "verify"}, {"version", kVersion}};
  report["generated_at"] = config.timestamp ? Json(utc_timestamp()) : Json(nullptr);
  Json cfg;
  cfg["checks"] = config.checks;
  cfg["order"] = general.order;
  cfg["samples"] = general.samples;
  cfg["seed"] = general.seed;
  cfg["tolerance_scale"] = config.tolerance_scale;
  cfg["n_range"] = {config.n_min, config.n_max};
  cfg["format"] = format_name(config.format);
  report["config"] = cfg;

  int pass = 0, fail = 0, na = 0;
  report["cases"] = Json::array();
  for (const auto& c : cases) {
    CheckSettings s = general;
    s.order = config.order.value_or(c.manifest.quadrature_order.value_or(kDefaultOrder));
    s.samples = config.samples.value_or(c.manifest.samples.value_or(kDefaultSamples));
    s.seed = config.seed.value_or(c.manifest.seed.value_or(kDefaultSeed));
    CaseManifest effective = c.manifest;
    effective.quadrature_order = s.order;
    effective.samples = s.samples;
    effective.seed = s.seed;

    CaseResult r = run_case_checks(c.manifest.name, c.built, selection, s);
    Json entry;
    entry["case"] = c.manifest.name;
    entry["manifest"] = to_json(effective);
    entry["volume"] = c.built.manifold->known_volume ? Json(*c.built.manifold->known_volume) : Json(nullptr);
    entry["exactness"] = std::move(r.exactness);
    entry["hypothesis"] = std::move(r.hypothesis);
    entry["checks"] = Json::array();
    for (auto& j : r.checks) {
      tally(j, pass, fail, na);
      entry["checks"].push_back(std::move(j));
    }
    report["cases"].push_back(std::move(entry));
  }

  report["general"] = Json::array();
  for (auto& j : run_general_checks(selection, general)) {
    tally(j, pass, fail, na);
    report["general"].push_back(std::move(j));
  }

  RunResult out;
  out.exit_code = fail > 0 ? kExitFail : kExitOk;
  report["summary"] = {{"checks", pass + fail + na},
                       {"pass", pass},
                       {"fail", fail},
                       {"not_applicable", na},
                       {"exit_code", out.exit_code}};
  out.report = std::move(report);
  return out;
}

std::string render_csv_summary(const Json& report) {
  std::ostringstream s;
  s << "case,check,total,divergence_check,verdict\n";
  auto row = [&](const Json& c) {
    s << csv_field(c.at("case").get<std::string>()) << ',' << csv_field(c.at("check").get<std::string>()) << ','
      << csv_number(c.at("total")) << ',' << csv_number(c.at("divergence_check")) << ','
      << c.at("verdict").get<std::string>() << '\n';
  };
  for (const auto& c : report.at("cases"))
    for (const auto& check : c.at("checks")) row(check);
  for (const auto& check : report.at("general")) row(check);
  return s.str();
}

std::string render(const Json& report, OutputFormat format) {
  if (format == OutputFormat::csv_summary) return render_csv_summary(report);
  return report.dump(2) + "\n";
}

void write_atomically(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp-" + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw InputError("cannot write '" + tmp.string() + "'");
    f << content;
    f.flush();
    if (!f) throw InputError("failed writing '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw InputError("cannot move report into place at '" + path + "': " + ec.message());
  }
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  RunResult r;
  try {
    r = execute(config);
  } catch (const InputError& e) {
    err << "verify: configuration error: " << e.what() << "\n";
    return kExitConfig;
  }
  const std::string text = render(r.report, config.format);
  try {
    if (config.out.empty()) {
      out << text;
    } else {
      write_atomically(config.out, text);
    }
  } catch (const InputError& e) {
    err << "verify: " << e.what() << "\n";
    return kExitConfig;
  }
  const Json& sum = r.report.at("summary");
  err << "verify: " << sum.at("checks").get<int>() << " checks, " << sum.at("pass").get<int>() << " pass, "
      << sum.at("fail").get<int>() << " fail, " << sum.at("not_applicable").get<int>() << " not-applicable\n";
  return r.exit_code;
}

void list_cases(std::ostream& out) {
  out << "cases:\n";
  for (const auto& e : catalog()) out << "  " << e.name << "  " << e.summary << "\n";
  out << "manifest kinds:\n"
      << "  manifold  sphere (dim 2..4, radius), product (two factors), conformal_sphere (dim, radius, epsilon, "
         "coefficients)\n"
      << "  potential height (axis, amplitude, factor), zero\n";
  out << "identity checks:\n";
  for (const auto& c : identities::all_identity_cases()) {
    out << "  " << c.id() << "  " << c.description();
    if (c.required_dim() != 0) out << "  [n = " << c.required_dim() << "]";
    out << "\n";
  }
  out << "  prop21:<k>  any nonnegative weight exponent k\n";
  out << "check groups:\n"
      << "  curvature   Ricci identities, contracted Bianchi, Weyl decomposition, curvature symmetries\n"
      << "  cpe         trace and operator consistency, differentiated CPE, spectral condition\n"
      << "  divergence  divergence theorem for every catalog field, orders 8, 16 and --order\n"
      << "  theorems    hypothesis and identity audits of the rigidity arguments\n"
      << "  matrix      trace powers, eigen solver, 3x3 trace identities, pointwise inequalities\n"
      << "  lemma31     cube-sum bound over zero-sum vectors for each n in --n\n"
      << "  all         everything above\n";
}

int main_entry(int argc, char** argv) {
  CLI::App app{"Verification engine for CPE identities"};
  app.name("verify");
  RunConfig cfg;
  cfg.jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  std::string format = "json";
  std::string n_range = "3..8";
  bool list = false;
  bool no_timestamp = false;
  int order = 0, samples = 0;
  std::uint64_t seed = 0;

  app.add_option("--case", cfg.cases, "Catalog case name (repeatable)")->envname("CPEV_CASE")->delimiter(',');
  app.add_option("--manifest", cfg.manifests, "Case manifest path (repeatable)")->envname("CPEV_MANIFEST");
  app.add_option("--checks", cfg.checks, "Check ids or globs, comma separated")
      ->envname("CPEV_CHECKS")
      ->delimiter(',')
      ->capture_default_str();
  auto* order_opt = app.add_option("--order", order, "Gauss-Legendre points per axis")->envname("CPEV_ORDER");
  auto* samples_opt =
      app.add_option("--samples", samples, "Sample points, or trials for matrix/lemma31")->envname("CPEV_SAMPLES");
  auto* seed_opt = app.add_option("--seed", seed, "Sampling seed")->envname("CPEV_SEED");
  app.add_option("--out", cfg.out, "Report path (default: standard output)")->envname("CPEV_OUT");
  app.add_option("--format", format, "json or csv-summary")
      ->envname("CPEV_FORMAT")
      ->check(CLI::IsMember({"json", "csv-summary"}))
      ->capture_default_str();
  app.add_option("--jobs", cfg.jobs, "Worker threads")->envname("CPEV_JOBS")->capture_default_str();
  app.add_option("--tolerance-scale", cfg.tolerance_scale, "Multiplies every tolerance")
      ->envname("CPEV_TOLERANCE_SCALE")
      ->capture_default_str();
  app.add_option("--n", n_range, "Dimension range a..b for lemma31")->envname("CPEV_N")->capture_default_str();
  app.add_flag("--list", list, "List catalog cases and check ids");
  app.add_flag("--no-timestamp", no_timestamp, "Write null for generated_at");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "verify: configuration error: " << e.what() << "\n";
    return kExitConfig;
  }

  if (list) {
    list_cases(std::cout);
    return kExitOk;
  }
  if (*order_opt) cfg.order = order;
  if (*samples_opt) cfg.samples = samples;
  if (*seed_opt) cfg.seed = seed;
  cfg.format = format == "json" ? OutputFormat::json : OutputFormat::csv_summary;
  cfg.timestamp = !no_timestamp;
  try {
    const auto [lo, hi] = parse_range(n_range);
    cfg.n_min = lo;
    cfg.n_max = hi;
  } catch (const InputError& e) {
    std::cerr << "verify: configuration error: " << e.what() << "\n";
    return kExitConfig;
  }
  return run(cfg, std::cout, std::cerr);
}

}  // namespace cpev::cli
