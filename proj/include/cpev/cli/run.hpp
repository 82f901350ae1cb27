#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "cpev/cli/manifest.hpp"

namespace cpev::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitConfig = 2;

enum class OutputFormat { json, csv_summary };

inline constexpr int kDefaultOrder = 32;
inline constexpr int kDefaultSamples = 200;
inline constexpr std::uint64_t kDefaultSeed = 1;

struct RunConfig {
  std::vector<std::string> cases;      // catalog names
  std::vector<std::string> manifests;  // manifest paths
  std::vector<std::string> checks = {"all"};
  // Unset values fall back to the manifest, then to the defaults above.
  std::optional<int> order;
  std::optional<int> samples;
  std::optional<std::uint64_t> seed;
  std::string out;  // empty: standard output
  OutputFormat format = OutputFormat::json;
  int jobs = 1;
  double tolerance_scale = 1.0;
  int n_min = 3;  // lemma31 dimension range
  int n_max = 8;
  bool timestamp = true;
};

struct RunResult {
  int exit_code = kExitOk;
  Json report;
};

// Runs every selected check. Configuration errors (unknown case or check,
// malformed manifest, bad ranges) throw InputError before any computation.
RunResult execute(const RunConfig& config);

std::string render(const Json& report, OutputFormat format);
// One row per check: case,check,total,divergence_check,verdict.
std::string render_csv_summary(const Json& report);

// Writes via a temporary file in the target directory and a rename.
void write_atomically(const std::string& path, const std::string& content);

// execute + render + write; returns the exit code. Diagnostics go to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

void list_cases(std::ostream& out);

// Parses "a..b" (or a single integer) into an inclusive range.
std::pair<int, int> parse_range(const std::string& text);

// Command-line entry point; flags may also be set through CPEV_* variables.
int main_entry(int argc, char** argv);

}  // namespace cpev::cli
