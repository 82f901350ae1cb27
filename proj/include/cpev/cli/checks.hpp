#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cpev/cli/manifest.hpp"
#include "cpev/cpe/triple.hpp"
#include "cpev/identities/check.hpp"

namespace cpev::cli {

// '*' matches any run of characters, '?' any single character.
bool glob_match(const std::string& pattern, const std::string& text);

// Check ids a pattern can select: the identity ids (prop21:0..4 and the
// rest), then the groups below. "all" selects everything.
std::vector<std::string> selectable_check_ids();

struct CheckSelection {
  std::vector<identities::IdentityCase> identities;
  bool matrix = false;
  bool curvature = false;
  bool lemma31 = false;
  bool divergence = false;
  bool cpe = false;
  bool theorems = false;

  bool any_case_check() const { return !identities.empty() || curvature || divergence || cpe || theorems; }
  bool any_general_check() const { return matrix || lemma31; }
};

// InputError for a pattern that selects nothing.
CheckSelection select_checks(const std::vector<std::string>& patterns);

struct CheckSettings {
  int order = 32;
  int samples = 200;
  std::uint64_t seed = 1;
  identities::Tolerances tolerances;
  int jobs = 1;
  int n_min = 3;
  int n_max = 8;
};

// Case-independent checks; each entry carries "check", "group", "case",
// "terms", "total", "divergence_check", "cpe_residual_l2", "verdict",
// "tolerances" and "diagnostics".
std::vector<Json> run_general_checks(const CheckSelection& s, const CheckSettings& settings);

struct CaseResult {
  Json exactness;
  Json hypothesis;  // null unless computed
  std::vector<Json> checks;
};

CaseResult run_case_checks(const std::string& case_name, const BuiltCase& built, const CheckSelection& s,
                           const CheckSettings& settings);

}  // namespace cpev::cli
