#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cpev/cpe/operators.hpp"
#include "cpev/geometry/quadrature.hpp"
#include "cpev/identities/case.hpp"
#include "cpev/identities/fields.hpp"

namespace cpev::identities {

enum class CheckVerdict { pass, fail, not_applicable };
std::string to_string(CheckVerdict v);  // "pass" | "fail" | "not-applicable"

struct Tolerances {
  double quadrature = 1e-6;     // integral totals, relative to their scale
  double pointwise = 1e-8;      // pointwise algebra
  double combination = 1e-10;   // linear combinations of reports
  double scale = 1.0;           // multiplies all of the above

  double quad() const { return quadrature * scale; }
  double point() const { return pointwise * scale; }
  double comb() const { return combination * scale; }
};

struct IdentityOptions {
  int samples = 200;
  std::uint64_t seed = 0;
  Tolerances tolerances;
  int jobs = 1;
};

// Integral of div V with the scale it is judged against:
// scale = vol * (kappa max|V| + max|nabla V|), kappa = sqrt(max|R| / (n(n-1)))
// (1 when R vanishes), floored at vol * kappa * kDivergenceFloor so that
// round-off-level fields are not measured against their own noise.
struct DivergenceCheck {
  double integral = 0.0;
  double scale = 0.0;
  double relative = 0.0;
  double max_field = 0.0;
  double max_derivative = 0.0;
  bool within_tolerance = false;
};

inline constexpr double kDivergenceFloor = 1e-7;

struct IdentityReport {
  IdentityCase identity;
  std::vector<std::pair<std::string, double>> terms;  // integrand order
  double total = 0.0;
  double term_scale = 0.0;  // sum of |terms|
  DivergenceCheck divergence;
  double cpe_residual_l2 = 0.0;
  double volume = 0.0;
  cpe::Exactness exactness = cpe::Exactness::non_solution;
  // max over samples of |div V - claimed divergence|; exact triples, prop21/prop22.
  std::optional<double> pointwise_divergence_gap;
  CheckVerdict verdict = CheckVerdict::not_applicable;
  std::string diagnostics;

  double term(const std::string& name) const;
};

struct IdentityBatch {
  std::vector<IdentityReport> reports;
  double volume = 0.0;
  double integral_f = 0.0;
  double cpe_residual_l2 = 0.0;
  std::vector<double> weighted_integrals;  // int (1+f)^{2k} Rring(grad f, grad f), k = 0..4
  double max_traceless_norm = 0.0;  // over quadrature nodes
  double max_abs_scalar = 0.0;
};

// All cases share one quadrature sweep. DomainError if a case does not
// apply in the triple's dimension.
IdentityBatch check_identities(const std::vector<IdentityCase>& cases, const cpe::CPETriple& t,
                               const geometry::QuadratureRule& rule, const IdentityOptions& options = {});
IdentityReport check_identity(const IdentityCase& c, const cpe::CPETriple& t, const geometry::QuadratureRule& rule,
                              const IdentityOptions& options = {});

using FieldEvaluator = std::function<FrameVector(const cpe::TriplePoint&)>;

DivergenceCheck divergence_theorem_check(const cpe::CPETriple& t, const FieldEvaluator& field,
                                         const geometry::QuadratureRule& rule, const Tolerances& tolerances = {},
                                         int jobs = 1);

// All fields share one sweep; results are in the order of `fields`.
std::vector<DivergenceCheck> divergence_theorem_checks(const cpe::CPETriple& t, const std::vector<NamedField>& fields,
                                                       const geometry::QuadratureRule& rule,
                                                       const Tolerances& tolerances = {}, int jobs = 1);

// Divergence residuals of one field across increasing quadrature orders.
struct ConvergenceStudy {
  std::string field;
  std::vector<int> orders;
  std::vector<DivergenceCheck> checks;  // one per order
  bool monotone = false;                // relative error non-increasing, below kConvergenceFloor counted as equal
  bool final_within_tolerance = false;
};

inline constexpr double kConvergenceFloor = 1e-10;

std::vector<ConvergenceStudy> divergence_convergence(const cpe::CPETriple& t, const std::vector<NamedField>& fields,
                                                     const std::vector<int>& orders, const Tolerances& tolerances = {},
                                                     int jobs = 1);

struct TheoremAudit {
  std::string theorem;
  bool hypothesis_holds = false;
  bool identity_consistent = false;
  bool forces_nonpositive = false;  // hypothesis + identity force int(nonneg) <= 0
  bool traceless_vanishes = false;
  double max_traceless = 0.0;        // over interior samples
  double max_traceless_nodes = 0.0;  // over quadrature nodes, pole round-off included
  CheckVerdict verdict = CheckVerdict::not_applicable;
  std::vector<std::pair<std::string, double>> quantities;
  std::string diagnostics;
};

struct TheoremPipeline {
  cpe::HypothesisMap hypotheses;
  IdentityBatch identities;
  std::vector<TheoremAudit> audits;
};

// Identity cases the audits draw on in dimension n.
std::vector<IdentityCase> theorem_cases(int n);

TheoremPipeline theorem_pipeline(const cpe::CPETriple& t, const geometry::QuadratureRule& rule,
                                 const IdentityOptions& options = {});
// Same, from a batch that already contains every case of theorem_cases(n).
TheoremPipeline theorem_pipeline_from(const cpe::CPETriple& t, IdentityBatch batch, const IdentityOptions& options = {});

}  // namespace cpev::identities
