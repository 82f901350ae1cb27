#include "cpev/cli/checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "cpev/curvature/residuals.hpp"
#include "cpev/errors.hpp"
#include "cpev/geometry/sampling.hpp"
#include "cpev/tensor/trace_algebra.hpp"

namespace cpev::cli {

using identities::CheckVerdict;
using identities::IdentityCase;
using identities::IdentityKind;
using tensor::SymTensor2;

bool glob_match(const std::string& pattern, const std::string& text) {
  // Iterative matcher with single-star backtracking.
  std::size_t p = 0, t = 0, star = std::string::npos, mark = 0;
  while (t < text.size()) {
    if (p < pattern.size() && (pattern[p] == '?' || pattern[p] == text[t])) {
      ++p;
      ++t;
    } else if (p < pattern.size() && pattern[p] == '*') {
      star = p++;
      mark = t;
    } else if (star != std::string::npos) {
      p = star + 1;
      t = ++mark;
    } else {
      return false;
    }
  }
  while (p < pattern.size() && pattern[p] == '*') ++p;
  return p == pattern.size();
}

namespace {

const std::vector<std::string>& group_ids() {
  static const std::vector<std::string> ids = {"matrix", "curvature", "lemma31", "divergence", "cpe", "theorems"};
  return ids;
}

bool has_glob(const std::string& s) { return s.find_first_of("*?") != std::string::npos; }

void add_identity(CheckSelection& s, const IdentityCase& c) {
  if (std::find(s.identities.begin(), s.identities.end(), c) == s.identities.end()) s.identities.push_back(c);
}

void add_group(CheckSelection& s, const std::string& g) {
  if (g == "matrix") s.matrix = true;
  if (g == "curvature") s.curvature = true;
  if (g == "lemma31") s.lemma31 = true;
  if (g == "divergence") s.divergence = true;
  if (g == "cpe") s.cpe = true;
  if (g == "theorems") s.theorems = true;
}

}  // namespace

std::vector<std::string> selectable_check_ids() {
  std::vector<std::string> out;
  for (const auto& c : identities::all_identity_cases()) out.push_back(c.id());
  for (const auto& g : group_ids()) out.push_back(g);
  return out;
}

CheckSelection select_checks(const std::vector<std::string>& patterns) {
  if (patterns.empty()) throw InputError("no checks selected");
  CheckSelection s;
  for (const auto& raw : patterns) {
    std::stringstream split(raw);
    std::string pattern;
    while (std::getline(split, pattern, ',')) {
      if (pattern.empty()) throw InputError("empty check id in '" + raw + "'");
      if (pattern == "all") {
        for (const auto& c : identities::all_identity_cases()) add_identity(s, c);
        for (const auto& g : group_ids()) add_group(s, g);
        continue;
      }
      if (!has_glob(pattern)) {
        if (std::find(group_ids().begin(), group_ids().end(), pattern) != group_ids().end()) {
          add_group(s, pattern);
          continue;
        }
        try {
          add_identity(s, identities::parse_identity_case(pattern));
        } catch (const InputError&) {
          throw InputError("unknown check id '" + pattern + "'");
        }
        continue;
      }
      bool matched = false;
      for (const auto& c : identities::all_identity_cases())
        if (glob_match(pattern, c.id())) {
          add_identity(s, c);
          matched = true;
        }
      for (const auto& g : group_ids())
        if (glob_match(pattern, g)) {
          add_group(s, g);
          matched = true;
        }
      if (!matched) throw InputError("check pattern '" + pattern + "' matches no check id");
    }
  }
  return s;
}

namespace {

// Deterministic variates on top of mt19937_64, independent of the standard
// library's distribution implementations.
class Variates {
 public:
  explicit Variates(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double normal() {
    if (spare_) {
      spare_ = false;
      return cached_;
    }
    double u = 0.0;
    while (u <= 0.0) u = uniform();
    const double v = uniform();
    const double r = std::sqrt(-2.0 * std::log(u));
    cached_ = r * std::sin(2.0 * M_PI * v);
    spare_ = true;
    return r * std::cos(2.0 * M_PI * v);
  }
  int integer(int lo, int hi) { return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1)); }

 private:
  std::mt19937_64 engine_;
  bool spare_ = false;
  double cached_ = 0.0;
};

SymTensor2 random_symmetric(Variates& rng, int n) {
  SymTensor2 s(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) s.set(i, j, rng.normal());
  return s;
}

std::vector<double> random_vector(Variates& rng, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (double& x : v) x = rng.normal();
  return v;
}

Json tolerances_json(const identities::Tolerances& t) {
  Json j;
  j["quadrature"] = t.quad();
  j["pointwise"] = t.point();
  j["combination"] = t.comb();
  j["scale"] = t.scale;
  return j;
}

struct Entry {
  Json j;

  Entry(const std::string& id, const std::string& group, const std::string& case_name,
        const identities::Tolerances& tol) {
    j["check"] = id;
    j["group"] = group;
    j["case"] = case_name;
    j["terms"] = Json::object();
    j["total"] = nullptr;
    j["divergence_check"] = nullptr;
    j["cpe_residual_l2"] = nullptr;
    j["verdict"] = "not-applicable";
    j["tolerances"] = tolerances_json(tol);
    j["diagnostics"] = "";
    j["details"] = Json::object();
  }

  void term(const std::string& name, double v) { j["terms"][name] = v; }
  void verdict(CheckVerdict v) { j["verdict"] = identities::to_string(v); }
  void verdict(bool ok) { verdict(ok ? CheckVerdict::pass : CheckVerdict::fail); }
  void diagnostics(const std::string& d) { j["diagnostics"] = d; }
};

std::string format(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

// Worst-case record of a bounded residual over many trials.
struct Worst {
  double value = 0.0;
  void add(double v) { value = std::max(value, std::isfinite(v) ? std::abs(v) : std::numeric_limits<double>::infinity()); }
};

std::vector<Json> matrix_checks(const CheckSettings& cfg) {
  std::vector<Json> out;
  const auto& tol = cfg.tolerances;
  const int count = cfg.samples;

  {
    Entry e("matrix:trace-power", "matrix", "", tol);
    Variates rng(cfg.seed);
    Worst rel;
    for (int s = 0; s < count; ++s) {
      const int n = rng.integer(2, 6);
      const SymTensor2 m = random_symmetric(rng, n);
      const auto spec = tensor::eigenvalues(m);
      for (int p = 1; p <= tensor::kMaxTracePower; ++p) {
        double oracle = 0.0, size = 0.0;
        for (double a : spec.values) {
          oracle += std::pow(a, p);
          size += std::pow(std::abs(a), p);
        }
        rel.add((tensor::trace_power(m, p) - oracle) / std::max(size, 1e-300));
      }
    }
    const double limit = 1e-13 * tol.scale;
    e.term("max relative deviation from eigenvalue sums", rel.value);
    e.j["total"] = rel.value;
    e.j["details"] = {{"trials", count}, {"powers", tensor::kMaxTracePower}, {"limit", limit}};
    e.verdict(rel.value <= limit);
    e.diagnostics("tr(S^p) against sum of a_i^p over random symmetric S, n = 2..6");
    out.push_back(e.j);
  }

  {
    Entry e("matrix:eigen", "matrix", "", tol);
    Variates rng(cfg.seed + 1);
    Worst recon, traceless_sum;
    bool sorted = true;
    for (int s = 0; s < count; ++s) {
      const int n = rng.integer(2, 6);
      const SymTensor2 m = random_symmetric(rng, n);
      const auto eig = tensor::jacobi_eigen(m.to_matrix());
      double resid = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double v = 0.0;
          for (int a = 0; a < n; ++a) v += eig.vectors(i, a) * eig.values[static_cast<std::size_t>(a)] * eig.vectors(j, a);
          resid += (m(i, j) - v) * (m(i, j) - v);
        }
      recon.add(std::sqrt(resid) / std::max(m.norm(), 1e-300));
      for (std::size_t a = 1; a < eig.values.size(); ++a) sorted = sorted && eig.values[a - 1] <= eig.values[a];
      const auto spec = tensor::eigenvalues(tensor::traceless_part(m));
      double sum = 0.0, abs_sum = 0.0;
      for (double a : spec.values) {
        sum += a;
        abs_sum += std::abs(a);
      }
      traceless_sum.add(sum / std::max(abs_sum, 1e-300));
    }
    e.term("max relative reconstruction residual", recon.value);
    e.term("max relative eigenvalue sum of traceless parts", traceless_sum.value);
    e.j["total"] = recon.value;
    e.j["details"] = {{"trials", count}, {"ascending", sorted}};
    e.verdict(sorted && recon.value <= 1e-11 * tol.scale && traceless_sum.value <= 1e-10 * tol.scale);
    e.diagnostics("Jacobi eigendecomposition of random symmetric matrices, n = 2..6");
    out.push_back(e.j);
  }

  {
    Entry e("matrix:trace-identities", "matrix", "", tol);
    Variates rng(cfg.seed + 2);
    Worst r4, r5, r6;
    for (int s = 0; s < count; ++s) {
      SymTensor2 m(3);
      for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) m.set(i, j, 2.0 * rng.uniform() - 1.0);
      const auto r = tensor::traceless3_trace_identities(tensor::traceless_part(m));
      r4.add(r.r4);
      r5.add(r.r5);
      r6.add(r.r6);
    }
    const double d[] = {-2.0, 1.0, 1.0};
    const SymTensor2 worked = SymTensor2::diagonal(d);
    const double w4 = tensor::trace_power(worked, 4), w5 = tensor::trace_power(worked, 5),
                 w6 = tensor::trace_power(worked, 6);
    const double limit = 1e-10 * tol.scale;
    e.term("max |r4|", r4.value);
    e.term("max |r5|", r5.value);
    e.term("max |r6|", r6.value);
    e.term("tr T^4 at diag(-2,1,1)", w4);
    e.term("tr T^5 at diag(-2,1,1)", w5);
    e.term("tr T^6 at diag(-2,1,1)", w6);
    e.j["total"] = std::max({r4.value, r5.value, r6.value});
    e.j["details"] = {{"trials", count}, {"limit", limit}};
    const bool worked_ok = std::abs(w4 - 18.0) <= limit && std::abs(w5 + 30.0) <= limit && std::abs(w6 - 66.0) <= limit;
    e.verdict(r4.value <= limit && r5.value <= limit && r6.value <= limit && worked_ok);
    e.diagnostics(
        "trace-power reductions of traceless parts of symmetric 3x3 tensors with entries in [-1, 1]; worked values "
        "18, -30, 66");
    out.push_back(e.j);
  }

  {
    Entry e("matrix:gradient-bound", "matrix", "", tol);
    Variates rng(cfg.seed + 3);
    double min_margin = std::numeric_limits<double>::infinity();
    for (int s = 0; s < count; ++s) {
      const SymTensor2 t = tensor::traceless_part(random_symmetric(rng, 3));
      const auto v = random_vector(rng, 3);
      min_margin = std::min(min_margin, tensor::gradient_quadratic_bound(t, v).margin);
    }
    const double limit = -1e-9 * tol.scale;
    e.term("min (3/2)|T|^2|v|^2 - 2<T^2 v,v>", min_margin);
    e.j["total"] = min_margin;
    e.j["details"] = {{"trials", count}, {"limit", limit}};
    e.verdict(min_margin >= limit);
    e.diagnostics("pointwise quadratic bound over random traceless T and vectors v");
    out.push_back(e.j);
  }

  {
    Entry e("matrix:signed-cube-bound", "matrix", "", tol);
    Variates rng(cfg.seed + 4);
    double min_margin = std::numeric_limits<double>::infinity();
    int accepted = 0;
    while (accepted < count) {
      double a[3] = {rng.normal(), rng.normal(), rng.normal()};
      const double mean = (a[0] + a[1] + a[2]) / 3.0;
      for (double& x : a) x -= mean;
      std::sort(a, a + 3);
      if (3.0 * a[0] * a[1] * a[2] > 0.0) continue;
      ++accepted;
      min_margin = std::min(min_margin, tensor::eigenframe_signed_cube_margin(a[0], a[1]));
    }
    const double d[] = {-2.0, 1.0, 1.0};
    const double e1[] = {1.0, 0.0, 0.0};
    const auto worked = tensor::signed_cube_gradient_bound(SymTensor2::diagonal(d), e1);
    const double limit = -1e-9 * tol.scale;
    e.term("min (a1-a2)^2 - 3 a1 a2", min_margin);
    e.term("bilinear reading at diag(-2,1,1), e1", worked.bilinear.margin);
    e.j["total"] = min_margin;
    e.j["details"] = {{"trials", count},
                      {"limit", limit},
                      {"bilinear_reading_holds", worked.bilinear.holds}};
    e.verdict(min_margin >= limit);
    e.diagnostics(
        "eigenframe form over sorted zero-sum triples with 3 a1 a2 a3 <= 0; the bilinear reading "
        "(7/2)|T|^2|v|^2 - 6<T^2 v,v> is negative at diag(-2,1,1), e1 and is recorded, not asserted");
    out.push_back(e.j);
  }
  return out;
}

std::vector<Json> lemma31_checks(const CheckSettings& cfg) {
  std::vector<Json> out;
  const auto& tol = cfg.tolerances;
  for (int n = cfg.n_min; n <= cfg.n_max; ++n) {
    Entry e("lemma31:n=" + std::to_string(n), "lemma31", "", tol);
    Variates rng(cfg.seed + static_cast<std::uint64_t>(n));
    const double c = tensor::cube_sum_bound_constant(n);
    double min_margin = std::numeric_limits<double>::infinity();
    double min_normalized = min_margin;
    double worst_excess = -min_margin;
    std::vector<double> a(static_cast<std::size_t>(n));
    for (int s = 0; s < cfg.samples; ++s) {
      double mean = 0.0;
      for (double& x : a) {
        x = rng.normal();
        mean += x;
      }
      mean /= n;
      double sq = 0.0, cube = 0.0;
      for (double& x : a) {
        x -= mean;
        sq += x * x;
        cube += x * x * x;
      }
      const double bound = c * std::pow(sq, 1.5);
      worst_excess = std::max(worst_excess, std::abs(cube) - bound);
      min_margin = std::min(min_margin, bound - std::abs(cube));
      if (sq > 0.0) min_normalized = std::min(min_normalized, c - std::abs(cube) / std::pow(sq, 1.5));
    }
    double extremal_gap = 0.0;
    for (int sign : {-1, 1}) {
      const auto v = tensor::cube_sum_extremal(n, sign, 1.0);
      extremal_gap = std::max(extremal_gap, std::abs(tensor::cube_sum_check(v).margin));
    }
    const double bound_limit = 1e-9 * tol.scale, equality_limit = 1e-12 * tol.scale;
    bool ok = worst_excess <= bound_limit && extremal_gap <= equality_limit;
    e.term("constant", c);
    e.term("min margin", min_margin);
    e.term("min normalized margin", min_normalized);
    e.term("extremal equality gap", extremal_gap);
    e.j["total"] = min_margin;
    Json details = {{"n", n}, {"trials", cfg.samples}, {"max excess over bound", worst_excess}};
    if (n == 3) {
      const double gap = std::abs(c - 1.0 / std::sqrt(6.0));
      details["deviation from 1/sqrt(6)"] = gap;
      ok = ok && gap <= 4.0 * std::numeric_limits<double>::epsilon();
    }
    e.j["details"] = details;
    e.verdict(ok);
    e.diagnostics("|sum a^3| <= (n-2)/sqrt(n(n-1)) (sum a^2)^(3/2) over random zero-sum vectors");
    out.push_back(e.j);
  }
  return out;
}

struct SamplePointData {
  geometry::SamplePoint where;
  cpe::TriplePoint point;
};

std::vector<SamplePointData> evaluate_samples(const cpe::CPETriple& t, const CheckSettings& cfg, int jet_order) {
  std::vector<SamplePointData> out;
  for (auto& sp : geometry::interior_samples(*t.manifold, cfg.samples, cfg.seed)) {
    cpe::TriplePoint p = cpe::evaluate_point(t, sp.chart, sp.x, jet_order);
    out.push_back({std::move(sp), std::move(p)});
  }
  return out;
}

double max_abs(const Vector& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

std::vector<Json> curvature_checks(const std::string& name, const cpe::CPETriple& t,
                                   const std::vector<SamplePointData>& pts, const CheckSettings& cfg) {
  std::vector<Json> out;
  const auto& tol = cfg.tolerances;
  const int n = t.manifold->dim;
  const double point_limit = tol.point();
  const double weyl_limit = 1e-9 * tol.scale;

  {
    Entry e("curvature:ricci-identity", "curvature", name, tol);
    Worst w;
    for (const auto& p : pts) w.add(curvature::ricci_identity_residual(p.point.jet, p.point.curvature).max_abs());
    e.term("max |f_ijk - f_ikj - f_m R_mijk|", w.value);
    e.j["total"] = w.value;
    e.j["details"] = {{"samples", pts.size()}, {"limit", point_limit}};
    e.verdict(w.value <= point_limit);
    e.diagnostics("commutator of third covariant derivatives of the potential");
    out.push_back(e.j);
  }
  {
    Entry e("curvature:second-ricci-identity", "curvature", name, tol);
    Worst w;
    bool available = true;
    for (const auto& p : pts) {
      const auto r = curvature::second_ricci_identity_residual(p.point.jet, p.point.curvature);
      if (!r) {
        available = false;
        break;
      }
      w.add(r->max_abs());
    }
    if (available) {
      e.term("max |f_ijkl - f_ijlk - f_mj R_mikl - f_mi R_mjkl|", w.value);
      e.j["total"] = w.value;
      e.j["details"] = {{"samples", pts.size()}, {"limit", point_limit}};
      e.verdict(w.value <= point_limit);
      e.diagnostics("commutator of fourth covariant derivatives of the potential");
    } else {
      e.diagnostics("potential carries no fourth derivatives");
    }
    out.push_back(e.j);
  }
  {
    Entry e("curvature:bianchi", "curvature", name, tol);
    Worst ric, trl;
    for (const auto& p : pts) {
      const auto b = curvature::contracted_bianchi_residual(p.point.curvature);
      ric.add(max_abs(b.ricci_form));
      trl.add(max_abs(b.traceless_form));
    }
    e.term("max |div Ric - dR/2|", ric.value);
    e.term("max |div Rring - (n-2)/(2n) dR|", trl.value);
    e.j["total"] = std::max(ric.value, trl.value);
    e.j["details"] = {{"samples", pts.size()}, {"limit", point_limit}};
    e.verdict(ric.value <= point_limit && trl.value <= point_limit);
    e.diagnostics("contracted second Bianchi identity");
    out.push_back(e.j);
  }
  {
    Entry e("curvature:weyl", "curvature", name, tol);
    if (n < 3) {
      e.diagnostics("the Weyl decomposition needs n >= 3; n = " + std::to_string(n));
    } else {
      Worst decomposition, weyl, three;
      for (const auto& p : pts) {
        decomposition.add(curvature::weyl_decomposition_residual(p.point.curvature).max_abs());
        weyl.add(p.point.curvature.weyl.max_abs());
        if (n == 3) three.add(curvature::three_dim_decomposition_residual(p.point.curvature).max_abs());
      }
      e.term("max |Rm - W - Ricci block|", decomposition.value);
      e.term("max |W|", weyl.value);
      bool ok = decomposition.value <= weyl_limit;
      if (n == 3) {
        e.term("max |Rm - Ricci block|", three.value);
        ok = ok && weyl.value <= weyl_limit && three.value <= weyl_limit;
      }
      e.j["total"] = n == 3 ? std::max({decomposition.value, weyl.value, three.value}) : decomposition.value;
      e.j["details"] = {{"samples", pts.size()}, {"limit", weyl_limit}};
      e.verdict(ok);
      e.diagnostics(n == 3 ? "Weyl tensor vanishes and the Ricci tensor determines Rm"
                           : "curvature decomposition into Weyl and Ricci parts");
    }
    out.push_back(e.j);
  }
  {
    Entry e("curvature:symmetries", "curvature", name, tol);
    Worst anti, pair, first, wtrace, ttrace;
    for (const auto& p : pts) {
      const auto s = curvature::symmetry_residuals(p.point.curvature);
      anti.add(s.antisymmetry);
      pair.add(s.pair_symmetry);
      first.add(s.first_bianchi);
      wtrace.add(s.weyl_trace);
      ttrace.add(s.traceless_trace);
    }
    e.term("antisymmetry", anti.value);
    e.term("pair symmetry", pair.value);
    e.term("first Bianchi", first.value);
    e.term("Weyl traces", wtrace.value);
    e.term("traceless Ricci trace", ttrace.value);
    const double worst = std::max({anti.value, pair.value, first.value, wtrace.value, ttrace.value});
    e.j["total"] = worst;
    e.j["details"] = {{"samples", pts.size()}, {"limit", weyl_limit}};
    e.verdict(worst <= weyl_limit);
    e.diagnostics("algebraic symmetries of Rm and trace conditions");
    out.push_back(e.j);
  }
  return out;
}

std::vector<Json> cpe_checks(const std::string& name, const cpe::CPETriple& t, const std::vector<SamplePointData>& pts,
                             const CheckSettings& cfg) {
  std::vector<Json> out;
  const auto& tol = cfg.tolerances;
  const int n = t.manifold->dim;
  const double R = t.scalar_curvature;

  {
    Entry e("cpe:trace-consistency", "cpe", name, tol);
    Worst w;
    for (const auto& p : pts) {
      const SymTensor2 E = cpe::cpe_residual(p.point.curvature, p.point.jet, R);
      const double tr = cpe::trace_residual(p.point.jet, R, n);
      w.add((E.trace() - tr) / (1.0 + std::abs(tr) + E.norm()));
    }
    const double limit = 1e-12 * tol.scale;
    e.term("max relative |tr E - (Delta f + R f/(n-1))|", w.value);
    e.j["total"] = w.value;
    e.j["details"] = {{"samples", pts.size()}, {"limit", limit}};
    e.verdict(w.value <= limit);
    e.diagnostics("trace of the CPE residual equals the trace equation residual");
    out.push_back(e.j);
  }
  {
    Entry e("cpe:operator-consistency", "cpe", name, tol);
    Worst w;
    for (const auto& p : pts) {
      const auto op = cpe::static_operator(p.point.curvature, p.point.jet);
      const double Rp = p.point.curvature.scalar;
      SymTensor2 E = cpe::cpe_residual(p.point.curvature, p.point.jet, Rp);
      const double tr = cpe::trace_residual(p.point.jet, Rp, n);
      for (int a = 0; a < n; ++a) E.set(a, a, E(a, a) - tr);
      w.add((op.minus_traceless - E).max_abs() / (1.0 + op.value.norm() + E.norm()));
    }
    const double limit = 1e-12 * tol.scale;
    e.term("max relative |(static operator - Rring) - (E - trace residual g)|", w.value);
    e.j["total"] = w.value;
    e.j["details"] = {{"samples", pts.size()}, {"limit", limit}};
    e.verdict(w.value <= limit);
    e.diagnostics("Euler-Lagrange form minus Rring against the rewritten equation, with pointwise R");
    out.push_back(e.j);
  }
  {
    Entry e("cpe:third-derivative", "cpe", name, tol);
    if (t.exactness == cpe::Exactness::exact_cpe) {
      Worst w;
      for (const auto& p : pts) w.add(cpe::third_derivative_residual(p.point.curvature, p.point.jet, R).max_abs());
      e.term("max |f_ijk - (1+f) Rring_ij,k - (Rring_ij - R/(n(n-1)) g_ij) f_k|", w.value);
      e.j["total"] = w.value;
      e.j["details"] = {{"samples", pts.size()}, {"limit", tol.point()}};
      e.verdict(w.value <= tol.point());
      e.diagnostics("covariant derivative of the CPE on exact data");
    } else {
      e.diagnostics("triple is " + cpe::to_string(t.exactness) + "; the differentiated equation needs exact data");
    }
    out.push_back(e.j);
  }
  {
    Entry e("cpe:besse", "cpe", name, tol);
    if (t.exactness == cpe::Exactness::non_solution) {
      e.diagnostics("triple is non_solution; the spectral condition concerns solutions");
    } else if (!t.manifold->analytic_spectrum) {
      e.diagnostics("manifold carries no analytic spectrum");
    } else {
      const auto s = cpe::besse_spectral_check(*t.manifold, R, n);
      e.term("R/(n-1)", s.target);
      e.term("nearest eigenvalue", s.nearest);
      e.term("gap", s.gap);
      e.j["total"] = s.gap;
      e.j["details"] = {{"multiplicity", s.multiplicity}, {"limit", cpe::kSpectralTolerance}};
      e.verdict(s.in_spectrum);
      e.diagnostics(s.in_spectrum ? "R/(n-1) is a Laplace eigenvalue" : "R/(n-1) is not in the analytic spectrum");
    }
    out.push_back(e.j);
  }
  return out;
}

Json identity_entry(const std::string& name, const identities::IdentityReport& r, const identities::Tolerances& tol) {
  Entry e(r.identity.id(), "identity", name, tol);
  for (const auto& [k, v] : r.terms) e.term(k, v);
  e.j["total"] = r.total;
  e.j["divergence_check"] = r.divergence.integral;
  e.j["cpe_residual_l2"] = r.cpe_residual_l2;
  e.verdict(r.verdict);
  e.diagnostics(r.diagnostics);
  Json d;
  d["description"] = r.identity.description();
  d["volume"] = r.volume;
  d["exactness"] = cpe::to_string(r.exactness);
  d["term_scale"] = r.term_scale;
  d["divergence"] = {{"integral", r.divergence.integral},
                     {"scale", r.divergence.scale},
                     {"relative", r.divergence.relative},
                     {"max_field", r.divergence.max_field},
                     {"max_derivative", r.divergence.max_derivative}};
  d["pointwise_divergence_gap"] = r.pointwise_divergence_gap ? Json(*r.pointwise_divergence_gap) : Json(nullptr);
  e.j["details"] = d;
  return e.j;
}

Json hypothesis_json(const cpe::HypothesisMap& h) {
  Json j = Json::object();
  for (const auto& [key, entry] : h) {
    j[key] = {{"quantity", entry.quantity},
              {"max_pointwise", entry.summary.max_pointwise},
              {"l2_integral", entry.summary.l2_integral},
              {"holds", entry.hypothesis_holds},
              {"dimension_applies", entry.dimension_applies}};
  }
  return j;
}

Json error_entry(const std::string& id, const std::string& group, const std::string& name,
                 const identities::Tolerances& tol, const std::exception& ex) {
  Entry e(id, group, name, tol);
  e.verdict(CheckVerdict::fail);
  e.diagnostics(std::string("evaluation failed: ") + ex.what());
  return e.j;
}

std::vector<int> convergence_orders(int order) {
  std::vector<int> out;
  for (int o : {8, 16})
    if (o < order) out.push_back(o);
  out.push_back(order);
  return out;
}

}  // namespace

std::vector<Json> run_general_checks(const CheckSelection& s, const CheckSettings& settings) {
  std::vector<Json> out;
  if (s.matrix) {
    try {
      for (auto& j : matrix_checks(settings)) out.push_back(std::move(j));
    } catch (const std::exception& ex) {
      out.push_back(error_entry("matrix:error", "matrix", "", settings.tolerances, ex));
    }
  }
  if (s.lemma31) {
    try {
      for (auto& j : lemma31_checks(settings)) out.push_back(std::move(j));
    } catch (const std::exception& ex) {
      out.push_back(error_entry("lemma31:error", "lemma31", "", settings.tolerances, ex));
    }
  }
  return out;
}

CaseResult run_case_checks(const std::string& case_name, const BuiltCase& built, const CheckSelection& s,
                           const CheckSettings& settings) {
  CaseResult out;
  const auto& tol = settings.tolerances;
  const cpe::CPETriple t = cpe::make_triple(built.manifold, built.potential, settings.samples, settings.seed);
  const int n = t.manifold->dim;
  out.exactness = {{"class", cpe::to_string(t.exactness)},
                   {"scalar_curvature", t.scalar_curvature},
                   {"max_cpe_residual", t.max_cpe_residual},
                   {"max_trace_residual", t.max_trace_residual},
                   {"scalar_spread", t.scalar_spread},
                   {"samples", t.samples}};
  out.hypothesis = nullptr;

  identities::IdentityOptions opts;
  opts.samples = settings.samples;
  opts.seed = settings.seed;
  opts.tolerances = tol;
  opts.jobs = settings.jobs;

  if (s.curvature || s.cpe) {
    try {
      const int jet_order = std::min(built.potential.max_order, geometry::kMaxJetOrder);
      const auto pts = evaluate_samples(t, settings, std::max(3, jet_order));
      if (s.curvature)
        for (auto& j : curvature_checks(case_name, t, pts, settings)) out.checks.push_back(std::move(j));
      if (s.cpe)
        for (auto& j : cpe_checks(case_name, t, pts, settings)) out.checks.push_back(std::move(j));
    } catch (const std::exception& ex) {
      out.checks.push_back(error_entry("pointwise:error", "curvature", case_name, tol, ex));
    }
  }

  // One identity sweep serves the identity checks, the theorem audits and the hypothesis block.
  std::vector<IdentityCase> sweep_cases;
  for (const auto& c : s.identities)
    if (c.applies_to_dim(n)) sweep_cases.push_back(c);
  if (s.theorems && n >= 3)
    for (const auto& c : identities::theorem_cases(n))
      if (std::find(sweep_cases.begin(), sweep_cases.end(), c) == sweep_cases.end()) sweep_cases.push_back(c);
  const bool need_sweep =
      !sweep_cases.empty() || (s.cpe && t.exactness != cpe::Exactness::non_solution);

  auto mismatch_entry = [&](const IdentityCase& c) {
    Entry e(c.id(), "identity", case_name, tol);
    e.diagnostics(c.required_dim() == 0 ? "identity needs n >= 3; n = " + std::to_string(n)
                                        : "identity is stated for n = " + std::to_string(c.required_dim()) +
                                              "; n = " + std::to_string(n));
    return e.j;
  };

  if (need_sweep) {
    try {
      const auto rule = geometry::build_rule(*t.manifold, settings.order);
      identities::IdentityBatch batch = identities::check_identities(sweep_cases, t, rule, opts);
      for (const auto& c : s.identities) {
        if (!c.applies_to_dim(n)) {
          out.checks.push_back(mismatch_entry(c));
          continue;
        }
        for (const auto& r : batch.reports)
          if (r.identity == c) out.checks.push_back(identity_entry(case_name, r, tol));
      }
      if (t.exactness != cpe::Exactness::non_solution) {
        out.hypothesis = hypothesis_json(
            cpe::hypothesis_checks_from(t, batch.weighted_integrals, settings.samples, settings.seed));
      }
      if (s.theorems && n >= 3) {
        const auto pipeline = identities::theorem_pipeline_from(t, std::move(batch), opts);
        for (const auto& a : pipeline.audits) {
          Entry e("theorem:" + a.theorem, "theorems", case_name, tol);
          for (const auto& [k, v] : a.quantities) e.term(k, v);
          e.j["details"] = {{"hypothesis_holds", a.hypothesis_holds},
                            {"identity_consistent", a.identity_consistent},
                            {"forces_nonpositive", a.forces_nonpositive},
                            {"traceless_vanishes", a.traceless_vanishes},
                            {"max_traceless", a.max_traceless},
                            {"max_traceless_nodes", a.max_traceless_nodes}};
          e.j["total"] = a.max_traceless;
          e.verdict(a.verdict);
          e.diagnostics(a.diagnostics);
          out.checks.push_back(e.j);
        }
      }
    } catch (const std::exception& ex) {
      out.checks.push_back(error_entry("identity:error", "identity", case_name, tol, ex));
    }
  } else {
    for (const auto& c : s.identities) out.checks.push_back(mismatch_entry(c));
  }
  if (s.theorems && n < 3) {
    Entry e("theorem:all", "theorems", case_name, tol);
    e.diagnostics("theorem audits need n >= 3; n = " + std::to_string(n));
    out.checks.push_back(e.j);
  }

  if (s.divergence) {
    try {
      const auto studies = identities::divergence_convergence(t, identities::catalog_fields(n),
                                                              convergence_orders(settings.order), tol, settings.jobs);
      for (const auto& st : studies) {
        Entry e("divergence:" + st.field, "divergence", case_name, tol);
        Json per_order = Json::array();
        for (std::size_t i = 0; i < st.orders.size(); ++i) {
          e.term("relative error at order " + std::to_string(st.orders[i]), st.checks[i].relative);
          per_order.push_back({{"order", st.orders[i]},
                               {"integral", st.checks[i].integral},
                               {"scale", st.checks[i].scale},
                               {"relative", st.checks[i].relative}});
        }
        e.j["total"] = st.checks.back().relative;
        e.j["divergence_check"] = st.checks.back().integral;
        e.j["details"] = {{"orders", per_order}, {"monotone", st.monotone}, {"floor", identities::kConvergenceFloor}};
        e.verdict(st.monotone && st.final_within_tolerance);
        std::string diag = "integral of div V, scale-relative";
        if (!st.final_within_tolerance) diag += "; exceeds " + format(tol.quad()) + " at the final order";
        if (!st.monotone) diag += "; error does not decrease with order";
        e.diagnostics(diag);
        out.checks.push_back(e.j);
      }
    } catch (const std::exception& ex) {
      out.checks.push_back(error_entry("divergence:error", "divergence", case_name, tol, ex));
    }
  }
  return out;
}

}  // namespace cpev::cli
