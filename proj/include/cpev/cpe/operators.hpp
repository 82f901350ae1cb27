#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "cpev/cpe/triple.hpp"
#include "cpev/curvature/covariant.hpp"
#include "cpev/curvature/curvature.hpp"
#include "cpev/tensor/sym_tensor.hpp"

namespace cpev::cpe {

using tensor::SymTensor2;

// Curvature and potential derivatives at one point of a triple.
struct TriplePoint {
  curvature::CurvaturePointData curvature;
  curvature::CovariantJet jet;
};

// jet_order 2 gives f, f_i, f_ij; 3 adds f_ijk; 4 adds f_ijkl.
TriplePoint evaluate_point(const CPETriple& t, int chart, std::span<const double> x, int jet_order,
                           curvature::CurvatureDetail detail = curvature::CurvatureDetail::full);

struct StaticOperatorValue {
  SymTensor2 value;           // -(Delta f) g + Hess f - f Ric
  SymTensor2 minus_traceless; // value - Rring
};

// Pointwise forms; `scalar` is the R entering the equation.
StaticOperatorValue static_operator(const curvature::CurvaturePointData& c, const curvature::CovariantJet& f);
// E = Hess f - (1 + f) Rring + R/(n(n-1)) f g
SymTensor2 cpe_residual(const curvature::CurvaturePointData& c, const curvature::CovariantJet& f, double scalar);
// Delta f + R f/(n-1)
double trace_residual(const curvature::CovariantJet& f, double scalar, int n);
// f_ijk - (1+f) Rring_ij,k - (Rring_ij - R/(n(n-1)) d_ij) f_k
Rank3 third_derivative_residual(const curvature::CurvaturePointData& c, const curvature::CovariantJet& f, double scalar);

StaticOperatorValue static_operator(const CPETriple& t, int chart, std::span<const double> x);
SymTensor2 cpe_residual(const CPETriple& t, int chart, std::span<const double> x);
double trace_residual(const CPETriple& t, int chart, std::span<const double> x);
// PreconditionError unless t is exact.
Rank3 cpe_third_derivative_residual(const CPETriple& t, int chart, std::span<const double> x);

struct SpectralCheck {
  bool in_spectrum = false;
  double target = 0.0;   // R/(n-1)
  double nearest = 0.0;  // closest catalog eigenvalue
  double gap = 0.0;      // |target - nearest|
  long long multiplicity = 0;
};

inline constexpr double kSpectralTolerance = 1e-9;

// CapabilityError when the manifold carries no analytic spectrum.
SpectralCheck besse_spectral_check(const geometry::ChartedManifold& m, double scalar, int n);

struct ResidualSummary {
  double max_pointwise = 0.0;
  double l2_integral = 0.0;
};

struct HypothesisEntry {
  std::string quantity;
  ResidualSummary summary;
  bool hypothesis_holds = false;
  bool dimension_applies = true;  // the 3-dimensional conditions are still evaluated elsewhere
};

using HypothesisMap = std::map<std::string, HypothesisEntry>;

inline constexpr int kMaxWeightExponent = 4;

// Thm-style hypotheses: weighted integrals of Rring(grad f, grad f) for
// k = 0..4 plus pointwise conditions on |Rring|^2 and tr(Rring^3).
// PreconditionError for non-solutions.
HypothesisMap hypothesis_checks(const CPETriple& t, int quadrature_order, int samples, std::uint64_t seed);

// Same, reusing weighted integrals int (1+f)^{2k} Rring(grad f, grad f) already computed.
HypothesisMap hypothesis_checks_from(const CPETriple& t, const std::vector<double>& weighted_integrals, int samples,
                                     std::uint64_t seed);

}  // namespace cpev::cpe
