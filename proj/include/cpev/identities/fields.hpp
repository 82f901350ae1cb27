#pragma once

#include <functional>
#include <string>
#include <vector>

#include "cpev/cpe/operators.hpp"
#include "cpev/curvature/frame_dual.hpp"
#include "cpev/identities/case.hpp"

namespace cpev::identities {

using curvature::FrameMatrix;
using curvature::FrameScalar;
using curvature::FrameVector;

// Frame-level ingredients shared by every field at one point.
struct FieldBasis {
  FrameMatrix traceless;  // Rring
  FrameVector gradient;   // v
  FrameScalar potential;  // f
};

FieldBasis field_basis(const cpe::TriplePoint& p);

// Frame components, with covariant derivatives, of the vector fields whose
// divergences produce the integral identities. Rring = traceless Ricci,
// F = 1 + f, v = grad f.
FrameVector field_Zk(const cpe::TriplePoint& p, int k);   // F^k Rring v
FrameVector field_fZ(const cpe::TriplePoint& p);          // f Rring v
FrameVector field_double(const cpe::TriplePoint& p);      // Rring (F Rring) v
FrameVector field_normed_gradient(const cpe::TriplePoint& p);  // |Rring|^2 F v

enum class CubicField { X, Y, Z };
// n = 3 only: F Rring^3 v, F Rring^4 v, F Rring^5 v (DomainError otherwise).
FrameVector fields_XYZ(const cpe::TriplePoint& p, CubicField which);

// Field whose divergence theorem accompanies `c`.
FrameVector identity_field(const IdentityCase& c, const cpe::TriplePoint& p);
FrameVector identity_field(const IdentityCase& c, const FieldBasis& b);

// Vector fields used for divergence-theorem checks on a triple of dimension
// n: grad f, f^2 grad f, and every identity field that applies in dimension n.
struct NamedField {
  std::string name;
  std::function<FrameVector(const FieldBasis&)> evaluate;
};
std::vector<NamedField> catalog_fields(int n);

}  // namespace cpev::identities
