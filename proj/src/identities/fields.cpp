#include "cpev/identities/fields.hpp"

#include "cpev/curvature/divergence.hpp"
#include "cpev/errors.hpp"

namespace cpev::identities {

namespace {

FrameScalar one_plus_f(const FieldBasis& b) { return curvature::constant_scalar(b.potential.dim, 1.0) + b.potential; }

FrameVector zk(const FieldBasis& b, int k) {
  if (k < 0) throw InputError("weight exponent must be nonnegative");
  return curvature::pow(one_plus_f(b), k) * (b.traceless * b.gradient);
}

FrameVector fz(const FieldBasis& b) { return b.potential * (b.traceless * b.gradient); }

FrameVector double_field(const FieldBasis& b) {
  const FrameMatrix bar = one_plus_f(b) * b.traceless;
  return b.traceless * (bar * b.gradient);
}

FrameVector normed_gradient(const FieldBasis& b) {
  return (curvature::squared_norm(b.traceless) * one_plus_f(b)) * b.gradient;
}

FrameVector cubic(const FieldBasis& b, CubicField which) {
  if (b.traceless.dim != 3) throw DomainError("X, Y, Z fields are defined for n = 3");
  FrameVector v = one_plus_f(b) * (b.traceless * b.gradient);
  const int extra = which == CubicField::X ? 2 : which == CubicField::Y ? 3 : 4;
  for (int i = 0; i < extra; ++i) v = b.traceless * v;
  return v;
}

}  // namespace

FieldBasis field_basis(const cpe::TriplePoint& p) {
  return FieldBasis{curvature::frame_traceless_ricci(p.curvature), curvature::frame_gradient(p.jet),
                    curvature::frame_scalar(p.jet)};
}

FrameVector field_Zk(const cpe::TriplePoint& p, int k) { return zk(field_basis(p), k); }
FrameVector field_fZ(const cpe::TriplePoint& p) { return fz(field_basis(p)); }
FrameVector field_double(const cpe::TriplePoint& p) { return double_field(field_basis(p)); }
FrameVector field_normed_gradient(const cpe::TriplePoint& p) { return normed_gradient(field_basis(p)); }
FrameVector fields_XYZ(const cpe::TriplePoint& p, CubicField which) {
  if (p.curvature.dim != 3) throw DomainError("X, Y, Z fields are defined for n = 3");
  return cubic(field_basis(p), which);
}

FrameVector identity_field(const IdentityCase& c, const FieldBasis& b) {
  switch (c.kind) {
    case IdentityKind::prop21: return zk(b, c.k);
    case IdentityKind::prop22: return fz(b);
    case IdentityKind::prop23: return zk(b, 0);
    case IdentityKind::prop31: return double_field(b);
    case IdentityKind::prop32: return normed_gradient(b);
    case IdentityKind::id314: return cubic(b, CubicField::X);
    case IdentityKind::id315: return cubic(b, CubicField::Y);
    case IdentityKind::id316: return cubic(b, CubicField::Z);
  }
  throw InputError("unknown identity kind");
}

FrameVector identity_field(const IdentityCase& c, const cpe::TriplePoint& p) { return identity_field(c, field_basis(p)); }

std::vector<NamedField> catalog_fields(int n) {
  std::vector<NamedField> out;
  out.push_back({"grad f", [](const FieldBasis& b) { return b.gradient; }});
  out.push_back({"f^2 grad f", [](const FieldBasis& b) { return (b.potential * b.potential) * b.gradient; }});
  for (const IdentityCase& c : all_identity_cases()) {
    if (!c.applies_to_dim(n) || c.kind == IdentityKind::prop23) continue;  // prop23 shares the prop21:0 field
    out.push_back({"field:" + c.id(), [c](const FieldBasis& b) { return identity_field(c, b); }});
  }
  return out;
}

}  // namespace cpev::identities
