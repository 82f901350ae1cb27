#include "cpev/identities/case.hpp"

#include <charconv>

#include "cpev/errors.hpp"

namespace cpev::identities {

std::string IdentityCase::id() const {
  switch (kind) {
    case IdentityKind::prop21: return "prop21:" + std::to_string(k);
    case IdentityKind::prop22: return "prop22";
    case IdentityKind::prop23: return "prop23";
    case IdentityKind::prop31: return "prop31";
    case IdentityKind::prop32: return "prop32";
    case IdentityKind::id314: return "id314";
    case IdentityKind::id315: return "id315";
    case IdentityKind::id316: return "id316";
  }
  return "";
}

std::string IdentityCase::description() const {
  switch (kind) {
    case IdentityKind::prop21:
      return "int k(1+f)^(k-1) Rring(grad f, grad f) + (1+f)^(k+1) |Rring|^2 = 0 (divergence of (1+f)^k Rring(grad f))";
    case IdentityKind::prop22:
      return "int Rring(grad f, grad f) + (1+f) f |Rring|^2 = 0 (divergence of f Rring(grad f))";
    case IdentityKind::prop23: return "int (1+f) |Rring|^2 = 0 (first weighted identity at k = 1 minus prop22)";
    case IdentityKind::prop31:
      return "n = 3: int (3/2)|Rring|^2|grad f|^2 + (R/12)(1+f)^2|Rring|^2 - 2 Rring^2(grad f, grad f) + (1+f)^2 tr Rring^3 = 0";
    case IdentityKind::prop32:
      return "n = 3: int (7/2)|Rring|^2|grad f|^2 + (1+f)^2|nabla Rring|^2 + (5R/4)(1+f)^2|Rring|^2"
             " - 6 Rring^2(grad f, grad f) + 6 (1+f)^2 tr Rring^3 = 0";
    case IdentityKind::id314:
      return "n = 3: int (5/2)|Rring|^2 Rring(grad f, grad f) - 5 Rring^3(grad f, grad f) + (5/3) tr Rring^3 |grad f|^2 = 0";
    case IdentityKind::id315:
      return "n = 3: int 4|Rring|^2 Rring^2(grad f, grad f) - 8 Rring^4(grad f, grad f)"
             " + (8/3) tr Rring^3 Rring(grad f, grad f) = 0";
    case IdentityKind::id316:
      return "n = 3: int (11/2)|Rring|^2 Rring^3(grad f, grad f) - 11 Rring^5(grad f, grad f)"
             " + (11/3) tr Rring^3 Rring^2(grad f, grad f) = 0";
  }
  return "";
}

int IdentityCase::required_dim() const {
  switch (kind) {
    case IdentityKind::prop21:
    case IdentityKind::prop22:
    case IdentityKind::prop23: return 0;
    default: return 3;
  }
}

bool IdentityCase::applies_to_dim(int n) const {
  const int req = required_dim();
  return req == 0 ? n >= 3 : n == req;
}

IdentityCase parse_identity_case(const std::string& id) {
  const std::string weighted = "prop21:";
  if (id.rfind(weighted, 0) == 0) {
    const std::string digits = id.substr(weighted.size());
    int k = -1;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
    if (digits.empty() || ec != std::errc() || ptr != digits.data() + digits.size() || k < 0)
      throw InputError("identity '" + id + "': weight exponent must be a nonnegative integer");
    return {IdentityKind::prop21, k};
  }
  if (id == "prop21") throw InputError("identity 'prop21' needs a weight exponent, e.g. prop21:0");
  if (id == "prop22") return {IdentityKind::prop22, 0};
  if (id == "prop23") return {IdentityKind::prop23, 0};
  if (id == "prop31") return {IdentityKind::prop31, 0};
  if (id == "prop32") return {IdentityKind::prop32, 0};
  if (id == "id314") return {IdentityKind::id314, 0};
  if (id == "id315") return {IdentityKind::id315, 0};
  if (id == "id316") return {IdentityKind::id316, 0};
  throw InputError("unknown identity id '" + id + "'");
}

std::vector<IdentityCase> all_identity_cases(int max_k) {
  std::vector<IdentityCase> out;
  for (int k = 0; k <= max_k; ++k) out.push_back({IdentityKind::prop21, k});
  for (auto kind : {IdentityKind::prop22, IdentityKind::prop23, IdentityKind::prop31, IdentityKind::prop32,
                    IdentityKind::id314, IdentityKind::id315, IdentityKind::id316})
    out.push_back({kind, 0});
  return out;
}

}  // namespace cpev::identities
