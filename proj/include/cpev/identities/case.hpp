#pragma once

#include <string>
#include <vector>

namespace cpev::identities {

enum class IdentityKind { prop21, prop22, prop23, prop31, prop32, id314, id315, id316 };

struct IdentityCase {
  IdentityKind kind = IdentityKind::prop21;
  int k = 0;  // weight exponent, prop21 only

  std::string id() const;          // "prop21:3", "prop22", ...
  std::string description() const; // the integrand, in words
  // 0 for any n >= 3, otherwise the required dimension.
  int required_dim() const;
  bool applies_to_dim(int n) const;

  friend bool operator==(const IdentityCase&, const IdentityCase&) = default;
};

inline constexpr int kDefaultMaxWeight = 4;

// Accepts "prop21:<k>" (k >= 0) and the plain ids; InputError otherwise.
IdentityCase parse_identity_case(const std::string& id);

// prop21:0..max_k followed by the remaining ids in catalog order.
std::vector<IdentityCase> all_identity_cases(int max_k = kDefaultMaxWeight);

}  // namespace cpev::identities
