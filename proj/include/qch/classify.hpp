#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qch::classify {

// Descriptor grammar (whitespace-insensitive):
//   descriptor := factor ("x" factor)*
//   factor     := base ("^" exponent)?
//   base       := "R" | "T" | "Z" | "Z" digits | "J" digits | "(" descriptor ")"
//   exponent   := digits | "w" | "k"
// "Z"digits is a cyclic group, "J"digits the p-adic integers (prime only),
// "(...)" a finite product of cyclic groups (cyclic factors only), "w" and
// "k" are the infinite exponents omega and kappa. Infinite exponents on R
// and Z are rejected: those powers are not locally compact.
enum class BaseKind { real_line, circle, discrete_integers, cyclic, padic, finite_product };

enum class ExpKind { finite, omega, kappa };

struct Factor {
  BaseKind base{BaseKind::circle};
  int64_t m{0};                 // modulus for cyclic, prime for padic
  std::vector<int64_t> moduli;  // finite_product only
  ExpKind exp_kind{ExpKind::finite};
  int64_t exp{1};  // finite exponents only, >= 1
};

struct GroupDescriptor {
  std::vector<Factor> factors;
};

struct ParseError : std::invalid_argument {
  size_t position;
  ParseError(const std::string& what, size_t pos)
      : std::invalid_argument(what), position(pos) {}
};

GroupDescriptor parse_descriptor(const std::string& text);
std::string to_string(const GroupDescriptor& d);

// Whether the q-torsion subgroup G[q] is open, per factor: an infinite power
// needs its base entirely q-torsion; a finite power needs the base's
// q-torsion open, which holds exactly for discrete bases.
bool torsion_open(const GroupDescriptor& d, int64_t q);

struct Justification {
  std::string condition;  // "ii-2", "ii-3", "iv", "v", "catalog"
  std::string reason;
};

struct Verdict {
  bool admits;  // a non-trivial quasi-convex null sequence exists
  std::vector<Justification> justification;
};

Verdict verdict(const GroupDescriptor& d);

bool is_compact(const GroupDescriptor& d);

// For compact groups the open-torsion test, the product shape Z_q^kappa x F,
// and finiteness of qG must agree.
struct CrossCheck {
  bool two_torsion_open{false};
  bool three_torsion_open{false};
  bool shape_2{false};  // matches Z_2^kappa x finite
  bool shape_3{false};
  bool two_g_finite{false};
  bool three_g_finite{false};
  bool agree{false};
};

std::optional<CrossCheck> compact_conditions(const GroupDescriptor& d);

}  // namespace qch::classify
