#pragma once

#include "qch/balanced.hpp"
#include "qch/separation.hpp"
#include "qch/sequence_spec.hpp"

#include <optional>
#include <vector>

namespace qch::torus {

// The null set K carved out by a spec: {0} together with +-p^{-(a_n+1)}.
struct KPoint {
  int64_t index;  // position n in the sequence
  int sign;       // +1 or -1
  CirclePoint value;
};

// One entry per (index, sign); coinciding values (p = 2, a_n = 0) deduplicated.
std::vector<KPoint> k_points(const SequenceSpec& spec);

// in: yes, out: no, unknown only in prefix mode past the listed range.
SeqMembership point_in_K(const SequenceSpec& spec, const CirclePoint& x);

// Character x -> n*x of the circle.
struct IntCharacter {
  Int n;
};

// Decides n*K <= T_+ exactly: indices with p^{a_k+1} >= 4|n| land in T_+
// automatically, the finitely many others are evaluated. Prefix mode throws
// PrefixTooShort when an unlisted tail value could matter.
bool char_in_polar(const IntCharacter& chi, const SequenceSpec& spec);

// Shape of {m*p^k : k admissible} inside the polar, for 1 <= m <= p-1:
// every k if m/p lands in T_+, otherwise every k outside the sequence.
enum class PolarFamilyKind { all, all_except_a };
PolarFamilyKind polar_family(const SequenceSpec& spec, const Int& m);

// True iff the balanced expansion of x is supported on positions a_n + 1
// with digits in {-1, 0, 1}. Requires odd p and a p-power denominator.
bool digit_filter(const SequenceSpec& spec, const CirclePoint& x);

// Characters drawn from the separation constructions, each checked to lie in
// the polar before being returned. Requires p >= 5.
std::vector<IntCharacter> proof_guided_separators(const SequenceSpec& spec,
                                                  const CirclePoint& x);

struct SeparationCertificate {
  CirclePoint point;
  IntCharacter chi;
  CirclePoint value;  // chi at point, outside T_+
  SepCase tag{SepCase::exhaustive};
  Int m{0};  // multiplier used by the construction (0 when not applicable)
};

struct SeparateResult {
  bool separated{false};
  std::optional<SeparationCertificate> certificate;
  Int budget{0};  // |n| range covered when not separated
};

// Finds a polar character with chi(x) outside T_+. Stages: digit-filter
// violations give single-index separators, then the two-index constructions,
// then an exhaustive scan over 0 < n <= budget (K and T_+ are symmetric, so
// the scan covers |n| <= budget). Throws if x lies in K.
SeparateResult separate(const SequenceSpec& spec, const CirclePoint& x, const Int& budget);

inline Int default_budget(const SequenceSpec& spec, int64_t depth) {
  return 4 * pow_int(spec.p, depth + 1);
}

struct PointOutcome {
  CirclePoint point;
  SeparateResult result;
};

struct VerificationReport {
  SequenceSpec spec;
  int64_t depth{0};
  Int budget{0};
  int64_t points_swept{0};
  int64_t members_skipped{0};
  std::vector<PointOutcome> outcomes;  // one per non-member point
  bool all_separated{false};
};

// Sweeps every x with denominator dividing p^depth that lies outside K.
// Points are searched independently (fanned out over workers when asked);
// the report always lists outcomes in point order.
VerificationReport verify_quasi_convex(const SequenceSpec& spec, int64_t depth,
                                       const Int& budget, int workers = 1);

struct ProbeReport {
  SequenceSpec spec;
  int64_t depth{0};
  Int budget{0};
  int64_t points_probed{0};
  int64_t separated_count{0};  // separations refute density at this budget
  std::vector<PointOutcome> separated;
};

// Evidence probe for p in {2, 3}: expects every non-member to survive the
// budget unseparated. Never a proof of density.
ProbeReport density_probe(const SequenceSpec& spec, int64_t depth, const Int& budget);

}  // namespace qch::torus
