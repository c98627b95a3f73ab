#pragma once

#include "qch/balanced.hpp"
#include "qch/separation.hpp"
#include "qch/sequence_spec.hpp"

#include <optional>
#include <vector>

namespace qch::padic {

// Truncation of a p-adic integer to N digits: the residue mod p^N carried as
// a digit vector c_0..c_{N-1}, balanced for odd p and in {0,1} for p = 2.
struct PadicTrunc {
  int64_t p{2};
  int64_t N{0};
  std::vector<int64_t> digits;
};

void validate_trunc(const PadicTrunc& x);
PadicTrunc trunc_from_value(int64_t p, int64_t N, const Int& v);
Int trunc_value(const PadicTrunc& x);  // canonical residue in [0, p^N)
PadicTrunc parse_trunc(const std::string& literal);  // "p=5;N=4;digits=1,0,-1,0"
std::string to_string(const PadicTrunc& x);

inline bool operator==(const PadicTrunc& a, const PadicTrunc& b) {
  return a.p == b.p && a.N == b.N && a.digits == b.digits;
}

// Character of the p-adic integers with values in the Pruefer p-group:
// x -> c * x / p^(level+1) mod 1.
struct PruferCharacter {
  Int c;
  int64_t level{0};
};

PruferCharacter make_prufer(const Int& c, int64_t level, int64_t p);  // reduces c
std::string to_string(const PruferCharacter& chi, int64_t p);         // "c/p^(k+1)"
PruferCharacter parse_prufer(const std::string& text, int64_t p);

// Exact value at a truncation; requires chi.level < x.N so the truncation
// determines it.
CirclePoint zeta_eval(const PruferCharacter& chi, const PadicTrunc& x);

// Truncated images of +-p^{a_n}; entries with a_n >= N truncate to 0 and are
// omitted.
struct LPoint {
  int64_t index;
  int sign;
  PadicTrunc value;
};
std::vector<LPoint> l_points(const SequenceSpec& spec, int64_t N);

// Membership of the coset x + p^N J_p against L: in when the coset meets L,
// unknown only in prefix mode when that depends on unlisted values.
SeqMembership coset_meets_L(const SequenceSpec& spec, const PadicTrunc& x);

bool char_in_polar(const PruferCharacter& chi, const SequenceSpec& spec);

enum class PolarFamilyKind { all, all_except_a };
PolarFamilyKind polar_family(const SequenceSpec& spec, const Int& m);

// True iff the digits of x are supported on listed levels with values in
// {-1, 0, 1}. Odd p only.
bool digit_filter(const SequenceSpec& spec, const PadicTrunc& x);

std::vector<PruferCharacter> proof_guided_separators(const SequenceSpec& spec,
                                                     const PadicTrunc& x);

struct SeparationCertificate {
  PadicTrunc point;
  PruferCharacter chi;
  CirclePoint value;  // chi at point, outside T_+
  SepCase tag{SepCase::exhaustive};
  Int m{0};
};

struct SeparateResult {
  bool separated{false};
  std::optional<SeparationCertificate> certificate;
  int64_t level_budget{0};
};

// Characters of level >= N take every residue class on a depth-N coset and
// never separate it, so the scan stops at min(level_budget, N-1).
SeparateResult separate(const SequenceSpec& spec, const PadicTrunc& x, int64_t level_budget);

inline int64_t default_level_budget(int64_t depth) { return depth - 1; }

struct PointOutcome {
  PadicTrunc point;
  SeparateResult result;
};

struct VerificationReport {
  SequenceSpec spec;
  int64_t depth{0};
  int64_t level_budget{0};
  int64_t cosets_swept{0};
  int64_t cosets_excluded{0};  // cosets meeting L
  std::vector<PointOutcome> outcomes;
  bool all_separated{false};
};

// Sweeps every non-zero coset of p^depth; cosets are searched independently
// (fanned out over workers when asked) and reported in coset order.
VerificationReport verify_quasi_convex(const SequenceSpec& spec, int64_t depth,
                                       int64_t level_budget, int workers = 1);

struct ProbeReport {
  SequenceSpec spec;
  int64_t depth{0};
  int64_t level_budget{0};
  int64_t cosets_probed{0};
  int64_t separated_count{0};
  std::vector<PointOutcome> separated;
};

ProbeReport density_probe(const SequenceSpec& spec, int64_t depth, int64_t level_budget);

}  // namespace qch::padic
