#include "qch/torus.hpp"

#include <algorithm>

#include "qch/parallel.hpp"

namespace qch::torus {

std::vector<KPoint> k_points(const SequenceSpec& spec) {
  validate_spec(spec);
  std::vector<KPoint> out;
  for (size_t n = 0; n < spec.a.size(); ++n) {
    CirclePoint plus = canonicalize(1, pow_int(spec.p, spec.a[n] + 1));
    CirclePoint minus = neg(plus);
    out.push_back({static_cast<int64_t>(n), +1, plus});
    if (!(minus == plus)) out.push_back({static_cast<int64_t>(n), -1, minus});
  }
  return out;
}

SeqMembership point_in_K(const SequenceSpec& spec, const CirclePoint& x) {
  if (is_zero(x)) return SeqMembership::in;
  if (abs_int(x.num) != 1) return SeqMembership::out;
  Int den = x.den;
  int64_t e = 0;
  while (den % spec.p == 0) {
    den /= spec.p;
    ++e;
  }
  if (den != 1 || e == 0) return SeqMembership::out;
  return seq_membership(spec, e - 1);
}

namespace {

struct PolarCtx {
  std::vector<Int> dens;  // p^{a_k+1}, ascending with the listed a
  bool has_tail{false};
  Int min_unseen_den{0};  // p^{u+1} for the smallest value u the tail may hold
};

PolarCtx make_polar_ctx(const SequenceSpec& spec) {
  PolarCtx ctx;
  ctx.dens.reserve(spec.a.size());
  for (int64_t a : spec.a) ctx.dens.push_back(pow_int(spec.p, a + 1));
  if (spec.mode == SeqMode::prefix) {
    ctx.has_tail = true;
    int64_t u = spec.a.empty() ? 0 : spec.a.back() + 1;
    ctx.min_unseen_den = pow_int(spec.p, u + 1);
  }
  return ctx;
}

int64_t last_index_below(const SequenceSpec& spec, const Int& four_n) {
  // largest a with p^{a+1} < 4|n|
  Int den = spec.p;
  int64_t a = -1;
  while (den < four_n) {
    ++a;
    den *= spec.p;
  }
  return a;
}

bool char_in_polar_ctx(const PolarCtx& ctx, const SequenceSpec& spec, const Int& n_raw) {
  Int n = abs_int(n_raw);
  if (n == 0) return true;
  const Int four_n = 4 * n;
  for (const Int& den : ctx.dens) {
    if (den >= four_n) break;  // |n|/den <= 1/4, in T_+ with no wraparound
    Int r = n % den;
    Int dist = std::min(r, Int(den - r));
    if (4 * dist > den) return false;
  }
  if (ctx.has_tail && ctx.min_unseen_den < four_n)
    throw PrefixTooShort("polar decision for n = " + n_raw.str() +
                             " depends on unlisted sequence values; list all a-values up to " +
                             std::to_string(last_index_below(spec, four_n)),
                         last_index_below(spec, four_n));
  return true;
}

}  // namespace

bool char_in_polar(const IntCharacter& chi, const SequenceSpec& spec) {
  validate_spec(spec);
  return char_in_polar_ctx(make_polar_ctx(spec), spec, chi.n);
}

PolarFamilyKind polar_family(const SequenceSpec& spec, const Int& m) {
  validate_spec(spec);
  if (m < 1 || m > spec.p - 1)
    throw std::invalid_argument("polar_family: need 1 <= m <= p-1");
  return in_T_plus(canonicalize(m, spec.p)) ? PolarFamilyKind::all
                                            : PolarFamilyKind::all_except_a;
}

namespace {

struct Digits {
  BalancedExpansion exp;
  std::vector<size_t> nonzero;  // indices into exp.digits
};

Digits positions_of(const SequenceSpec& spec, const CirclePoint& x) {
  Digits d{balanced_expand(x, spec.p), {}};
  for (size_t i = 0; i < d.exp.digits.size(); ++i)
    if (d.exp.digits[i] != 0) d.nonzero.push_back(i);
  return d;
}

struct Candidate {
  Int n;
  SepCase tag;
  Int m;
};

// Single-index separators at digits violating the filter. A digit at a level
// outside the sequence admits multipliers 1..p-1; a digit of magnitude >= 2
// admits the unconditional multipliers 1..floor(p/4) and p-1.
void filter_candidates(const SequenceSpec& spec, const Digits& d, std::vector<Candidate>& out) {
  for (size_t i : d.nonzero) {
    int64_t level = static_cast<int64_t>(i);  // digit c_{i+1} sits at level i
    int64_t digit = d.exp.digits[i];
    SeqMembership mem = seq_membership(spec, level);
    Int base = pow_int(spec.p, level);
    if (mem == SeqMembership::out) {
      for (int64_t m = 1; m <= spec.p - 1; ++m)
        out.push_back({m * base, SepCase::filter_scan, m});
    } else if (std::abs(digit) >= 2) {
      for (int64_t m = 1; m <= spec.p / 4; ++m)
        out.push_back({m * base, SepCase::filter_scan, m});
      out.push_back({(spec.p - 1) * base, SepCase::filter_scan, spec.p - 1});
    }
  }
}

// Two-index separators for points whose nonzero digits are all +-1. k1 is the
// first nonzero level; every later nonzero level serves as k2.
void pair_candidates(const SequenceSpec& spec, const Digits& d, std::vector<Candidate>& out) {
  if (spec.p < 5 || d.nonzero.size() < 2) return;
  size_t i1 = d.nonzero.front();
  if (std::abs(d.exp.digits[i1]) != 1) return;
  int64_t k1 = static_cast<int64_t>(i1);
  Int pk1 = pow_int(spec.p, k1);
  for (size_t j = 1; j < d.nonzero.size(); ++j) {
    size_t i2 = d.nonzero[j];
    if (std::abs(d.exp.digits[i2]) != 1) continue;
    int64_t k2 = static_cast<int64_t>(i2);
    Int pk2 = pow_int(spec.p, k2);
    for (int64_t m = 1; m <= spec.p / 4; ++m) {
      out.push_back({m * (pk1 + pk2), SepCase::case1, m});
      out.push_back({m * (pk1 - pk2), SepCase::case1, m});
    }
    if (k2 > k1 + 1) {
      out.push_back({(spec.p - 1) * (pk1 + pk2), SepCase::case2, spec.p - 1});
      out.push_back({(spec.p - 1) * (pk1 - pk2), SepCase::case2, spec.p - 1});
    }
    if (spec.p == 7 && k2 == k1 + 1) {
      int64_t rho = d.exp.digits[i1] * d.exp.digits[i2];
      out.push_back({(7 + rho) * pk1, SepCase::case3, 1});
    }
  }
}

bool den_is_p_power(const CirclePoint& x, int64_t p) {
  Int den = x.den;
  while (den % p == 0) den /= p;
  return den == 1;
}

}  // namespace

bool digit_filter(const SequenceSpec& spec, const CirclePoint& x) {
  validate_spec(spec);
  Digits d = positions_of(spec, x);
  for (size_t i : d.nonzero) {
    if (std::abs(d.exp.digits[i]) >= 2) return false;
    SeqMembership mem = seq_membership(spec, static_cast<int64_t>(i));
    if (mem == SeqMembership::out) return false;
    if (mem == SeqMembership::unknown)
      throw PrefixTooShort("digit_filter: support at unlisted level " + std::to_string(i),
                           static_cast<int64_t>(i));
  }
  return true;
}

std::vector<IntCharacter> proof_guided_separators(const SequenceSpec& spec,
                                                  const CirclePoint& x) {
  validate_spec(spec);
  if (spec.p < 5)
    throw std::invalid_argument("proof_guided_separators: constructions need p >= 5");
  Digits d = positions_of(spec, x);
  std::vector<Candidate> cands;
  filter_candidates(spec, d, cands);
  pair_candidates(spec, d, cands);
  PolarCtx ctx = make_polar_ctx(spec);
  std::vector<IntCharacter> out;
  for (const Candidate& c : cands)
    if (char_in_polar_ctx(ctx, spec, c.n)) out.push_back({c.n});
  return out;
}

SeparateResult separate(const SequenceSpec& spec, const CirclePoint& x, const Int& budget) {
  validate_spec(spec);
  if (budget < 0) throw std::invalid_argument("separate: negative budget");
  SeqMembership mem = point_in_K(spec, x);
  if (mem == SeqMembership::in)
    throw std::invalid_argument("separate: point lies in K, nothing to separate");
  if (mem == SeqMembership::unknown)
    throw PrefixTooShort("separate: membership of the point depends on unlisted values",
                         spec.a.empty() ? 0 : spec.a.back() + 1);

  PolarCtx ctx = make_polar_ctx(spec);
  auto try_candidate = [&](const Candidate& c) -> std::optional<SeparationCertificate> {
    if (!char_in_polar_ctx(ctx, spec, c.n)) return std::nullopt;
    CirclePoint value = int_scale(c.n, x);
    if (in_T_plus(value)) return std::nullopt;
    return SeparationCertificate{x, {c.n}, value, c.tag, c.m};
  };

  if (spec.p >= 3 && den_is_p_power(x, spec.p)) {
    Digits d = positions_of(spec, x);
    std::vector<Candidate> cands;
    filter_candidates(spec, d, cands);
    if (spec.p >= 5) pair_candidates(spec, d, cands);
    for (const Candidate& c : cands)
      if (auto cert = try_candidate(c)) return {true, std::move(*cert), budget};
  }

  for (Int n = 1; n <= budget; ++n)
    if (auto cert = try_candidate({n, SepCase::exhaustive, 0}))
      return {true, std::move(*cert), budget};
  return {false, std::nullopt, budget};
}

VerificationReport verify_quasi_convex(const SequenceSpec& spec, int64_t depth,
                                       const Int& budget, int workers) {
  validate_spec(spec);
  if (depth < 1) throw std::invalid_argument("verify_quasi_convex: depth >= 1");
  if (spec.mode == SeqMode::prefix &&
      (spec.a.empty() || spec.a.back() < depth - 1))
    throw PrefixTooShort("verify_quasi_convex: prefix must cover levels up to depth-1",
                         depth - 1);

  VerificationReport report{spec, depth, budget, 0, 0, {}, false};
  const Int den = pow_int(spec.p, depth);
  if (den > 20000000) throw std::invalid_argument("verify_quasi_convex: sweep too large");
  const size_t total = (den - 1).convert_to<size_t>();
  std::vector<std::optional<PointOutcome>> slots(total);
  parallel_for(total, workers, [&](size_t idx) {
    CirclePoint x = canonicalize(Int(idx) + 1, den);
    if (point_in_K(spec, x) == SeqMembership::in) return;  // empty slot = member
    slots[idx] = PointOutcome{x, separate(spec, x, budget)};
  });
  for (std::optional<PointOutcome>& s : slots) {
    if (s) {
      ++report.points_swept;
      report.outcomes.push_back(std::move(*s));
    } else {
      ++report.members_skipped;
    }
  }
  report.all_separated =
      std::all_of(report.outcomes.begin(), report.outcomes.end(),
                  [](const PointOutcome& o) { return o.result.separated; });
  return report;
}

ProbeReport density_probe(const SequenceSpec& spec, int64_t depth, const Int& budget) {
  validate_spec(spec);
  if (spec.p != 2 && spec.p != 3)
    throw std::invalid_argument("density_probe: only p = 2 and p = 3 are conjectured dense");
  if (depth < 1) throw std::invalid_argument("density_probe: depth >= 1");

  ProbeReport report{spec, depth, budget, 0, 0, {}};
  const Int den = pow_int(spec.p, depth);
  for (Int u = 1; u < den; ++u) {
    CirclePoint x = canonicalize(u, den);
    if (point_in_K(spec, x) == SeqMembership::in) continue;
    ++report.points_probed;
    SeparateResult res = separate(spec, x, budget);
    if (res.separated) {
      ++report.separated_count;
      report.separated.push_back({x, std::move(res)});
    }
  }
  return report;
}

}  // namespace qch::torus
