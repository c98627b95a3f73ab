#include "qch/padic.hpp"

#include <algorithm>
#include <sstream>

#include "qch/parallel.hpp"

namespace qch::padic {

void validate_trunc(const PadicTrunc& x) {
  if (!is_prime(x.p)) throw std::invalid_argument("PadicTrunc: p must be prime");
  if (x.N < 0) throw std::invalid_argument("PadicTrunc: negative depth");
  if (static_cast<int64_t>(x.digits.size()) != x.N)
    throw std::invalid_argument("PadicTrunc: digit count must equal N");
  if (x.p == 2) {
    for (int64_t c : x.digits)
      if (c != 0 && c != 1)
        throw std::invalid_argument("PadicTrunc: p = 2 digits must be 0 or 1");
  } else {
    int64_t half = (x.p - 1) / 2;
    for (int64_t c : x.digits)
      if (c < -half || c > half)
        throw std::invalid_argument("PadicTrunc: digit out of balanced range");
  }
}

PadicTrunc trunc_from_value(int64_t p, int64_t N, const Int& v) {
  if (!is_prime(p)) throw std::invalid_argument("trunc_from_value: p must be prime");
  if (N < 0) throw std::invalid_argument("trunc_from_value: negative depth");
  PadicTrunc x{p, N, {}};
  if (p == 2) {
    Int r = v % pow_int(2, N);
    if (r < 0) r += pow_int(2, N);
    for (int64_t i = 0; i < N; ++i) {
      x.digits.push_back(static_cast<int64_t>(r % 2));
      r /= 2;
    }
  } else {
    x.digits = balanced_digits_mod(v, p, N);
  }
  return x;
}

Int trunc_value(const PadicTrunc& x) {
  validate_trunc(x);
  Int v = 0;
  for (int64_t i = x.N - 1; i >= 0; --i) v = v * x.p + x.digits[static_cast<size_t>(i)];
  Int mod = pow_int(x.p, x.N);
  v %= mod;
  if (v < 0) v += mod;
  return v;
}

PadicTrunc parse_trunc(const std::string& literal) {
  std::string s;
  for (char c : literal)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  PadicTrunc x;
  bool saw_p = false, saw_n = false, saw_digits = false;
  std::stringstream ss(s);
  std::string field;
  while (std::getline(ss, field, ';')) {
    if (field.empty()) continue;
    auto eq = field.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("parse_trunc: expected key=value in '" + field + "'");
    std::string key = field.substr(0, eq);
    std::string val = field.substr(eq + 1);
    if (key == "p") {
      x.p = std::stoll(val);
      saw_p = true;
    } else if (key == "N") {
      x.N = std::stoll(val);
      saw_n = true;
    } else if (key == "digits") {
      saw_digits = true;
      if (val.empty()) continue;
      std::stringstream vs(val);
      std::string item;
      while (std::getline(vs, item, ',')) x.digits.push_back(std::stoll(item));
    } else {
      throw std::invalid_argument("parse_trunc: unknown key '" + key + "'");
    }
  }
  if (!saw_p || !saw_n || !saw_digits)
    throw std::invalid_argument("parse_trunc: needs p=, N= and digits= fields");
  validate_trunc(x);
  return x;
}

std::string to_string(const PadicTrunc& x) {
  std::string s = "p=" + std::to_string(x.p) + ";N=" + std::to_string(x.N) + ";digits=";
  for (size_t i = 0; i < x.digits.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(x.digits[i]);
  }
  return s;
}

PruferCharacter make_prufer(const Int& c, int64_t level, int64_t p) {
  if (level < 0) throw std::invalid_argument("make_prufer: negative level");
  Int mod = pow_int(p, level + 1);
  Int r = c % mod;
  if (r < 0) r += mod;
  return {r, level};
}

std::string to_string(const PruferCharacter& chi, int64_t p) {
  return chi.c.str() + "/" + std::to_string(p) + "^" + std::to_string(chi.level + 1);
}

PruferCharacter parse_prufer(const std::string& text, int64_t p) {
  auto slash = text.find('/');
  auto caret = text.find('^');
  if (slash == std::string::npos || caret == std::string::npos || caret < slash)
    throw std::invalid_argument("parse_prufer: expected c/p^(k+1), got '" + text + "'");
  Int c(text.substr(0, slash));
  int64_t base = std::stoll(text.substr(slash + 1, caret - slash - 1));
  if (base != p)
    throw std::invalid_argument("parse_prufer: base mismatch in '" + text + "'");
  int64_t e = std::stoll(text.substr(caret + 1));
  if (e < 1) throw std::invalid_argument("parse_prufer: exponent must be >= 1");
  return make_prufer(c, e - 1, p);
}

CirclePoint zeta_eval(const PruferCharacter& chi, const PadicTrunc& x) {
  validate_trunc(x);
  if (chi.level < 0 || chi.level >= x.N)
    throw std::invalid_argument(
        "zeta_eval: character level must be below the truncation depth");
  Int partial = 0;  // x mod p^(level+1)
  for (int64_t i = chi.level; i >= 0; --i)
    partial = partial * x.p + x.digits[static_cast<size_t>(i)];
  return canonicalize(chi.c * partial, pow_int(x.p, chi.level + 1));
}

std::vector<LPoint> l_points(const SequenceSpec& spec, int64_t N) {
  validate_spec(spec);
  if (N < 0) throw std::invalid_argument("l_points: negative depth");
  std::vector<LPoint> out;
  for (size_t n = 0; n < spec.a.size(); ++n) {
    if (spec.a[n] >= N) break;
    Int v = pow_int(spec.p, spec.a[n]);
    out.push_back({static_cast<int64_t>(n), +1, trunc_from_value(spec.p, N, v)});
    out.push_back({static_cast<int64_t>(n), -1, trunc_from_value(spec.p, N, -v)});
  }
  return out;
}

SeqMembership coset_meets_L(const SequenceSpec& spec, const PadicTrunc& x) {
  validate_spec(spec);
  if (spec.p != x.p) throw std::invalid_argument("coset_meets_L: prime mismatch");
  Int v = trunc_value(x);
  if (v == 0) return SeqMembership::in;  // 0 lies in L
  Int mod = pow_int(x.p, x.N);
  Int pb = 1;
  for (int64_t b = 0; b < x.N; ++b) {
    if (v == pb || mod - v == pb) return seq_membership(spec, b);
    pb *= x.p;
  }
  return SeqMembership::out;
}

namespace {

// All listed indices at or below the level matter; the tail matters only when
// it may reach the level.
struct PolarCtx {
  std::vector<int64_t> listed;  // a-values
  bool has_tail{false};
  int64_t min_unseen{0};
};

PolarCtx make_polar_ctx(const SequenceSpec& spec) {
  PolarCtx ctx{spec.a, spec.mode == SeqMode::prefix,
               spec.a.empty() ? 0 : spec.a.back() + 1};
  return ctx;
}

bool char_in_polar_ctx(const PolarCtx& ctx, const SequenceSpec& spec,
                       const PruferCharacter& chi) {
  for (int64_t a : ctx.listed) {
    if (a > chi.level) break;
    // chi at p^a: c / p^(level+1-a) mod 1
    Int den = pow_int(spec.p, chi.level + 1 - a);
    Int r = chi.c % den;
    if (r < 0) r += den;
    Int dist = std::min(r, Int(den - r));
    if (4 * dist > den) return false;
  }
  if (ctx.has_tail && ctx.min_unseen <= chi.level)
    throw PrefixTooShort("polar decision for level " + std::to_string(chi.level) +
                             " depends on unlisted sequence values; list all a-values up to " +
                             std::to_string(chi.level),
                         chi.level);
  return true;
}

}  // namespace

bool char_in_polar(const PruferCharacter& chi, const SequenceSpec& spec) {
  validate_spec(spec);
  if (chi.level < 0) throw std::invalid_argument("char_in_polar: negative level");
  return char_in_polar_ctx(make_polar_ctx(spec), spec, chi);
}

PolarFamilyKind polar_family(const SequenceSpec& spec, const Int& m) {
  validate_spec(spec);
  if (m < 1 || m > spec.p - 1)
    throw std::invalid_argument("polar_family: need 1 <= m <= p-1");
  return in_T_plus(canonicalize(m, spec.p)) ? PolarFamilyKind::all
                                            : PolarFamilyKind::all_except_a;
}

namespace {

std::vector<size_t> nonzero_positions(const PadicTrunc& x) {
  std::vector<size_t> out;
  for (size_t i = 0; i < x.digits.size(); ++i)
    if (x.digits[i] != 0) out.push_back(i);
  return out;
}

struct Candidate {
  PruferCharacter chi;
  SepCase tag;
  Int m;
};

void filter_candidates(const SequenceSpec& spec, const PadicTrunc& x,
                       const std::vector<size_t>& nonzero, std::vector<Candidate>& out) {
  for (size_t i : nonzero) {
    int64_t level = static_cast<int64_t>(i);
    int64_t digit = x.digits[i];
    SeqMembership mem = seq_membership(spec, level);
    if (mem == SeqMembership::out) {
      for (int64_t m = 1; m <= spec.p - 1; ++m)
        out.push_back({make_prufer(m, level, spec.p), SepCase::filter_scan, m});
    } else if (std::abs(digit) >= 2) {
      for (int64_t m = 1; m <= spec.p / 4; ++m)
        out.push_back({make_prufer(m, level, spec.p), SepCase::filter_scan, m});
      out.push_back({make_prufer(spec.p - 1, level, spec.p), SepCase::filter_scan,
                     spec.p - 1});
    }
  }
}

void pair_candidates(const SequenceSpec& spec, const PadicTrunc& x,
                     const std::vector<size_t>& nonzero, std::vector<Candidate>& out) {
  if (spec.p < 5 || nonzero.size() < 2) return;
  size_t i1 = nonzero.front();
  if (std::abs(x.digits[i1]) != 1) return;
  int64_t k1 = static_cast<int64_t>(i1);
  for (size_t j = 1; j < nonzero.size(); ++j) {
    size_t i2 = nonzero[j];
    if (std::abs(x.digits[i2]) != 1) continue;
    int64_t k2 = static_cast<int64_t>(i2);
    Int gap = pow_int(spec.p, k2 - k1);  // zeta_{k1} = gap * zeta_{k2} at level k2
    for (int64_t m = 1; m <= spec.p / 4; ++m) {
      out.push_back({make_prufer(m * (gap + 1), k2, spec.p), SepCase::case1, m});
      out.push_back({make_prufer(m * (gap - 1), k2, spec.p), SepCase::case1, m});
    }
    if (k2 > k1 + 1) {
      // (zeta_{k1-1} - zeta_{k1}) +- (zeta_{k2-1} - zeta_{k2}),  zeta_{-1} = 0
      Int head = k1 > 0 ? Int(gap * spec.p - gap) : Int(-gap);
      out.push_back(
          {make_prufer(head + (spec.p - 1), k2, spec.p), SepCase::case2, spec.p - 1});
      out.push_back(
          {make_prufer(head - (spec.p - 1), k2, spec.p), SepCase::case2, spec.p - 1});
    }
    if (spec.p == 7 && k2 == k1 + 1) {
      int64_t rho = x.digits[i1] * x.digits[i2];
      out.push_back({make_prufer(7 * rho + 1, k2, spec.p), SepCase::case3, 1});
    }
  }
}

}  // namespace

bool digit_filter(const SequenceSpec& spec, const PadicTrunc& x) {
  validate_spec(spec);
  if (spec.p != x.p) throw std::invalid_argument("digit_filter: prime mismatch");
  if (spec.p == 2) throw std::invalid_argument("digit_filter: needs odd p");
  for (size_t i : nonzero_positions(x)) {
    if (std::abs(x.digits[i]) >= 2) return false;
    SeqMembership mem = seq_membership(spec, static_cast<int64_t>(i));
    if (mem == SeqMembership::out) return false;
    if (mem == SeqMembership::unknown)
      throw PrefixTooShort("digit_filter: support at unlisted level " + std::to_string(i),
                           static_cast<int64_t>(i));
  }
  return true;
}

std::vector<PruferCharacter> proof_guided_separators(const SequenceSpec& spec,
                                                     const PadicTrunc& x) {
  validate_spec(spec);
  if (spec.p != x.p) throw std::invalid_argument("proof_guided_separators: prime mismatch");
  if (spec.p < 5)
    throw std::invalid_argument("proof_guided_separators: constructions need p >= 5");
  std::vector<size_t> nonzero = nonzero_positions(x);
  std::vector<Candidate> cands;
  filter_candidates(spec, x, nonzero, cands);
  pair_candidates(spec, x, nonzero, cands);
  PolarCtx ctx = make_polar_ctx(spec);
  std::vector<PruferCharacter> out;
  for (const Candidate& c : cands)
    if (char_in_polar_ctx(ctx, spec, c.chi)) out.push_back(c.chi);
  return out;
}

SeparateResult separate(const SequenceSpec& spec, const PadicTrunc& x, int64_t level_budget) {
  validate_spec(spec);
  validate_trunc(x);
  if (spec.p != x.p) throw std::invalid_argument("separate: prime mismatch");
  if (level_budget < 0) throw std::invalid_argument("separate: negative level budget");
  SeqMembership mem = coset_meets_L(spec, x);
  if (mem == SeqMembership::in)
    throw std::invalid_argument("separate: coset meets L, nothing to separate");
  if (mem == SeqMembership::unknown)
    throw PrefixTooShort("separate: coset membership depends on unlisted values",
                         spec.a.empty() ? 0 : spec.a.back() + 1);

  PolarCtx ctx = make_polar_ctx(spec);
  auto try_candidate = [&](const Candidate& c) -> std::optional<SeparationCertificate> {
    if (c.chi.level >= x.N) return std::nullopt;
    if (!char_in_polar_ctx(ctx, spec, c.chi)) return std::nullopt;
    CirclePoint value = zeta_eval(c.chi, x);
    if (in_T_plus(value)) return std::nullopt;
    return SeparationCertificate{x, c.chi, value, c.tag, c.m};
  };

  if (spec.p >= 3) {
    std::vector<size_t> nonzero = nonzero_positions(x);
    std::vector<Candidate> cands;
    filter_candidates(spec, x, nonzero, cands);
    if (spec.p >= 5) pair_candidates(spec, x, nonzero, cands);
    for (const Candidate& c : cands)
      if (auto cert = try_candidate(c)) return {true, std::move(*cert), level_budget};
  }

  const int64_t top = std::min(level_budget, x.N - 1);
  for (int64_t k = 0; k <= top; ++k) {
    const Int mod = pow_int(spec.p, k + 1);
    for (Int c = 1; c < mod; ++c) {
      if (k > 0 && c % spec.p == 0) continue;  // same character at a lower level
      if (auto cert = try_candidate({PruferCharacter{c, k}, SepCase::exhaustive, 0}))
        return {true, std::move(*cert), level_budget};
    }
  }
  return {false, std::nullopt, level_budget};
}

VerificationReport verify_quasi_convex(const SequenceSpec& spec, int64_t depth,
                                       int64_t level_budget, int workers) {
  validate_spec(spec);
  if (depth < 1) throw std::invalid_argument("verify_quasi_convex: depth >= 1");
  VerificationReport report{spec, depth, level_budget, 0, 0, {}, false};
  const Int mod = pow_int(spec.p, depth);
  if (mod > 20000000) throw std::invalid_argument("verify_quasi_convex: sweep too large");
  const size_t total = (mod - 1).convert_to<size_t>();
  std::vector<std::optional<PointOutcome>> slots(total);
  parallel_for(total, workers, [&](size_t idx) {
    PadicTrunc x = trunc_from_value(spec.p, depth, Int(idx) + 1);
    SeqMembership mem = coset_meets_L(spec, x);
    if (mem == SeqMembership::unknown)
      throw PrefixTooShort("verify_quasi_convex: coset membership depends on unlisted values",
                           spec.a.empty() ? 0 : spec.a.back() + 1);
    if (mem == SeqMembership::in) return;  // empty slot = coset meeting L
    slots[idx] = PointOutcome{x, separate(spec, x, level_budget)};
  });
  for (std::optional<PointOutcome>& s : slots) {
    if (s) {
      ++report.cosets_swept;
      report.outcomes.push_back(std::move(*s));
    } else {
      ++report.cosets_excluded;
    }
  }
  ++report.cosets_excluded;  // the zero coset always meets L
  report.all_separated =
      std::all_of(report.outcomes.begin(), report.outcomes.end(),
                  [](const PointOutcome& o) { return o.result.separated; });
  return report;
}

ProbeReport density_probe(const SequenceSpec& spec, int64_t depth, int64_t level_budget) {
  validate_spec(spec);
  if (spec.p != 2 && spec.p != 3)
    throw std::invalid_argument("density_probe: only p = 2 and p = 3 are conjectured dense");
  if (depth < 1) throw std::invalid_argument("density_probe: depth >= 1");
  ProbeReport report{spec, depth, level_budget, 0, 0, {}};
  const Int mod = pow_int(spec.p, depth);
  for (Int v = 1; v < mod; ++v) {
    PadicTrunc x = trunc_from_value(spec.p, depth, v);
    if (coset_meets_L(spec, x) != SeqMembership::out) continue;
    ++report.cosets_probed;
    SeparateResult res = separate(spec, x, level_budget);
    if (res.separated) {
      ++report.separated_count;
      report.separated.push_back({x, std::move(res)});
    }
  }
  return report;
}

}  // namespace qch::padic
