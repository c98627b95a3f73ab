#include "qch/balanced.hpp"

#include <algorithm>

namespace qch {

namespace {

void require_odd_prime(int64_t p) {
  if (p < 3 || !is_prime(p) || p % 2 == 0)
    throw std::invalid_argument("balanced digits need an odd prime base");
}

}  // namespace

std::vector<int64_t> balanced_digits_mod(const Int& v, int64_t p, int64_t len) {
  require_odd_prime(p);
  if (len < 0) throw std::invalid_argument("balanced_digits_mod: negative length");
  Int mod = pow_int(p, len);
  Int r = v % mod;
  if (r < 0) r += mod;
  std::vector<int64_t> digits(static_cast<size_t>(len), 0);
  const int64_t half = (p - 1) / 2;
  for (int64_t i = 0; i < len; ++i) {
    int64_t d = static_cast<int64_t>(r % p);
    r /= p;
    if (d > half) {
      d -= p;
      r += 1;  // carry from the signed rewrite
    }
    digits[static_cast<size_t>(i)] = d;
  }
  return digits;  // final carry is a multiple of p^len, dropped mod p^len
}

BalancedExpansion balanced_expand(const CirclePoint& x, int64_t p) {
  require_odd_prime(p);
  Int den = x.den;
  int64_t d = 0;
  while (den % p == 0) {
    den /= p;
    ++d;
  }
  if (den != 1)
    throw std::invalid_argument("balanced_expand: denominator is not a power of " +
                                std::to_string(p));
  std::vector<int64_t> little = balanced_digits_mod(x.num, p, d);
  std::reverse(little.begin(), little.end());  // c_j = digit at p^{d-j}
  return {p, DigitOrigin::circle, std::move(little)};
}

CirclePoint eval_circle(const BalancedExpansion& e) {
  if (e.origin != DigitOrigin::circle)
    throw std::invalid_argument("eval_circle: expansion has padic origin");
  Int num = 0;
  for (int64_t c : e.digits) num = num * e.p + c;  // Horner over c_1..c_d
  return canonicalize(num, pow_int(e.p, static_cast<int64_t>(e.digits.size())));
}

Rational tail_bound(int64_t p, int64_t k) {
  require_odd_prime(p);
  if (k < 0) throw std::invalid_argument("tail_bound: negative index");
  return {1, 2 * pow_int(p, k)};
}

const char* variant_name(FirstDigitVariant v) {
  switch (v) {
    case FirstDigitVariant::a: return "a";
    case FirstDigitVariant::b: return "b";
    case FirstDigitVariant::c: return "c";
    case FirstDigitVariant::cor_c1: return "cor-c1";
    case FirstDigitVariant::cor_p_minus_1: return "cor-p-1";
  }
  throw std::invalid_argument("variant_name: unknown variant");
}

FirstDigitVariant parse_variant(const std::string& name) {
  if (name == "a") return FirstDigitVariant::a;
  if (name == "b") return FirstDigitVariant::b;
  if (name == "c") return FirstDigitVariant::c;
  if (name == "cor-c1") return FirstDigitVariant::cor_c1;
  if (name == "cor-p-1") return FirstDigitVariant::cor_p_minus_1;
  throw std::invalid_argument("unknown digit-theorem variant '" + name + "'");
}

namespace {

std::vector<Int> hypothesis_multipliers(int64_t p, FirstDigitVariant v) {
  std::vector<Int> ms;
  auto range = [&ms](int64_t hi) {
    for (int64_t m = 1; m <= hi; ++m) ms.emplace_back(m);
  };
  switch (v) {
    case FirstDigitVariant::a: range(1); break;
    case FirstDigitVariant::b: range((p + 1) / 2); break;
    case FirstDigitVariant::c: range((p + 5) / 6); break;
    case FirstDigitVariant::cor_c1: range(p / 4); break;
    case FirstDigitVariant::cor_p_minus_1:
      range(p / 4);
      ms.emplace_back(p - 1);
      break;
  }
  return ms;
}

bool conclusion_holds(int64_t p, FirstDigitVariant v, int64_t c1) {
  switch (v) {
    case FirstDigitVariant::a: return std::abs(c1) <= (p + 2) / 4;
    case FirstDigitVariant::b: return c1 == 0;
    default: return std::abs(c1) <= 1;
  }
}

}  // namespace

ExhaustiveReport verify_first_digit_theorem(int64_t p, int64_t depth,
                                            FirstDigitVariant variant) {
  require_odd_prime(p);
  if (depth < 1) throw std::invalid_argument("verify_first_digit_theorem: depth >= 1");
  const int64_t half = (p - 1) / 2;
  const std::vector<Int> ms = hypothesis_multipliers(p, variant);
  const Int den = pow_int(p, depth);

  ExhaustiveReport report{variant, p, depth, true, {}};
  std::vector<int64_t> digits(static_cast<size_t>(depth), -half);
  for (;;) {
    Int num = 0;
    for (int64_t c : digits) num = num * p + c;
    const CirclePoint y = canonicalize(num, den);
    bool hyp = true;
    for (const Int& m : ms) {
      if (!in_T_plus(int_scale(m, y))) {
        hyp = false;
        break;
      }
    }
    if (hyp && !conclusion_holds(p, variant, digits[0])) {
      report.pass = false;
      report.counterexamples.push_back(digits);
    }
    // odometer over balanced digit vectors
    size_t i = digits.size();
    while (i > 0) {
      --i;
      if (digits[i] < half) {
        ++digits[i];
        break;
      }
      digits[i] = -half;
      if (i == 0) return report;
    }
  }
}

bool expected_failure(FirstDigitVariant v, int64_t p, int64_t depth) {
  return v == FirstDigitVariant::cor_c1 && p == 7 && depth >= 2;
}

bool matches_expectation(const ExhaustiveReport& r) {
  if (!expected_failure(r.variant, r.p, r.depth)) return r.pass;
  if (r.pass || r.counterexamples.empty()) return false;
  bool has_witness = false;
  for (const std::vector<int64_t>& cx : r.counterexamples) {
    if (cx.empty() || std::abs(cx[0]) != 2) return false;
    if (cx.size() >= 2 && cx[0] == 2 && cx[1] == -3) has_witness = true;
  }
  return has_witness;
}

}  // namespace qch
