#pragma once

#include "qch/circle.hpp"

#include <vector>

namespace qch {

// Signed base-p digit vector with |c_i| <= (p-1)/2, p an odd prime.
// Circle origin: digits are c_1..c_d and the value is sum c_i / p^i mod 1.
// Padic origin: digits are c_0..c_{N-1} and the value is sum c_i p^i mod p^N.
enum class DigitOrigin { circle, padic };

struct BalancedExpansion {
  int64_t p{3};
  DigitOrigin origin{DigitOrigin::circle};
  std::vector<int64_t> digits;
};

// Balanced digits of the residue v mod p^len, least significant first.
std::vector<int64_t> balanced_digits_mod(const Int& v, int64_t p, int64_t len);

// Requires den(x) = p^d; returns c_1..c_d with c_d != 0 (empty for x = 0).
BalancedExpansion balanced_expand(const CirclePoint& x, int64_t p);

CirclePoint eval_circle(const BalancedExpansion& e);

// |sum_{i>k} c_i / p^i| <= 1/(2 p^k) for any balanced tail.
Rational tail_bound(int64_t p, int64_t k);

// First-digit statements checked exhaustively over all depth-d expansions.
// Hypotheses quantify m*y in T_+ over a variant-specific m-range; the
// conclusion bounds c_1.
//   a:       y in T_+                          =>  |c_1| <= floor((p+2)/4)
//   b:       m = 1..ceil(p/2)                  =>  c_1 = 0
//   c:       m = 1..ceil(p/6)                  =>  |c_1| <= 1
//   cor-c1:  m = 1..floor(p/4)                 =>  |c_1| <= 1   (fails at p = 7)
//   cor-p-1: m = 1..floor(p/4) and m = p-1     =>  |c_1| <= 1
enum class FirstDigitVariant { a, b, c, cor_c1, cor_p_minus_1 };

const char* variant_name(FirstDigitVariant v);
FirstDigitVariant parse_variant(const std::string& name);

struct ExhaustiveReport {
  FirstDigitVariant variant{FirstDigitVariant::a};
  int64_t p{0};
  int64_t depth{0};
  bool pass{false};
  std::vector<std::vector<int64_t>> counterexamples;  // digit vectors c_1..c_depth
};

ExhaustiveReport verify_first_digit_theorem(int64_t p, int64_t depth,
                                            FirstDigitVariant variant);

// The one combination documented to fail: cor-c1 at p = 7, where the
// hypothesis tolerates a first digit of magnitude 2. Depth 1 is excluded:
// a single digit bounded by (p-1)/2 = 3 with 4|c_1| <= 7 forces |c_1| <= 1,
// so the statement still holds there.
bool expected_failure(FirstDigitVariant v, int64_t p, int64_t depth);

// A report matches expectation when it passes (the normal case) or, for
// cor-c1 at p = 7, when it reproduces the pinned failure class: every
// counterexample has |c_1| = 2 and the class contains 2/7 - 3/49.
bool matches_expectation(const ExhaustiveReport& r);

}  // namespace qch
