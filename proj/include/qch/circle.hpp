#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace qch {

using Int = boost::multiprecision::cpp_int;

inline Int pow_int(const Int& base, int64_t exp) {
  if (exp < 0) throw std::invalid_argument("pow_int: negative exponent");
  Int r = 1;
  Int b = base;
  while (exp > 0) {
    if (exp & 1) r *= b;
    exp >>= 1;
    if (exp > 0) b *= b;
  }
  return r;
}

inline Int abs_int(const Int& v) { return v < 0 ? Int(-v) : v; }

inline bool is_prime(int64_t n) {
  if (n < 2) return false;
  for (int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Exact rational on the real line. Invariant: den > 0, gcd(|num|, den) = 1.
struct Rational {
  Int num{0};
  Int den{1};

  Rational() = default;
  Rational(Int n, Int d) : num(std::move(n)), den(std::move(d)) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    Int g = boost::multiprecision::gcd(abs_int(num), den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }
};

inline bool operator==(const Rational& a, const Rational& b) {
  return a.num == b.num && a.den == b.den;
}
inline bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
inline bool operator<(const Rational& a, const Rational& b) {
  return a.num * b.den < b.num * a.den;
}
inline bool operator<=(const Rational& a, const Rational& b) {
  return a.num * b.den <= b.num * a.den;
}
inline bool operator>(const Rational& a, const Rational& b) { return b < a; }
inline bool operator>=(const Rational& a, const Rational& b) { return b <= a; }

inline Rational rat_abs(const Rational& a) { return {abs_int(a.num), a.den}; }
inline Rational rat_add(const Rational& a, const Rational& b) {
  return {a.num * b.den + b.num * a.den, a.den * b.den};
}
inline Rational rat_neg(const Rational& a) { return {-a.num, a.den}; }

std::string to_string(const Rational& a);

// Point of the circle group: the coset num/den + Z, stored as the unique
// reduced representative in (-1/2, 1/2].
struct CirclePoint {
  Int num{0};
  Int den{1};
};

inline CirclePoint canonicalize(Int num, Int den) {
  if (den == 0) throw std::domain_error("CirclePoint: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  num %= den;
  if (num < 0) num += den;
  Int g = boost::multiprecision::gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (2 * num > den) num -= den;
  return {std::move(num), std::move(den)};
}

inline bool operator==(const CirclePoint& a, const CirclePoint& b) {
  return a.num == b.num && a.den == b.den;
}
inline bool operator!=(const CirclePoint& a, const CirclePoint& b) { return !(a == b); }
// Total order on representatives; canonical reps are unique per point.
inline bool operator<(const CirclePoint& a, const CirclePoint& b) {
  return a.num * b.den < b.num * a.den;
}

inline CirclePoint add(const CirclePoint& a, const CirclePoint& b) {
  return canonicalize(a.num * b.den + b.num * a.den, a.den * b.den);
}
inline CirclePoint neg(const CirclePoint& a) { return canonicalize(-a.num, a.den); }
inline CirclePoint int_scale(const Int& k, const CirclePoint& a) {
  return canonicalize(k * a.num, a.den);
}
inline bool is_zero(const CirclePoint& a) { return a.num == 0; }
inline Rational rep_abs(const CirclePoint& a) { return {abs_int(a.num), a.den}; }

// Level m of the closed arc T_m = [-1/(4m), 1/(4m)] + Z.  T_+ is level 1.
using TmLevel = Int;

// Membership decided by cross-multiplication: |num|/den <= 1/(4m).
inline bool in_Tm(const CirclePoint& x, const TmLevel& m) {
  if (m < 1) throw std::invalid_argument("in_Tm: level must be positive");
  return 4 * m * abs_int(x.num) <= x.den;
}
inline bool in_T_plus(const CirclePoint& x) { return in_Tm(x, 1); }

std::string to_string(const CirclePoint& a);
CirclePoint parse_circle_point(const std::string& text);

}  // namespace qch
