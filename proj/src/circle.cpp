#include "qch/circle.hpp"

namespace qch {

std::string to_string(const Rational& a) {
  return a.num.str() + "/" + a.den.str();
}

std::string to_string(const CirclePoint& a) {
  return a.num.str() + "/" + a.den.str();
}

CirclePoint parse_circle_point(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("parse_circle_point: empty literal");
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return canonicalize(Int(text), 1);
    Int num(text.substr(0, slash));
    Int den(text.substr(slash + 1));
    if (den == 0)
      throw std::invalid_argument("parse_circle_point: zero denominator in '" + text + "'");
    return canonicalize(num, den);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("parse_circle_point: malformed literal '" + text + "'");
  }
}

}  // namespace qch
