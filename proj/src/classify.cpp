#include "qch/classify.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "qch/circle.hpp"

namespace qch::classify {

namespace {

constexpr int64_t kMaxModulus = 1000000000000;
constexpr int64_t kMaxFiniteExponent = 1000000;
constexpr size_t kMaxProductEntries = 100000;

struct Parser {
  std::string s;  // input with whitespace removed
  size_t i{0};

  bool done() const { return i >= s.size(); }
  char peek() const { return s[i]; }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, i); }

  int64_t digits(const char* label) {
    if (done() || !std::isdigit(static_cast<unsigned char>(peek()))) {
      fail(std::string("expected digits for ") + label);
    }
    int64_t v = 0;
    while (!done() && std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + (peek() - '0');
      if (v > kMaxModulus) fail(std::string(label) + " too large");
      ++i;
    }
    return v;
  }

  Factor factor();
  std::vector<Factor> product(bool inside_parens);
};

void flatten_cyclic(const Factor& f, std::vector<int64_t>* out, const Parser& p) {
  const std::vector<int64_t>* src = nullptr;
  std::vector<int64_t> one;
  if (f.base == BaseKind::cyclic) {
    one.push_back(f.m);
    src = &one;
  } else if (f.base == BaseKind::finite_product) {
    src = &f.moduli;
  } else {
    throw ParseError("parenthesized products may contain only cyclic factors", p.i);
  }
  if (f.exp_kind != ExpKind::finite) {
    throw ParseError("parenthesized products may not contain infinite exponents", p.i);
  }
  for (int64_t r = 0; r < f.exp; ++r) {
    out->insert(out->end(), src->begin(), src->end());
    if (out->size() > kMaxProductEntries) {
      throw ParseError("finite product has too many factors", p.i);
    }
  }
}

Factor Parser::factor() {
  Factor f;
  if (done()) fail("expected a group factor");
  char c = peek();
  if (c == 'R') {
    ++i;
    f.base = BaseKind::real_line;
  } else if (c == 'T') {
    ++i;
    f.base = BaseKind::circle;
  } else if (c == 'Z') {
    ++i;
    if (!done() && std::isdigit(static_cast<unsigned char>(peek()))) {
      f.base = BaseKind::cyclic;
      f.m = digits("cyclic modulus");
      if (f.m < 1) fail("cyclic modulus must be at least 1");
    } else {
      f.base = BaseKind::discrete_integers;
    }
  } else if (c == 'J') {
    ++i;
    f.base = BaseKind::padic;
    f.m = digits("p-adic prime");
    if (!qch::is_prime(f.m)) fail("p-adic base requires a prime");
  } else if (c == '(') {
    ++i;
    std::vector<Factor> inner = product(true);
    if (done() || peek() != ')') fail("expected ')'");
    ++i;
    f.base = BaseKind::finite_product;
    for (const Factor& g : inner) flatten_cyclic(g, &f.moduli, *this);
    if (f.moduli.empty()) fail("empty product");
  } else {
    fail("unrecognized group factor");
  }

  if (!done() && peek() == '^') {
    ++i;
    if (done()) fail("expected exponent");
    char e = peek();
    if (e == 'w') {
      ++i;
      f.exp_kind = ExpKind::omega;
    } else if (e == 'k') {
      ++i;
      f.exp_kind = ExpKind::kappa;
    } else {
      f.exp = digits("exponent");
      if (f.exp < 1) fail("exponent must be at least 1");
      if (f.exp > kMaxFiniteExponent) fail("exponent too large");
    }
  }

  if (f.exp_kind != ExpKind::finite &&
      (f.base == BaseKind::real_line || f.base == BaseKind::discrete_integers)) {
    fail("infinite powers of R and Z are not locally compact");
  }
  return f;
}

std::vector<Factor> Parser::product(bool inside_parens) {
  std::vector<Factor> out;
  out.push_back(factor());
  while (!done() && peek() == 'x') {
    ++i;
    out.push_back(factor());
  }
  if (!inside_parens && !done()) fail("trailing input");
  return out;
}

bool base_is_q_torsion(const Factor& f, int64_t q) {
  switch (f.base) {
    case BaseKind::cyclic:
      return q % f.m == 0;
    case BaseKind::finite_product:
      return std::all_of(f.moduli.begin(), f.moduli.end(),
                         [q](int64_t m) { return q % m == 0; });
    default:
      return false;  // R, T, Z, J_p all have elements of infinite order
  }
}

bool base_is_discrete(const Factor& f) {
  return f.base == BaseKind::discrete_integers || f.base == BaseKind::cyclic ||
         f.base == BaseKind::finite_product;
}

std::string exp_suffix(const Factor& f) {
  switch (f.exp_kind) {
    case ExpKind::omega:
      return "^w";
    case ExpKind::kappa:
      return "^k";
    case ExpKind::finite:
      return f.exp == 1 ? "" : "^" + std::to_string(f.exp);
  }
  return "";
}

std::string factor_string(const Factor& f) {
  std::string base;
  switch (f.base) {
    case BaseKind::real_line:
      base = "R";
      break;
    case BaseKind::circle:
      base = "T";
      break;
    case BaseKind::discrete_integers:
      base = "Z";
      break;
    case BaseKind::cyclic:
      base = "Z" + std::to_string(f.m);
      break;
    case BaseKind::padic:
      base = "J" + std::to_string(f.m);
      break;
    case BaseKind::finite_product: {
      base = "(";
      for (size_t j = 0; j < f.moduli.size(); ++j) {
        if (j) base += "x";
        base += "Z" + std::to_string(f.moduli[j]);
      }
      base += ")";
      break;
    }
  }
  return base + exp_suffix(f);
}

// Returns a reason when the factor's q-torsion fails to be open, nothing
// otherwise. Openness of a product subgroup is checked factorwise; for an
// infinite power the torsion part is open only when it is everything.
std::optional<std::string> torsion_open_obstruction(const Factor& f, int64_t q) {
  std::string name = factor_string(f);
  if (f.exp_kind != ExpKind::finite) {
    if (!base_is_q_torsion(f, q)) {
      return "factor " + name + " is an infinite power of a base that is not " +
             std::to_string(q) + "-torsion";
    }
    return std::nullopt;
  }
  if (!base_is_discrete(f)) {
    return "factor " + name + " is not discrete, so its " + std::to_string(q) +
           "-torsion subgroup is not open";
  }
  return std::nullopt;
}

bool factor_compact(const Factor& f) {
  return f.base != BaseKind::real_line && f.base != BaseKind::discrete_integers;
}

// qF^e finite: automatic for finite exponent over a discrete finite base,
// impossible for T, J_p, R, Z, and for infinite powers unless qF = 0.
bool q_multiple_finite(const Factor& f, int64_t q) {
  if (f.exp_kind != ExpKind::finite) return base_is_q_torsion(f, q);
  return f.base == BaseKind::cyclic || f.base == BaseKind::finite_product;
}

bool shape_q_power_times_finite(const GroupDescriptor& d, int64_t q) {
  for (const Factor& f : d.factors) {
    if (f.base != BaseKind::cyclic && f.base != BaseKind::finite_product) return false;
    if (f.exp_kind != ExpKind::finite && !base_is_q_torsion(f, q)) return false;
  }
  return true;
}

// Families whose verdict is pinned independently of the torsion rule; used to
// annotate the verdict, never to compute it.
std::optional<std::string> known_family(const GroupDescriptor& d) {
  if (d.factors.size() == 1) {
    const Factor& f = d.factors[0];
    if (f.exp_kind == ExpKind::finite && f.exp == 1) {
      if (f.base == BaseKind::circle) return "the circle group";
      if (f.base == BaseKind::real_line) return "the real line";
      if (f.base == BaseKind::padic)
        return "the " + std::to_string(f.m) + "-adic integers";
    }
  }
  bool all_products = !d.factors.empty();
  for (const Factor& f : d.factors) {
    if (f.exp_kind == ExpKind::finite) {
      all_products = false;
      break;
    }
    std::vector<int64_t> ms = f.base == BaseKind::cyclic ? std::vector<int64_t>{f.m}
                              : f.base == BaseKind::finite_product
                                  ? f.moduli
                                  : std::vector<int64_t>{};
    if (ms.empty() || std::any_of(ms.begin(), ms.end(), [](int64_t m) { return m < 4; })) {
      all_products = false;
      break;
    }
  }
  if (all_products) return "an infinite product of cyclic groups of order at least 4";
  return std::nullopt;
}

}  // namespace

GroupDescriptor parse_descriptor(const std::string& text) {
  Parser p;
  p.s.reserve(text.size());
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) p.s.push_back(c);
  }
  if (p.s.empty()) throw ParseError("empty descriptor", 0);
  GroupDescriptor d;
  d.factors = p.product(false);
  return d;
}

std::string to_string(const GroupDescriptor& d) {
  std::string out;
  for (size_t j = 0; j < d.factors.size(); ++j) {
    if (j) out += "x";
    out += factor_string(d.factors[j]);
  }
  return out;
}

bool torsion_open(const GroupDescriptor& d, int64_t q) {
  for (const Factor& f : d.factors) {
    if (torsion_open_obstruction(f, q)) return false;
  }
  return true;
}

bool is_compact(const GroupDescriptor& d) {
  return std::all_of(d.factors.begin(), d.factors.end(), factor_compact);
}

std::optional<CrossCheck> compact_conditions(const GroupDescriptor& d) {
  if (!is_compact(d)) return std::nullopt;
  CrossCheck c;
  c.two_torsion_open = torsion_open(d, 2);
  c.three_torsion_open = torsion_open(d, 3);
  c.shape_2 = shape_q_power_times_finite(d, 2);
  c.shape_3 = shape_q_power_times_finite(d, 3);
  c.two_g_finite = std::all_of(d.factors.begin(), d.factors.end(),
                               [](const Factor& f) { return q_multiple_finite(f, 2); });
  c.three_g_finite = std::all_of(d.factors.begin(), d.factors.end(),
                                 [](const Factor& f) { return q_multiple_finite(f, 3); });
  c.agree = c.two_torsion_open == c.shape_2 && c.shape_2 == c.two_g_finite &&
            c.three_torsion_open == c.shape_3 && c.shape_3 == c.three_g_finite;
  return c;
}

Verdict verdict(const GroupDescriptor& d) {
  Verdict v;
  bool open2 = true;
  bool open3 = true;
  for (int64_t q : {2, 3}) {
    std::optional<std::string> obstruction;
    for (const Factor& f : d.factors) {
      obstruction = torsion_open_obstruction(f, q);
      if (obstruction) break;
    }
    std::string cond = q == 2 ? "ii-2" : "ii-3";
    if (obstruction) {
      (q == 2 ? open2 : open3) = false;
      v.justification.push_back({cond, "the " + std::to_string(q) +
                                           "-torsion subgroup is not open: " + *obstruction});
    } else {
      v.justification.push_back(
          {cond, "the " + std::to_string(q) +
                     "-torsion subgroup is open: every factor is either discrete or an "
                     "infinite power of a " +
                     std::to_string(q) + "-torsion base"});
    }
  }
  v.admits = !open2 && !open3;

  if (auto c = compact_conditions(d)) {
    std::ostringstream iv;
    iv << "product shape Z_q^kappa x (finite): q=2 " << (c->shape_2 ? "yes" : "no")
       << ", q=3 " << (c->shape_3 ? "yes" : "no");
    v.justification.push_back({"iv", iv.str()});
    std::ostringstream vv;
    vv << "qG finite: 2G " << (c->two_g_finite ? "finite" : "infinite") << ", 3G "
       << (c->three_g_finite ? "finite" : "infinite")
       << (c->agree ? "; all compact criteria agree" : "; CRITERIA DISAGREE");
    v.justification.push_back({"v", vv.str()});
  }

  std::string verdict_line =
      v.admits ? "admits a quasi-convex null sequence with all members non-zero"
               : "every quasi-convex null sequence is eventually zero";
  if (auto family = known_family(d); family && v.admits)
    verdict_line += "; known case: " + *family;
  v.justification.push_back({"catalog", verdict_line});
  return v;
}

}  // namespace qch::classify
