#include "qch/finite_group.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace qch {

void validate_group(const FiniteGroup& g) {
  for (int64_t m : g.moduli)
    if (m < 1) throw std::invalid_argument("FiniteGroup: moduli must be >= 1");
}

Int group_order(const FiniteGroup& g) {
  Int n = 1;
  for (int64_t m : g.moduli) n *= m;
  return n;
}

FiniteGroup parse_group(const std::string& literal) {
  std::string s;
  for (char c : literal)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw std::invalid_argument("parse_group: empty literal");
  FiniteGroup g;
  size_t pos = 0;
  while (pos < s.size()) {
    if (s[pos] != 'Z')
      throw std::invalid_argument("parse_group: expected 'Z' at position " +
                                  std::to_string(pos) + " in '" + literal + "'");
    ++pos;
    size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (start == pos)
      throw std::invalid_argument("parse_group: 'Z' needs a modulus in '" + literal + "'");
    int64_t m = 0;
    try {
      m = std::stoll(s.substr(start, pos - start));
    } catch (const std::out_of_range&) {
      throw std::invalid_argument("parse_group: modulus out of range in '" + literal + "'");
    }
    if (m < 1) throw std::invalid_argument("parse_group: modulus must be >= 1");
    g.moduli.push_back(m);
    if (pos < s.size()) {
      if (s[pos] != 'x' && s[pos] != 'X')
        throw std::invalid_argument("parse_group: expected 'x' at position " +
                                    std::to_string(pos) + " in '" + literal + "'");
      ++pos;
      if (pos == s.size())
        throw std::invalid_argument("parse_group: trailing 'x' in '" + literal + "'");
    }
  }
  return g;
}

std::string to_string(const FiniteGroup& g) {
  std::string s;
  for (size_t i = 0; i < g.moduli.size(); ++i) {
    if (i) s += "x";
    s += "Z" + std::to_string(g.moduli[i]);
  }
  return s;
}

namespace {

std::vector<int64_t> reduce_coords(const FiniteGroup& g, std::vector<int64_t> coords,
                                   const char* what) {
  if (coords.size() != g.moduli.size())
    throw std::invalid_argument(std::string(what) + ": rank mismatch");
  for (size_t i = 0; i < coords.size(); ++i) {
    int64_t m = g.moduli[i];
    coords[i] %= m;
    if (coords[i] < 0) coords[i] += m;
  }
  return coords;
}

}  // namespace

GroupElement make_element(const FiniteGroup& g, std::vector<int64_t> coords) {
  return {reduce_coords(g, std::move(coords), "make_element")};
}

CharacterVec make_character(const FiniteGroup& g, std::vector<int64_t> coeffs) {
  return {reduce_coords(g, std::move(coeffs), "make_character")};
}

GroupElement zero_element(const FiniteGroup& g) {
  return {std::vector<int64_t>(g.moduli.size(), 0)};
}

GroupElement neg_element(const FiniteGroup& g, const GroupElement& x) {
  std::vector<int64_t> v = x.v;
  for (size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) v[i] = g.moduli[i] - v[i];
  return {std::move(v)};
}

GroupElement add_elements(const FiniteGroup& g, const GroupElement& x, const GroupElement& y) {
  if (x.v.size() != g.moduli.size() || y.v.size() != g.moduli.size())
    throw std::invalid_argument("add_elements: rank mismatch");
  std::vector<int64_t> v(x.v.size());
  for (size_t i = 0; i < v.size(); ++i) v[i] = (x.v[i] + y.v[i]) % g.moduli[i];
  return {std::move(v)};
}

CirclePoint pairing(const FiniteGroup& g, const CharacterVec& chi, const GroupElement& x) {
  if (chi.a.size() != g.moduli.size() || x.v.size() != g.moduli.size())
    throw std::invalid_argument("pairing: rank mismatch with group");
  CirclePoint acc{0, 1};
  for (size_t i = 0; i < chi.a.size(); ++i) {
    if (chi.a[i] < 0 || chi.a[i] >= g.moduli[i] || x.v[i] < 0 || x.v[i] >= g.moduli[i])
      throw std::invalid_argument("pairing: coordinate out of range");
    acc = add(acc, canonicalize(Int(chi.a[i]) * x.v[i], Int(g.moduli[i])));
  }
  return acc;
}

std::vector<GroupElement> all_elements(const FiniteGroup& g) {
  validate_group(g);
  Int order = group_order(g);
  if (order > 20'000'000)
    throw std::invalid_argument("all_elements: group order exceeds enumeration limit");
  std::vector<GroupElement> out;
  out.reserve(static_cast<size_t>(order));
  std::vector<int64_t> v(g.moduli.size(), 0);
  for (;;) {
    out.push_back({v});
    size_t i = v.size();
    for (;;) {
      if (i == 0) return out;
      --i;
      if (++v[i] < g.moduli[i]) break;
      v[i] = 0;
      if (i == 0) return out;
    }
  }
}

ElementSet normalize_set(const FiniteGroup& g, ElementSet e) {
  for (auto& x : e) x = make_element(g, std::move(x.v));
  std::sort(e.begin(), e.end());
  e.erase(std::unique(e.begin(), e.end()), e.end());
  return e;
}

namespace {

// Exact scan arithmetic: values live over the common denominator L = lcm(moduli).
// With L below 2^62 every per-term product fits __int128 after one reduction.
struct ScanContext {
  int64_t lcm{1};
  std::vector<int64_t> weight;  // lcm / m_i
  bool fits{false};
};

ScanContext make_scan_context(const FiniteGroup& g) {
  ScanContext ctx;
  Int l = 1;
  for (int64_t m : g.moduli) l = boost::multiprecision::lcm(l, Int(m));
  if (l < Int(int64_t(1) << 62)) {
    ctx.fits = true;
    ctx.lcm = static_cast<int64_t>(l);
    ctx.weight.reserve(g.moduli.size());
    for (int64_t m : g.moduli) ctx.weight.push_back(ctx.lcm / m);
  }
  return ctx;
}

// 4 * |value| <= 1 over denominator L, i.e. 4 * min(r, L - r) <= L.
inline bool residue_in_T_plus(int64_t r, int64_t l) {
  int64_t dist = std::min(r, l - r);
  return 4 * dist <= l;  // l <= 2^62 keeps 4*dist in range
}

inline int64_t scan_value(const ScanContext& ctx, const CharacterVec& chi,
                          const GroupElement& x) {
  __int128 acc = 0;
  for (size_t i = 0; i < chi.a.size(); ++i) {
    acc += static_cast<__int128>(chi.a[i]) * x.v[i] % ctx.lcm * ctx.weight[i];
    acc %= ctx.lcm;
  }
  return static_cast<int64_t>(acc);
}

bool pair_in_T_plus(const FiniteGroup& g, const ScanContext& ctx, const CharacterVec& chi,
                    const GroupElement& x) {
  if (ctx.fits) return residue_in_T_plus(scan_value(ctx, chi, x), ctx.lcm);
  return in_T_plus(pairing(g, chi, x));
}

}  // namespace

CharacterSet polar(const FiniteGroup& g, const ElementSet& e) {
  ElementSet set = normalize_set(g, e);
  ScanContext ctx = make_scan_context(g);
  CharacterSet out;
  for (const GroupElement& chi : all_elements(g)) {
    bool in = true;
    for (const GroupElement& x : set) {
      if (!pair_in_T_plus(g, ctx, {chi.v}, x)) {
        in = false;
        break;
      }
    }
    if (in) out.push_back({chi.v});
  }
  return out;
}

ElementSet prepolar(const FiniteGroup& g, const CharacterSet& a) {
  CharacterSet set;
  set.reserve(a.size());
  for (const auto& chi : a) set.push_back(make_character(g, chi.a));
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
  ScanContext ctx = make_scan_context(g);
  ElementSet out;
  for (const GroupElement& x : all_elements(g)) {
    bool in = true;
    for (const CharacterVec& chi : set) {
      if (!pair_in_T_plus(g, ctx, chi, x)) {
        in = false;
        break;
      }
    }
    if (in) out.push_back(x);
  }
  return out;
}

ElementSet hull(const FiniteGroup& g, const ElementSet& e) {
  return prepolar(g, polar(g, e));
}

QcReport is_quasi_convex(const FiniteGroup& g, const ElementSet& e) {
  ElementSet set = normalize_set(g, e);
  CharacterSet pol = polar(g, set);
  ElementSet h = prepolar(g, pol);
  ScanContext ctx = make_scan_context(g);

  QcReport report;
  report.quasi_convex = (h == set);
  report.certificate.hull = h;
  for (const GroupElement& x : all_elements(g)) {
    if (std::binary_search(h.begin(), h.end(), x)) continue;
    bool found = false;
    for (const CharacterVec& chi : pol) {
      if (!pair_in_T_plus(g, ctx, chi, x)) {
        report.certificate.excluded.push_back({x, chi, pairing(g, chi, x)});
        found = true;
        break;
      }
    }
    if (!found)
      throw std::logic_error("is_quasi_convex: element outside hull has no witness");
  }
  return report;
}

ElementSet generated_subgroup(const FiniteGroup& g, const ElementSet& s) {
  ElementSet gens = normalize_set(g, s);
  std::set<std::vector<int64_t>> seen;
  std::vector<GroupElement> frontier{zero_element(g)};
  seen.insert(frontier[0].v);
  while (!frontier.empty()) {
    std::vector<GroupElement> next;
    for (const GroupElement& x : frontier) {
      for (const GroupElement& gen : gens) {
        GroupElement y = add_elements(g, x, gen);
        if (seen.insert(y.v).second) next.push_back(std::move(y));
      }
    }
    frontier = std::move(next);
  }
  ElementSet out;
  out.reserve(seen.size());
  for (const auto& v : seen) out.push_back({v});
  return out;
}

ElementSet standard_null_set(const FiniteGroup& g) {
  validate_group(g);
  ElementSet out{zero_element(g)};
  for (size_t k = 0; k < g.moduli.size(); ++k) {
    if (g.moduli[k] <= 1) continue;
    std::vector<int64_t> v(g.moduli.size(), 0);
    v[k] = 1;
    out.push_back({v});
    v[k] = g.moduli[k] - 1;
    out.push_back({v});
  }
  return normalize_set(g, std::move(out));
}

CharacterVec cyclic_certificate_characters(const FiniteGroup& g, int64_t k1, int64_t k2,
                                           int sign) {
  validate_group(g);
  for (int64_t m : g.moduli)
    if (m < 4)
      throw std::invalid_argument("cyclic_certificate_characters: all moduli must be >= 4");
  int64_t r = static_cast<int64_t>(g.moduli.size());
  if (k1 < 1 || k1 > r || k2 < 1 || k2 > r || k1 == k2)
    throw std::invalid_argument("cyclic_certificate_characters: bad factor indices");
  if (sign != 1 && sign != -1)
    throw std::invalid_argument("cyclic_certificate_characters: sign must be +-1");
  std::vector<int64_t> a(g.moduli.size(), 0);
  int64_t l1 = g.moduli[static_cast<size_t>(k1 - 1)] / 4;
  int64_t l2 = g.moduli[static_cast<size_t>(k2 - 1)] / 4;
  a[static_cast<size_t>(k1 - 1)] = l1;
  a[static_cast<size_t>(k2 - 1)] =
      sign > 0 ? l2 : g.moduli[static_cast<size_t>(k2 - 1)] - l2;
  return {std::move(a)};
}

void validate_hom(const Homomorphism& f) {
  validate_group(f.from);
  validate_group(f.to);
  if (f.matrix.size() != f.to.moduli.size())
    throw std::invalid_argument("validate_hom: row count must match target rank");
  for (const auto& row : f.matrix)
    if (row.size() != f.from.moduli.size())
      throw std::invalid_argument("validate_hom: column count must match source rank");
  for (size_t i = 0; i < f.matrix.size(); ++i) {
    for (size_t j = 0; j < f.matrix[i].size(); ++j) {
      __int128 prod = static_cast<__int128>(f.from.moduli[j]) *
                      (f.matrix[i][j] % f.to.moduli[i]);
      if (prod % f.to.moduli[i] != 0)
        throw std::invalid_argument(
            "validate_hom: matrix does not define a homomorphism at entry (" +
            std::to_string(i) + "," + std::to_string(j) + ")");
    }
  }
}

GroupElement apply_hom(const Homomorphism& f, const GroupElement& x) {
  if (x.v.size() != f.from.moduli.size())
    throw std::invalid_argument("apply_hom: rank mismatch");
  std::vector<int64_t> y(f.to.moduli.size(), 0);
  for (size_t i = 0; i < y.size(); ++i) {
    int64_t m = f.to.moduli[i];
    __int128 acc = 0;
    for (size_t j = 0; j < x.v.size(); ++j) {
      int64_t mij = f.matrix[i][j] % m;
      if (mij < 0) mij += m;
      acc = (acc + static_cast<__int128>(mij) * x.v[j]) % m;
    }
    y[i] = static_cast<int64_t>(acc);
  }
  return {std::move(y)};
}

ElementSet apply_hom(const Homomorphism& f, const ElementSet& e) {
  ElementSet out;
  out.reserve(e.size());
  for (const GroupElement& x : e) out.push_back(apply_hom(f, x));
  return normalize_set(f.to, std::move(out));
}

std::string to_string(const FiniteGroup& g, const GroupElement& x) {
  (void)g;
  std::string s = "(";
  for (size_t i = 0; i < x.v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(x.v[i]);
  }
  return s + ")";
}

namespace {

std::vector<int64_t> parse_tuple(const std::string& tuple, const char* what) {
  std::string s;
  for (char c : tuple)
    if (!std::isspace(static_cast<unsigned char>(c)) && c != '(' && c != ')') s.push_back(c);
  std::vector<int64_t> coords;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw std::invalid_argument(std::string(what) + ": empty coordinate");
    try {
      coords.push_back(std::stoll(item));
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string(what) + ": bad coordinate '" + item + "'");
    }
  }
  return coords;
}

}  // namespace

GroupElement parse_element(const FiniteGroup& g, const std::string& tuple) {
  return make_element(g, parse_tuple(tuple, "parse_element"));
}

std::string to_string(const FiniteGroup& g, const CharacterVec& chi) {
  (void)g;
  std::string s = "(";
  for (size_t i = 0; i < chi.a.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(chi.a[i]);
  }
  return s + ")";
}

CharacterVec parse_character(const FiniteGroup& g, const std::string& tuple) {
  return make_character(g, parse_tuple(tuple, "parse_character"));
}

}  // namespace qch
