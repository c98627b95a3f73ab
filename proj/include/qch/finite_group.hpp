#pragma once

#include "qch/circle.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace qch {

// Product of cyclic groups Z_{m_1} x ... x Z_{m_r}, every m_i >= 1.
struct FiniteGroup {
  std::vector<int64_t> moduli;
};

void validate_group(const FiniteGroup& g);
Int group_order(const FiniteGroup& g);
FiniteGroup parse_group(const std::string& literal);  // "Z5xZ6xZ7"
std::string to_string(const FiniteGroup& g);

// Coordinates are reduced mod the matching modulus: 0 <= v_i < m_i.
struct GroupElement {
  std::vector<int64_t> v;
};
// Character coefficients, same shape; the character maps x to
// sum a_i x_i / m_i mod 1.
struct CharacterVec {
  std::vector<int64_t> a;
};

inline bool operator==(const GroupElement& x, const GroupElement& y) { return x.v == y.v; }
inline bool operator<(const GroupElement& x, const GroupElement& y) { return x.v < y.v; }
inline bool operator==(const CharacterVec& x, const CharacterVec& y) { return x.a == y.a; }
inline bool operator<(const CharacterVec& x, const CharacterVec& y) { return x.a < y.a; }

GroupElement make_element(const FiniteGroup& g, std::vector<int64_t> coords);
CharacterVec make_character(const FiniteGroup& g, std::vector<int64_t> coeffs);
GroupElement zero_element(const FiniteGroup& g);
GroupElement neg_element(const FiniteGroup& g, const GroupElement& x);
GroupElement add_elements(const FiniteGroup& g, const GroupElement& x, const GroupElement& y);

CirclePoint pairing(const FiniteGroup& g, const CharacterVec& chi, const GroupElement& x);

// All elements / characters in lexicographic coordinate order.
std::vector<GroupElement> all_elements(const FiniteGroup& g);

using ElementSet = std::vector<GroupElement>;    // sorted, unique
using CharacterSet = std::vector<CharacterVec>;  // sorted, unique

ElementSet normalize_set(const FiniteGroup& g, ElementSet e);

// polar(E)  = characters sending all of E into T_+.
// prepolar(A) = group elements sent into T_+ by all of A.
CharacterSet polar(const FiniteGroup& g, const ElementSet& e);
ElementSet prepolar(const FiniteGroup& g, const CharacterSet& a);
ElementSet hull(const FiniteGroup& g, const ElementSet& e);

struct ExcludedWitness {
  GroupElement x;
  CharacterVec chi;  // lies in polar(E); value at x outside T_+
  CirclePoint value;
};

struct HullCertificate {
  ElementSet hull;
  std::vector<ExcludedWitness> excluded;  // one witness per element outside the hull
};

struct QcReport {
  bool quasi_convex{false};
  HullCertificate certificate;
};

QcReport is_quasi_convex(const FiniteGroup& g, const ElementSet& e);

ElementSet generated_subgroup(const FiniteGroup& g, const ElementSet& s);

// {0} together with +-e_k for every factor with m_k > 1 (deduplicated).
ElementSet standard_null_set(const FiniteGroup& g);

// Separating character l_{k1} e_{k1} + sign * l_{k2} e_{k2} with l_k = floor(m_k/4).
// Indices are 1-based; requires every m_i >= 4 and k1 != k2.
CharacterVec cyclic_certificate_characters(const FiniteGroup& g, int64_t k1, int64_t k2,
                                           int sign);

// f(x)_i = sum_j matrix[i][j] x_j mod m_i in the target group.
struct Homomorphism {
  FiniteGroup from;
  FiniteGroup to;
  std::vector<std::vector<int64_t>> matrix;  // to.rank rows, from.rank columns
};

// Well-defined iff m_from[j] * matrix[i][j] = 0 mod m_to[i] for all i, j.
void validate_hom(const Homomorphism& f);
GroupElement apply_hom(const Homomorphism& f, const GroupElement& x);
ElementSet apply_hom(const Homomorphism& f, const ElementSet& e);

std::string to_string(const FiniteGroup& g, const GroupElement& x);
GroupElement parse_element(const FiniteGroup& g, const std::string& tuple);  // "(1,0,2)"
std::string to_string(const FiniteGroup& g, const CharacterVec& chi);
CharacterVec parse_character(const FiniteGroup& g, const std::string& tuple);

}  // namespace qch
