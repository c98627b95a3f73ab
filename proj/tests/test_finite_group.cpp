#include "doctest.h"

#include "qch/finite_group.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

using qch::CharacterSet;
using qch::CharacterVec;
using qch::ElementSet;
using qch::FiniteGroup;
using qch::GroupElement;
using qch::Int;

namespace {

// Independent polar oracle: characters enumerated by a plain odometer, the
// pairing evaluated with int64 fractions over the lcm of the moduli.
int64_t group_lcm(const FiniteGroup& g) {
  int64_t l = 1;
  for (int64_t m : g.moduli) l = std::lcm(l, m);
  return l;
}

bool naive_pair_in_Tplus(const FiniteGroup& g, const std::vector<int64_t>& a,
                         const std::vector<int64_t>& x, int64_t l) {
  int64_t v = 0;
  for (size_t i = 0; i < a.size(); ++i) v = (v + a[i] * x[i] % l * (l / g.moduli[i])) % l;
  if (v < 0) v += l;
  return 4 * std::min(v, l - v) <= l;
}

CharacterSet naive_polar(const FiniteGroup& g, const ElementSet& e) {
  const int64_t l = group_lcm(g);
  CharacterSet out;
  std::vector<int64_t> a(g.moduli.size(), 0);
  for (;;) {
    bool all_in = true;
    for (const GroupElement& x : e)
      if (!naive_pair_in_Tplus(g, a, x.v, l)) {
        all_in = false;
        break;
      }
    if (all_in) out.push_back(CharacterVec{a});
    size_t i = a.size();
    for (;;) {
      if (i == 0) {
        std::sort(out.begin(), out.end());
        return out;
      }
      --i;
      if (a[i] + 1 < g.moduli[i]) {
        ++a[i];
        break;
      }
      a[i] = 0;
    }
  }
}

ElementSet naive_prepolar(const FiniteGroup& g, const CharacterSet& chars) {
  const int64_t l = group_lcm(g);
  ElementSet out;
  for (const GroupElement& x : qch::all_elements(g)) {
    bool all_in = true;
    for (const CharacterVec& a : chars)
      if (!naive_pair_in_Tplus(g, a.a, x.v, l)) {
        all_in = false;
        break;
      }
    if (all_in) out.push_back(x);
  }
  return out;  // all_elements is already sorted
}

FiniteGroup random_group(std::mt19937_64& rng, int64_t max_order = 300) {
  for (;;) {
    size_t rank = 1 + rng() % 3;
    std::vector<int64_t> m;
    int64_t order = 1;
    for (size_t i = 0; i < rank; ++i) {
      m.push_back(1 + static_cast<int64_t>(rng() % 9));
      order *= m.back();
    }
    if (order <= max_order) return FiniteGroup{m};
  }
}

ElementSet random_set(std::mt19937_64& rng, const FiniteGroup& g, size_t max_size) {
  ElementSet e;
  size_t n = 1 + rng() % max_size;
  for (size_t i = 0; i < n; ++i) {
    std::vector<int64_t> v;
    for (int64_t m : g.moduli) v.push_back(static_cast<int64_t>(rng() % m));
    e.push_back(qch::make_element(g, v));
  }
  return qch::normalize_set(g, e);
}

}  // namespace

TEST_SUITE("finite_group") {
  TEST_CASE("group literals round trip and validate") {
    FiniteGroup g = qch::parse_group("Z5xZ6xZ7");
    CHECK(g.moduli == std::vector<int64_t>{5, 6, 7});
    CHECK(qch::to_string(g) == "Z5xZ6xZ7");
    CHECK(qch::group_order(g) == 210);
    CHECK(qch::parse_group("Z1").moduli == std::vector<int64_t>{1});
    CHECK_THROWS_AS(qch::parse_group(""), std::invalid_argument);
    CHECK_THROWS_AS(qch::parse_group("Z0"), std::invalid_argument);
    CHECK_THROWS_AS(qch::parse_group("Z4x"), std::invalid_argument);
    CHECK_THROWS_AS(qch::parse_group("5x6"), std::invalid_argument);
  }

  TEST_CASE("element arithmetic reduces coordinatewise") {
    FiniteGroup g = qch::parse_group("Z4xZ6");
    GroupElement x = qch::make_element(g, {7, -1});
    CHECK(x.v == std::vector<int64_t>{3, 5});
    CHECK(qch::add_elements(g, x, x).v == std::vector<int64_t>{2, 4});
    CHECK(qch::neg_element(g, x).v == std::vector<int64_t>{1, 1});
    CHECK(qch::zero_element(g).v == std::vector<int64_t>{0, 0});
    CHECK_THROWS_AS(qch::make_element(g, {0}), std::invalid_argument);
  }

  TEST_CASE("pairing is biadditive and matches the int64 oracle") {
    std::mt19937_64 rng(2026);
    for (int t = 0; t < 60; ++t) {
      FiniteGroup g = random_group(rng);
      const int64_t l = group_lcm(g);
      std::vector<int64_t> av, xv, yv;
      for (int64_t m : g.moduli) {
        av.push_back(static_cast<int64_t>(rng() % m));
        xv.push_back(static_cast<int64_t>(rng() % m));
        yv.push_back(static_cast<int64_t>(rng() % m));
      }
      CharacterVec chi = qch::make_character(g, av);
      GroupElement x = qch::make_element(g, xv);
      GroupElement y = qch::make_element(g, yv);
      CHECK(qch::pairing(g, chi, qch::add_elements(g, x, y)) ==
            qch::add(qch::pairing(g, chi, x), qch::pairing(g, chi, y)));
      CHECK(qch::in_T_plus(qch::pairing(g, chi, x)) ==
            naive_pair_in_Tplus(g, chi.a, x.v, l));
    }
  }

  TEST_CASE("all_elements is the sorted full enumeration") {
    FiniteGroup g = qch::parse_group("Z3xZ4");
    std::vector<GroupElement> all = qch::all_elements(g);
    CHECK(all.size() == 12);
    CHECK(std::is_sorted(all.begin(), all.end()));
    CHECK(std::adjacent_find(all.begin(), all.end()) == all.end());
  }

  TEST_CASE("polar and prepolar match the oracle on random sets") {
    std::mt19937_64 rng(77);
    for (int t = 0; t < 40; ++t) {
      FiniteGroup g = random_group(rng);
      ElementSet e = random_set(rng, g, 6);
      CharacterSet pol = qch::polar(g, e);
      CHECK(pol == naive_polar(g, e));
      CHECK(qch::prepolar(g, pol) == naive_prepolar(g, pol));
    }
  }

  TEST_CASE("hull equals prepolar of polar and certificates verify") {
    std::mt19937_64 rng(78);
    for (int t = 0; t < 25; ++t) {
      FiniteGroup g = random_group(rng);
      ElementSet e = random_set(rng, g, 5);
      ElementSet h = qch::hull(g, e);
      CHECK(h == naive_prepolar(g, naive_polar(g, e)));

      qch::QcReport qc = qch::is_quasi_convex(g, e);
      CHECK(qc.certificate.hull == h);
      CHECK(qc.quasi_convex == (h == e));
      CHECK(Int(static_cast<int64_t>(h.size() + qc.certificate.excluded.size())) ==
            qch::group_order(g));
      CharacterSet pol = naive_polar(g, e);
      for (const qch::ExcludedWitness& w : qc.certificate.excluded) {
        CHECK(std::binary_search(pol.begin(), pol.end(), w.chi));
        CHECK(qch::pairing(g, w.chi, w.x) == w.value);
        CHECK_FALSE(qch::in_T_plus(w.value));
        CHECK_FALSE(std::binary_search(h.begin(), h.end(), w.x));
      }
    }
  }

  TEST_CASE("standard null set lists 0 and the signed unit vectors") {
    FiniteGroup g = qch::parse_group("Z5xZ6xZ7");
    ElementSet s = qch::standard_null_set(g);
    CHECK(s.size() == 7);
    CHECK(std::binary_search(s.begin(), s.end(), qch::make_element(g, {4, 0, 0})));

    // order-2 factors give e_k = -e_k, trivial factors contribute nothing
    FiniteGroup h = qch::parse_group("Z2xZ1xZ4");
    ElementSet t = qch::standard_null_set(h);
    ElementSet expect = qch::normalize_set(
        h, {qch::make_element(h, {0, 0, 0}), qch::make_element(h, {1, 0, 0}),
            qch::make_element(h, {0, 0, 1}), qch::make_element(h, {0, 0, 3})});
    CHECK(t == expect);
  }

  TEST_CASE("pair characters lie in the polar and exclude the mixed points") {
    std::mt19937_64 rng(79);
    for (int t = 0; t < 25; ++t) {
      std::vector<int64_t> m;
      size_t rank = 2 + rng() % 3;
      for (size_t i = 0; i < rank; ++i) m.push_back(4 + static_cast<int64_t>(rng() % 6));
      FiniteGroup g{m};
      ElementSet s = qch::standard_null_set(g);
      CharacterSet pol = naive_polar(g, s);
      for (int64_t k1 = 1; k1 <= static_cast<int64_t>(rank); ++k1)
        for (int64_t k2 = 1; k2 <= static_cast<int64_t>(rank); ++k2) {
          if (k1 == k2) continue;
          for (int sign : {1, -1}) {
            CharacterVec chi = qch::cyclic_certificate_characters(g, k1, k2, sign);
            CHECK(std::binary_search(pol.begin(), pol.end(), chi));
            std::vector<int64_t> xv(rank, 0);
            xv[static_cast<size_t>(k1 - 1)] = 1;
            xv[static_cast<size_t>(k2 - 1)] = sign > 0 ? 1 : m[static_cast<size_t>(k2 - 1)] - 1;
            GroupElement x = qch::make_element(g, xv);
            CHECK_FALSE(qch::in_T_plus(qch::pairing(g, chi, x)));
          }
        }
    }
    CHECK_THROWS_AS(
        qch::cyclic_certificate_characters(qch::parse_group("Z3xZ5"), 1, 2, 1),
        std::invalid_argument);
  }

  TEST_CASE("generated subgroup is the additive closure") {
    std::mt19937_64 rng(80);
    for (int t = 0; t < 20; ++t) {
      FiniteGroup g = random_group(rng, 150);
      ElementSet s = random_set(rng, g, 4);
      ElementSet sub = qch::generated_subgroup(g, s);
      CHECK(std::binary_search(sub.begin(), sub.end(), qch::zero_element(g)));
      for (const GroupElement& x : s) CHECK(std::binary_search(sub.begin(), sub.end(), x));
      for (const GroupElement& x : sub)
        for (const GroupElement& y : sub)
          CHECK(std::binary_search(sub.begin(), sub.end(), qch::add_elements(g, x, y)));
    }
  }

  TEST_CASE("homomorphisms validate and map sets elementwise") {
    FiniteGroup z4 = qch::parse_group("Z4");
    FiniteGroup z2 = qch::parse_group("Z2");
    qch::Homomorphism red{z4, z2, {{1}}};
    CHECK_NOTHROW(qch::validate_hom(red));
    ElementSet e = qch::normalize_set(
        z4, {qch::make_element(z4, {0}), qch::make_element(z4, {1})});
    ElementSet img = qch::apply_hom(red, e);
    CHECK(img == qch::normalize_set(
                     z2, {qch::make_element(z2, {0}), qch::make_element(z2, {1})}));

    // x -> 2x into Z3 is not well-defined on Z4
    qch::Homomorphism bad{z4, qch::parse_group("Z3"), {{2}}};
    CHECK_THROWS_AS(qch::validate_hom(bad), std::invalid_argument);

    FiniteGroup g = qch::parse_group("Z4xZ6");
    qch::Homomorphism id{g, g, {{1, 0}, {0, 1}}};
    qch::Homomorphism zero{g, g, {{0, 0}, {0, 0}}};
    ElementSet s = qch::normalize_set(
        g, {qch::make_element(g, {1, 2}), qch::make_element(g, {3, 5})});
    CHECK(qch::apply_hom(id, s) == s);
    CHECK(qch::apply_hom(zero, s) ==
          ElementSet{qch::zero_element(g)});
  }

  TEST_CASE("element and character literals round trip") {
    FiniteGroup g = qch::parse_group("Z4xZ6xZ9");
    GroupElement x = qch::make_element(g, {3, 1, 8});
    CHECK(qch::to_string(g, x) == "(3,1,8)");
    CHECK(qch::parse_element(g, "(3,1,8)") == x);
    CHECK(qch::parse_element(g, " ( 3 , 1 , 8 ) ") == x);
    CharacterVec chi = qch::make_character(g, {1, 5, 2});
    CHECK(qch::parse_character(g, qch::to_string(g, chi)) == chi);
    CHECK_THROWS_AS(qch::parse_element(g, "(1,2)"), std::invalid_argument);
    CHECK_THROWS_AS(qch::parse_element(g, "(1,2,x)"), std::invalid_argument);
    CHECK_THROWS_AS(qch::parse_element(g, "(1,,3)"), std::invalid_argument);
  }
}
