#include "doctest.h"

#include "qch/finite_group.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

using qch::CharacterSet;
using qch::CharacterVec;
using qch::ElementSet;
using qch::FiniteGroup;
using qch::GroupElement;
using qch::Homomorphism;

namespace {

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

bool subset(const ElementSet& a, const ElementSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool subset(const CharacterSet& a, const CharacterSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// Any matrix with matrix[i][j] a multiple of m_to[i]/gcd(m_to[i], m_from[j])
// gives a well-defined homomorphism.
Homomorphism random_hom(std::mt19937_64& rng, FiniteGroup from, FiniteGroup to) {
  Homomorphism f{std::move(from), std::move(to), {}};
  f.matrix.resize(f.to.moduli.size());
  for (size_t i = 0; i < f.to.moduli.size(); ++i) {
    for (size_t j = 0; j < f.from.moduli.size(); ++j) {
      int64_t step = f.to.moduli[i] / std::gcd(f.to.moduli[i], f.from.moduli[j]);
      int64_t slots = f.to.moduli[i] / step;
      f.matrix[i].push_back(step * static_cast<int64_t>(rng() % slots));
    }
  }
  qch::validate_hom(f);
  return f;
}

int64_t element_order(const FiniteGroup& g, const GroupElement& x) {
  int64_t ord = 1;
  for (size_t i = 0; i < g.moduli.size(); ++i)
    ord = std::lcm(ord, g.moduli[i] / std::gcd(g.moduli[i], x.v[i]));
  return ord;
}

}  // namespace

TEST_SUITE("properties") {
  TEST_CASE("polars reverse inclusions") {
    std::mt19937_64 rng(7001);
    for (int trial = 0; trial < 100; ++trial) {
      FiniteGroup g = random_group(rng);
      ElementSet e = random_set(rng, g, 6);
      ElementSet f = e;
      ElementSet extra = random_set(rng, g, 4);
      f.insert(f.end(), extra.begin(), extra.end());
      f = qch::normalize_set(g, f);
      REQUIRE(subset(e, f));
      CharacterSet pe = qch::polar(g, e);
      CharacterSet pf = qch::polar(g, f);
      CHECK(subset(pf, pe));
      CHECK(subset(qch::prepolar(g, pe), qch::prepolar(g, pf)));
    }
  }

  TEST_CASE("the hull is a closure operator") {
    std::mt19937_64 rng(7002);
    for (int trial = 0; trial < 100; ++trial) {
      FiniteGroup g = random_group(rng);
      ElementSet e = random_set(rng, g, 6);
      ElementSet h = qch::hull(g, e);
      CHECK(subset(e, h));
      CHECK(qch::hull(g, h) == h);
      CHECK(std::binary_search(h.begin(), h.end(), qch::zero_element(g)));
      for (const GroupElement& x : h)
        CHECK(std::binary_search(h.begin(), h.end(), qch::neg_element(g, x)));
      ElementSet f = e;
      ElementSet extra = random_set(rng, g, 4);
      f.insert(f.end(), extra.begin(), extra.end());
      f = qch::normalize_set(g, f);
      CHECK(subset(h, qch::hull(g, f)));
    }
  }

  TEST_CASE("homomorphic images of hulls land in hulls of images") {
    std::mt19937_64 rng(7003);
    for (int trial = 0; trial < 100; ++trial) {
      FiniteGroup from = random_group(rng);
      FiniteGroup to = random_group(rng);
      Homomorphism f = random_hom(rng, from, to);
      ElementSet e = random_set(rng, from, 6);
      ElementSet image_of_hull = qch::apply_hom(f, qch::hull(from, e));
      ElementSet hull_of_image = qch::hull(to, qch::apply_hom(f, e));
      CHECK(subset(image_of_hull, hull_of_image));
    }
  }

  TEST_CASE("hulls restrict to open subgroups") {
    std::mt19937_64 rng(7004);
    for (int trial = 0; trial < 100; ++trial) {
      FiniteGroup g = random_group(rng);
      const size_t rank = g.moduli.size();
      // H = product of the subgroups d_i Z_{m_i}, embedded by a diagonal of
      // units and a modulus-preserving permutation
      std::vector<int64_t> d(rank), h(rank), u(rank);
      for (size_t i = 0; i < rank; ++i) {
        std::vector<int64_t> divs;
        for (int64_t c = 1; c <= g.moduli[i]; ++c)
          if (g.moduli[i] % c == 0) divs.push_back(c);
        d[i] = divs[rng() % divs.size()];
        h[i] = g.moduli[i] / d[i];
        do {
          u[i] = 1 + static_cast<int64_t>(rng() % g.moduli[i]);
        } while (std::gcd(u[i], g.moduli[i]) != 1);
      }
      std::vector<size_t> pi(rank);
      for (size_t i = 0; i < rank; ++i) pi[i] = i;
      for (size_t i = 0; i < rank; ++i)
        for (size_t j = i + 1; j < rank; ++j)
          if (g.moduli[pi[i]] == g.moduli[pi[j]] && rng() % 2) std::swap(pi[i], pi[j]);

      FiniteGroup habs{h};
      Homomorphism inject{habs, g, {}};
      inject.matrix.assign(rank, std::vector<int64_t>(rank, 0));
      for (size_t j = 0; j < rank; ++j) inject.matrix[pi[j]][j] = d[j] * u[j] % g.moduli[pi[j]];
      qch::validate_hom(inject);

      ElementSet e = random_set(rng, habs, 5);
      ElementSet inner = qch::apply_hom(inject, qch::hull(habs, e));
      ElementSet outer = qch::hull(g, qch::apply_hom(inject, e));
      CHECK(inner == outer);
    }
  }

  TEST_CASE("sets of elements of order at most 3 hull to their span") {
    // exhaustive over all subsets of the small 2- and 3-torsion groups
    for (const char* literal : {"Z2", "Z3", "Z2xZ2", "Z3xZ3", "Z2xZ2xZ2"}) {
      FiniteGroup g = qch::parse_group(literal);
      std::vector<GroupElement> elems = qch::all_elements(g);
      REQUIRE(elems.size() <= 9);
      for (uint64_t mask = 0; mask < (uint64_t(1) << elems.size()); ++mask) {
        ElementSet s{qch::zero_element(g)};
        for (size_t i = 0; i < elems.size(); ++i)
          if (mask & (uint64_t(1) << i)) s.push_back(elems[i]);
        s = qch::normalize_set(g, s);
        CHECK(qch::hull(g, s) == qch::generated_subgroup(g, s));
      }
    }
    // random subsets of larger homogeneous groups
    std::mt19937_64 rng(7005);
    for (int trial = 0; trial < 50; ++trial) {
      int64_t q = rng() % 2 ? 2 : 3;
      size_t rank = 1 + rng() % 3;
      FiniteGroup g{std::vector<int64_t>(rank, q)};
      ElementSet s = random_set(rng, g, 5);
      s.push_back(qch::zero_element(g));
      s = qch::normalize_set(g, s);
      CHECK(qch::hull(g, s) == qch::generated_subgroup(g, s));
    }
    // in mixed groups the same holds for sets of order <= 3 elements
    for (int trial = 0; trial < 50; ++trial) {
      FiniteGroup g = random_group(rng, 60);
      ElementSet s{qch::zero_element(g)};
      for (const GroupElement& x : qch::all_elements(g))
        if (element_order(g, x) <= 3 && rng() % 2) s.push_back(x);
      s = qch::normalize_set(g, s);
      CHECK(qch::hull(g, s) == qch::generated_subgroup(g, s));
    }
  }

  TEST_CASE("an order-6 element defeats the span collapse") {
    // {0, +-(1,1)} in Z2xZ3 is quasi-convex but spans the whole group, so
    // the order bound in the previous case is sharp
    FiniteGroup g = qch::parse_group("Z2xZ3");
    ElementSet s = qch::normalize_set(
        g, {qch::zero_element(g), qch::make_element(g, {1, 1}), qch::make_element(g, {1, 2})});
    CHECK(qch::is_quasi_convex(g, s).quasi_convex);
    CHECK(qch::hull(g, s) == s);
    CHECK(qch::generated_subgroup(g, s).size() == 6);
  }

  TEST_CASE("standard null sets are quasi-convex exactly over large moduli") {
    std::mt19937_64 rng(7006);
    for (int trial = 0; trial < 30; ++trial) {
      size_t rank = 1 + rng() % 4;
      std::vector<int64_t> m;
      int64_t order = 1;
      for (size_t i = 0; i < rank; ++i) {
        m.push_back(4 + static_cast<int64_t>(rng() % 6));
        order *= m.back();
      }
      if (order > 1500) {
        --trial;
        continue;
      }
      FiniteGroup g{m};
      ElementSet s = qch::standard_null_set(g);
      CAPTURE(qch::to_string(g));
      CHECK(qch::is_quasi_convex(g, s).quasi_convex);
    }
    for (size_t r : {2, 3}) {
      FiniteGroup g{std::vector<int64_t>(r, 3)};
      ElementSet s = qch::standard_null_set(g);
      qch::QcReport rep = qch::is_quasi_convex(g, s);
      CHECK_FALSE(rep.quasi_convex);
      CHECK(qch::hull(g, s) == qch::all_elements(g));
    }
  }
}
