#include "doctest.h"

#include "qch/torus.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

using qch::CirclePoint;
using qch::Int;
using qch::SeqMembership;
using qch::SeqMode;
using qch::SequenceSpec;
using namespace qch::torus;

namespace {

SequenceSpec full_prefix(int64_t p, int64_t top) {
  std::vector<int64_t> a(static_cast<size_t>(top + 1));
  for (int64_t k = 0; k <= top; ++k) a[static_cast<size_t>(k)] = k;
  return {p, a, SeqMode::prefix};
}

// Direct polar oracle for exact specs: n*K in T_+ checked index by index
// with no automatic-tail shortcut.
bool oracle_in_polar(const Int& n, const SequenceSpec& spec) {
  for (int64_t ak : spec.a) {
    Int den = qch::pow_int(spec.p, ak + 1);
    Int r = n % den;
    if (r < 0) r += den;
    if (4 * (std::min)(r, Int(den - r)) > den) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("torus") {
  TEST_CASE("null set points are the signed prime-power reciprocals") {
    SequenceSpec spec{5, {0, 2}, SeqMode::exact};
    std::vector<KPoint> pts = k_points(spec);
    REQUIRE(pts.size() == 4);
    CHECK(pts[0].value == qch::canonicalize(Int(1), Int(5)));
    CHECK(pts[1].value == qch::canonicalize(Int(-1), Int(5)));
    CHECK(pts[2].value == qch::canonicalize(Int(1), Int(125)));
    CHECK(pts[3].value == qch::canonicalize(Int(-1), Int(125)));

    // p = 2, a_0 = 0: 1/2 = -1/2 collapses to one point
    SequenceSpec two{2, {0, 1}, SeqMode::exact};
    CHECK(k_points(two).size() == 3);
  }

  TEST_CASE("point membership in K") {
    SequenceSpec spec{5, {0, 2}, SeqMode::exact};
    CHECK(point_in_K(spec, qch::canonicalize(Int(1), Int(5))) == SeqMembership::in);
    CHECK(point_in_K(spec, qch::canonicalize(Int(-1), Int(125))) == SeqMembership::in);
    CHECK(point_in_K(spec, qch::canonicalize(Int(1), Int(25))) == SeqMembership::out);
    CHECK(point_in_K(spec, qch::canonicalize(Int(2), Int(5))) == SeqMembership::out);
    CHECK(point_in_K(spec, qch::canonicalize(Int(1), Int(7))) == SeqMembership::out);

    SequenceSpec pre{5, {0, 2}, SeqMode::prefix};
    CHECK(point_in_K(pre, qch::canonicalize(Int(1), Int(25))) == SeqMembership::out);
    CHECK(point_in_K(pre, qch::canonicalize(Int(1), Int(625))) == SeqMembership::unknown);
  }

  TEST_CASE("polar decision agrees with the direct evaluation") {
    std::mt19937_64 rng(500);
    for (int t = 0; t < 400; ++t) {
      int64_t p = std::vector<int64_t>{2, 3, 5, 7, 11, 13}[rng() % 6];
      std::vector<int64_t> a;
      int64_t v = static_cast<int64_t>(rng() % 3);
      for (size_t i = 0, len = 1 + rng() % 4; i < len; ++i) {
        a.push_back(v);
        v += 1 + static_cast<int64_t>(rng() % 3);
      }
      SequenceSpec spec{p, a, SeqMode::exact};
      Int n = Int(1 + rng() % 10000) * (rng() % 2 ? 1 : -1);
      CHECK(char_in_polar(IntCharacter{n}, spec) == oracle_in_polar(n, spec));
    }
  }

  TEST_CASE("prefix mode only consults the tail when it has to") {
    SequenceSpec spec = full_prefix(5, 3);  // listed up to a = 3, tail unknown
    // 4|n| <= 5^5 decides membership from the listed range alone
    CHECK_NOTHROW(char_in_polar(IntCharacter{Int(700)}, spec));
    // a large character would need unlisted values
    CHECK_THROWS_AS(char_in_polar(IntCharacter{Int(100000)}, spec), qch::PrefixTooShort);
  }

  TEST_CASE("multiplier families: small m always lands in the polar") {
    for (int64_t p : {5, 7, 11, 13}) {
      SequenceSpec spec{p, {0, 1, 3}, SeqMode::exact};
      for (Int m = 1; 4 * m <= p; ++m) {
        CHECK(polar_family(spec, m) == PolarFamilyKind::all);
        for (int64_t k = 0; k <= 5; ++k)
          CHECK(char_in_polar(IntCharacter{m * qch::pow_int(p, k)}, spec));
      }
    }
  }

  TEST_CASE("multiplier families: large m dodges the listed indices") {
    for (int64_t p : {5, 7, 11, 13}) {
      SequenceSpec spec{p, {0, 1, 3}, SeqMode::exact};
      for (Int m = p / 4 + 1; m < p; ++m) {
        if (polar_family(spec, m) != PolarFamilyKind::all_except_a) continue;
        for (int64_t k = 0; k <= 5; ++k) {
          bool listed = std::find(spec.a.begin(), spec.a.end(), k) != spec.a.end();
          CHECK(char_in_polar(IntCharacter{m * qch::pow_int(p, k)}, spec) == !listed);
        }
      }
    }
  }

  TEST_CASE("proof-shaped combinations lie in the polar") {
    // m1*p^k1 + ... + ml*p^kl with distinct k_i and |m_i| <= floor(p/4)
    std::mt19937_64 rng(501);
    for (int64_t p : {5, 7, 11, 13}) {
      SequenceSpec spec = full_prefix(p, 9);
      for (int t = 0; t < 200; ++t) {
        size_t l = 1 + rng() % 3;
        std::vector<int64_t> ks;
        while (ks.size() < l) {
          int64_t k = static_cast<int64_t>(rng() % 7);
          if (std::find(ks.begin(), ks.end(), k) == ks.end()) ks.push_back(k);
        }
        Int n = 0;
        bool top_nonzero = false;
        std::sort(ks.begin(), ks.end());
        for (size_t i = 0; i < l; ++i) {
          int64_t m = static_cast<int64_t>(rng() % (p / 4 + 1)) * (rng() % 2 ? 1 : -1);
          if (i + 1 == l && m == 0) m = 1;
          if (i + 1 == l) top_nonzero = m != 0;
          n += Int(m) * qch::pow_int(p, ks[i]);
        }
        REQUIRE(top_nonzero);
        if (n == 0) continue;
        CHECK(char_in_polar(IntCharacter{n}, spec));
      }
    }
  }

  TEST_CASE("digit filter accepts exactly the two-sided unit positions") {
    SequenceSpec spec{5, {0, 2}, SeqMode::exact};
    CHECK(digit_filter(spec, qch::canonicalize(Int(1), Int(5))));
    CHECK(digit_filter(spec, qch::canonicalize(Int(-1), Int(125))));
    // 1/5 + 1/125: digits at positions 1 and 3, both admissible
    CHECK(digit_filter(spec, qch::canonicalize(Int(26), Int(125))));
    // digit 2 at an admissible position fails
    CHECK_FALSE(digit_filter(spec, qch::canonicalize(Int(2), Int(5))));
    // unit digit at an inadmissible position fails
    CHECK_FALSE(digit_filter(spec, qch::canonicalize(Int(1), Int(25))));
    CHECK(digit_filter(spec, qch::canonicalize(Int(0), Int(1))));
  }

  TEST_CASE("separation certificates verify and members are rejected") {
    SequenceSpec spec{5, {0, 1, 2}, SeqMode::exact};
    Int budget = default_budget(spec, 3);
    CHECK(budget == 4 * qch::pow_int(5, 4));
    for (int64_t num = 1; num < 125; ++num) {
      CirclePoint x = qch::canonicalize(Int(num), Int(125));
      if (point_in_K(spec, x) == SeqMembership::in) {
        CHECK_THROWS_AS(separate(spec, x, budget), std::invalid_argument);
        continue;
      }
      SeparateResult r = separate(spec, x, budget);
      REQUIRE(r.separated);
      REQUIRE(r.certificate.has_value());
      CHECK(r.certificate->point == x);
      CHECK(char_in_polar(r.certificate->chi, spec));
      CirclePoint v = qch::int_scale(r.certificate->chi.n, x);
      CHECK(v == r.certificate->value);
      CHECK_FALSE(qch::in_T_plus(v));
    }
  }

  TEST_CASE("every separator construction is exercised somewhere") {
    bool saw_filter = false, saw_pair = false;
    for (int64_t p : {5, 7}) {
      SequenceSpec spec{p, {0, 2, 4}, SeqMode::exact};
      VerificationReport rep = verify_quasi_convex(spec, 4, default_budget(spec, 4));
      CHECK(rep.all_separated);
      for (const PointOutcome& o : rep.outcomes) {
        switch (o.result.certificate->tag) {
          case qch::SepCase::filter_scan: saw_filter = true; break;
          case qch::SepCase::case1:
          case qch::SepCase::case2:
          case qch::SepCase::case3: saw_pair = true; break;
          default: break;
        }
      }
    }
    CHECK(saw_filter);
    CHECK(saw_pair);
  }

  TEST_CASE("sweep bookkeeping and worker-count invariance") {
    SequenceSpec spec{5, {0, 1, 2}, SeqMode::exact};
    VerificationReport one = verify_quasi_convex(spec, 3, default_budget(spec, 3), 1);
    VerificationReport four = verify_quasi_convex(spec, 3, default_budget(spec, 3), 4);
    CHECK(one.points_swept == 118);
    CHECK(one.members_skipped == 6);
    CHECK(one.all_separated);
    REQUIRE(one.outcomes.size() == four.outcomes.size());
    for (size_t i = 0; i < one.outcomes.size(); ++i) {
      CHECK(one.outcomes[i].point == four.outcomes[i].point);
      CHECK(one.outcomes[i].result.certificate->chi.n ==
            four.outcomes[i].result.certificate->chi.n);
    }
  }

  TEST_CASE("density probe at p in {2,3} finds nothing to separate") {
    for (int64_t p : {2, 3}) {
      SequenceSpec spec = full_prefix(p, p == 2 ? 10 : 7);
      ProbeReport rep = density_probe(spec, 3, Int(500));
      CHECK(rep.separated_count == 0);
      CHECK(rep.separated.empty());
      CHECK(rep.points_probed > 0);
    }
    SequenceSpec bad{5, {0, 1, 2, 3, 4, 5, 6, 7}, SeqMode::exact};
    CHECK_THROWS_AS(density_probe(bad, 2, Int(100)), std::invalid_argument);
  }
}
