#include "doctest.h"

#include "qch/sequence_spec.hpp"

#include <stdexcept>

using qch::SeqMembership;
using qch::SeqMode;
using qch::SequenceSpec;

TEST_SUITE("sequence") {
  TEST_CASE("validation accepts strictly increasing non-negative indices over a prime") {
    CHECK_NOTHROW(qch::validate_spec({5, {0, 1, 2, 4}, SeqMode::exact}));
    CHECK_NOTHROW(qch::validate_spec({2, {3}, SeqMode::prefix}));
    CHECK_THROWS_AS(qch::validate_spec({6, {0, 1}, SeqMode::exact}), std::invalid_argument);
    CHECK_THROWS_AS(qch::validate_spec({5, {}, SeqMode::exact}), std::invalid_argument);
    CHECK_THROWS_AS(qch::validate_spec({5, {1, 1}, SeqMode::exact}), std::invalid_argument);
    CHECK_THROWS_AS(qch::validate_spec({5, {2, 1}, SeqMode::exact}), std::invalid_argument);
    CHECK_THROWS_AS(qch::validate_spec({5, {-1, 0}, SeqMode::exact}), std::invalid_argument);
  }

  TEST_CASE("exact mode decides every index") {
    SequenceSpec s{7, {0, 2, 5}, SeqMode::exact};
    CHECK(qch::seq_membership(s, 0) == SeqMembership::in);
    CHECK(qch::seq_membership(s, 1) == SeqMembership::out);
    CHECK(qch::seq_membership(s, 2) == SeqMembership::in);
    CHECK(qch::seq_membership(s, 5) == SeqMembership::in);
    CHECK(qch::seq_membership(s, 6) == SeqMembership::out);
    CHECK(qch::seq_membership(s, 100000) == SeqMembership::out);
    CHECK(qch::seq_contains(s, 2));
    CHECK_FALSE(qch::seq_contains(s, 3));
  }

  TEST_CASE("prefix mode is decisive below the last listed index, unknown past it") {
    SequenceSpec s{7, {0, 2, 5}, SeqMode::prefix};
    CHECK(qch::seq_membership(s, 1) == SeqMembership::out);
    CHECK(qch::seq_membership(s, 4) == SeqMembership::out);
    CHECK(qch::seq_membership(s, 5) == SeqMembership::in);
    CHECK(qch::seq_membership(s, 6) == SeqMembership::unknown);
    CHECK(qch::seq_membership(s, 1000) == SeqMembership::unknown);
  }

  TEST_CASE("consulting the unknown tail raises the needed range") {
    SequenceSpec s{5, {0, 1, 3}, SeqMode::prefix};
    CHECK_THROWS_AS((void)qch::seq_contains(s, 4), qch::PrefixTooShort);
    bool threw = false;
    try {
      (void)qch::seq_contains(s, 9);
    } catch (const qch::PrefixTooShort& e) {
      threw = true;
      CHECK(e.needed_up_to == 9);
    }
    CHECK(threw);
  }

  TEST_CASE("literal round trip") {
    SequenceSpec s{11, {1, 3, 8}, SeqMode::prefix};
    SequenceSpec back = qch::parse_sequence_spec(qch::to_string(s));
    CHECK(back.p == s.p);
    CHECK(back.a == s.a);
    CHECK(back.mode == s.mode);

    SequenceSpec e = qch::parse_sequence_spec("p=5; a=0,1,2,4");
    CHECK(e.p == 5);
    CHECK(e.a == std::vector<int64_t>{0, 1, 2, 4});
    CHECK(e.mode == SeqMode::exact);
    CHECK(qch::parse_sequence_spec("p=5; a=0,1; mode=prefix").mode == SeqMode::prefix);

    CHECK_THROWS_AS(qch::parse_sequence_spec("p=5"), std::invalid_argument);
    CHECK_THROWS_AS(qch::parse_sequence_spec("p=4; a=0"), std::invalid_argument);
    CHECK_THROWS_AS(qch::parse_sequence_spec("a=0,1"), std::invalid_argument);
    CHECK_THROWS_AS(qch::parse_sequence_spec("p=5; a=0,1; mode=weird"),
                    std::invalid_argument);
  }
}
