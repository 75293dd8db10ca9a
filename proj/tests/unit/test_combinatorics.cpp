#include "doctest.h"

#include <random>
#include <set>
#include <stdexcept>

#include "opdeloc/combinatorics.hpp"

using namespace opdeloc;

TEST_CASE("binomial table") {
    CHECK(binomial(4, 2) == 6u);
    CHECK(binomial(16, 8) == 12870u);
    CHECK(binomial(24, 12) == 2704156u);
    CHECK(binomial(3, 5) == 0u);
    CHECK(binomial(64, 32) == 1832624140942590534ull);
}

TEST_CASE("rank of the six L=4, s=2 masks is a bijection onto 0..5") {
    std::set<std::uint64_t> ranks;
    for (Mask m = 0; m < 16; ++m)
        if (std::popcount(m) == 2) ranks.insert(colex_rank(m));
    CHECK(ranks == std::set<std::uint64_t>{0, 1, 2, 3, 4, 5});
    CHECK(colex_unrank(0, 4, 2) == 0b0011u);
}

TEST_CASE("unrank then rank is the identity over all C(12,6) masks") {
    const RankTable table(12);
    Mask m = low_bits(6);
    for (std::uint64_t i = 0; i < binomial(12, 6); ++i) {
        REQUIRE(colex_unrank(i, 12, 6) == m);
        REQUIRE(colex_rank(m) == i);
        REQUIRE(table.rank(m) == i);
        m = next_combination(m);
    }
}

TEST_CASE("table rank agrees with the direct rank on wide masks") {
    const RankTable table(40);
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 2000; ++trial) {
        const Mask m = rng() & low_bits(40);
        REQUIRE(table.rank(m) == colex_rank(m));
    }
}

TEST_CASE("unrank rejects bad arguments") {
    CHECK_THROWS_AS(colex_unrank(6, 4, 2), std::out_of_range);
    CHECK_THROWS_AS(colex_unrank(0, 4, 5), std::invalid_argument);
}
