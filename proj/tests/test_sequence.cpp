#include <doctest.h>

#include <cmath>
#include <vector>

#include "ivr/payoff.hpp"
#include "ivr/rng.hpp"
#include "ivr/sequence.hpp"

using namespace ivr;

TEST_CASE("prefix sums and heights") {
  const std::vector<double> v{1.0, -1.0, 1.0, 1.0};
  const PrefixSums p = build_prefix_sums(v);
  CHECK(p.horizon() == 4);
  CHECK(p.c[0] == 0.0);
  CHECK(p.c[4] == 2.0);
  CHECK(p.height({1, 4}) == doctest::Approx(2.0));
  CHECK(p.height({2, 2}) == doctest::Approx(-1.0));
  CHECK(p.height({2, 3}) == doctest::Approx(0.0));
  CHECK(height(p, {3, 4}) == doctest::Approx(2.0));
  CHECK_THROWS_AS((void)p.height({0, 2}), validation_error);
  CHECK_THROWS_AS((void)p.height({2, 5}), validation_error);
  CHECK_THROWS_AS((void)p.height({3, 2}), validation_error);
}

TEST_CASE("height is additive across a cut") {
  Rng rng(7);
  std::vector<double> v(64);
  for (double& x : v) x = rng.next_unit() * 2.0 - 1.0;
  const PrefixSums p = build_prefix_sums(v);
  for (int i = 1; i <= 64; ++i) {
    for (int j = i; j <= 64; ++j) {
      for (int k = i; k < j; ++k) {
        CHECK(std::fabs(p.height({i, k}) + p.height({k + 1, j}) - p.height({i, j})) <= 1e-12);
      }
    }
  }
}

TEST_CASE("sequence validates range at construction") {
  CHECK_NOTHROW(Sequence({1.0, -1.0, 0.0, 0.25}));
  CHECK_THROWS_WITH_AS(Sequence({0.0, 1.5}), doctest::Contains("position 2"), validation_error);
  CHECK_THROWS_AS(Sequence({-1.0000001}), validation_error);
  const Sequence s = Sequence::from_bits({1, -1, 1});
  CHECK(s.length() == 3);
  CHECK(s[1] == -1.0);
}

TEST_CASE("partition covers requires an exact tiling") {
  CHECK(Partition{{{1, 2}, {3, 4}}}.covers(4));
  CHECK(Partition{{{1, 4}}}.covers(4));
  CHECK_FALSE(Partition{{{1, 2}, {4, 4}}}.covers(4));   // gap
  CHECK_FALSE(Partition{{{1, 3}, {3, 4}}}.covers(4));   // overlap
  CHECK_FALSE(Partition{{{3, 4}, {1, 2}}}.covers(4));   // out of order
  CHECK_FALSE(Partition{{{1, 2}}}.covers(4));           // short
  CHECK(Partition{}.covers(0));
  CHECK_FALSE(Partition{}.covers(1));
}

TEST_CASE("power-of-two and alignment predicates") {
  CHECK(is_power_of_two(1));
  CHECK(is_power_of_two(2));
  CHECK(is_power_of_two(1024));
  CHECK_FALSE(is_power_of_two(0));
  CHECK_FALSE(is_power_of_two(3));
  CHECK_FALSE(is_power_of_two(-4));

  CHECK(is_aligned({1, 8}, 8));
  CHECK(is_aligned({3, 4}, 8));
  CHECK(is_aligned({5, 8}, 8));
  CHECK(is_aligned({7, 7}, 8));
  CHECK_FALSE(is_aligned({2, 3}, 8));   // dyadic length, off-grid start
  CHECK_FALSE(is_aligned({1, 3}, 8));   // non-dyadic length
  CHECK_FALSE(is_aligned({3, 6}, 8));   // length 4 starting at 3
}

TEST_CASE("aligned decomposition on known intervals") {
  const Partition a = aligned_decompose({3, 6}, 8);
  REQUIRE(a.size() == 2);
  CHECK(a.intervals[0] == Interval{3, 4});
  CHECK(a.intervals[1] == Interval{5, 6});

  const Partition b = aligned_decompose({2, 8}, 8);
  REQUIRE(b.size() == 3);
  CHECK(b.intervals[0] == Interval{2, 2});
  CHECK(b.intervals[1] == Interval{3, 4});
  CHECK(b.intervals[2] == Interval{5, 8});

  const Partition c = aligned_decompose({1, 8}, 8);
  REQUIRE(c.size() == 1);
  CHECK(c.intervals[0] == Interval{1, 8});
}

TEST_CASE("mid-straddling interval splits into two equal aligned halves") {
  // [T/4+1, 3T/4] has length T/2 and straddles the midpoint, so it cannot be
  // aligned itself; it decomposes into exactly two aligned pieces of length
  // T/4 on either side of the midpoint.
  for (int T = 8; T <= 1024; T *= 2) {
    const Partition p = aligned_decompose({T / 4 + 1, 3 * T / 4}, T);
    REQUIRE(p.size() == 2);
    CHECK(p.intervals[0] == Interval{T / 4 + 1, T / 2});
    CHECK(p.intervals[1] == Interval{T / 2 + 1, 3 * T / 4});
    CHECK(p.intervals[0].length() == T / 4);
    CHECK(is_aligned(p.intervals[0], T));
    CHECK(is_aligned(p.intervals[1], T));
  }
}

TEST_CASE("aligned decomposition is an ordered aligned tiling of its input") {
  for (int T = 1; T <= 256; T *= 2) {
    for (int i = 1; i <= T; ++i) {
      for (int j = i; j <= T; ++j) {
        const Partition p = aligned_decompose({i, j}, T);
        REQUIRE(p.size() >= 1);
        int cursor = i;
        for (const Interval& piece : p.intervals) {
          CHECK(piece.start == cursor);
          CHECK(is_aligned(piece, T));
          cursor = piece.end + 1;
        }
        CHECK(cursor == j + 1);
      }
    }
  }
}

TEST_CASE("sqrt-sum of aligned piece lengths stays within the penalty factor") {
  // sum(sqrt(len)) <= sqrt(2)/(sqrt(2)-1) * sqrt(|iv|): piece lengths rise to
  // a peak then fall as powers of two, so each side is dominated by a
  // geometric series in sqrt(2). Exhaustive over all intervals, dyadic T.
  for (int T = 1; T <= 256; T *= 2) {
    for (int i = 1; i <= T; ++i) {
      for (int j = i; j <= T; ++j) {
        const Partition p = aligned_decompose({i, j}, T);
        double sqrt_sum = 0.0;
        for (const Interval& piece : p.intervals) {
          sqrt_sum += std::sqrt(static_cast<double>(piece.length()));
        }
        CHECK(sqrt_sum <= kAlignedPenaltyFactor * std::sqrt(static_cast<double>(j - i + 1)));
      }
    }
  }
}
