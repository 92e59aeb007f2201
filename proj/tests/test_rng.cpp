#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "oracles.hpp"
#include "percolab/errors.hpp"
#include "percolab/rng.hpp"

using namespace percolab;

TEST(Lcg48, MatchesWideArithmetic) {
  std::uint64_t x = 0;
  Lcg48State s{0};
  for (int i = 0; i < 100000; ++i) {
    x = oracle::lcg_next(x);
    s = lcg_step(s);
    ASSERT_EQ(s.x, x) << "step " << i;
  }
  // States near the top of the range.
  for (std::uint64_t start : {kLcgMask, kLcgMask - 1, kLcgMask / 3}) {
    EXPECT_EQ(lcg_step({start}).x, oracle::lcg_next(start));
  }
}

TEST(Lcg48, SourceFromStateReplaysSteps) {
  RandomSource src = RandomSource::from_lcg_state({12345});
  Lcg48State s{12345};
  for (int i = 0; i < 10; ++i) {
    s = lcg_step(s);
    EXPECT_EQ(src.next_bits(), s.x);
  }
}

TEST(RandomSource, StreamsAreReproducibleAndDistinct) {
  for (RngKind kind : {RngKind::Default, RngKind::Lcg48}) {
    RandomSource a(kind, 7, 3), b(kind, 7, 3), c(kind, 7, 4), d(kind, 8, 3);
    std::set<std::uint64_t> firsts;
    for (int i = 0; i < 100; ++i) {
      const auto x = a.next_bits();
      EXPECT_EQ(x, b.next_bits());
      if (i == 0) {
        firsts.insert(x);
        firsts.insert(c.next_bits());
        firsts.insert(d.next_bits());
      }
    }
    EXPECT_EQ(firsts.size(), 3u);
  }
}

TEST(RandomSource, BitWidths) {
  RandomSource lcg(RngKind::Lcg48, 1), mt(RngKind::Default, 1);
  for (int i = 0; i < 1000; ++i) {
    EXPECT_LT(lcg.next_bits(), std::uint64_t{1} << 48);
    EXPECT_LT(mt.next_bits(), std::uint64_t{1} << 53);
  }
}

TEST(RandomSource, UniformMean) {
  RandomSource src(RngKind::Default, 42);
  double sum = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = src.uniform01();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / n, 0.5, 5.0 * std::sqrt(1.0 / 12.0 / n));
}

TEST(Bernoulli, Thresholds) {
  EXPECT_EQ(bernoulli_threshold(0.0, 48), 0u);
  EXPECT_EQ(bernoulli_threshold(1.0, 48), std::uint64_t{1} << 48);
  EXPECT_EQ(bernoulli_threshold(0.5, 48), std::uint64_t{1} << 47);
  EXPECT_THROW(bernoulli_threshold(-0.1, 48), DomainError);
  EXPECT_THROW(bernoulli_threshold(1.5, 53), DomainError);
  EXPECT_THROW(bernoulli_threshold(std::nan(""), 53), DomainError);
}

TEST(Bernoulli, ExtremesAreExact) {
  RandomSource src(RngKind::Lcg48, 5);
  for (int i = 0; i < 1000; ++i) {
    EXPECT_FALSE(src.bernoulli(0.0));
    EXPECT_TRUE(src.bernoulli(1.0));
  }
}

TEST(RngKind, Names) {
  EXPECT_EQ(parse_rng_kind("default"), RngKind::Default);
  EXPECT_EQ(parse_rng_kind("lcg48"), RngKind::Lcg48);
  EXPECT_EQ(to_string(RngKind::Lcg48), "lcg48");
  EXPECT_THROW(parse_rng_kind("mt"), DomainError);
}
