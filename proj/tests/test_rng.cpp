#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include <cayleylab/rng.hpp>

using namespace cayleylab;

TEST(Philox, KnownAnswerZero) {
  const auto out = Philox4x32::apply({0, 0, 0, 0}, {0, 0});
  EXPECT_EQ(out[0], 0x6627e8d5u);
  EXPECT_EQ(out[1], 0xe169c58du);
  EXPECT_EQ(out[2], 0xbc57ac4cu);
  EXPECT_EQ(out[3], 0x9b00dbd8u);
}

TEST(Philox, KnownAnswerOnes) {
  const auto out = Philox4x32::apply({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, {0xffffffffu, 0xffffffffu});
  EXPECT_EQ(out[0], 0x408f276du);
  EXPECT_EQ(out[1], 0x41c83b0eu);
  EXPECT_EQ(out[2], 0xa20bc7c6u);
  EXPECT_EQ(out[3], 0x6d5451fdu);
}

TEST(Philox, KnownAnswerPi) {
  const auto out = Philox4x32::apply({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, {0xa4093822u, 0x299f31d0u});
  EXPECT_EQ(out[0], 0xd16cfe09u);
  EXPECT_EQ(out[1], 0x94fdccebu);
  EXPECT_EQ(out[2], 0x5001e420u);
  EXPECT_EQ(out[3], 0x24126ea1u);
}

TEST(RngStream, ReproducibleAndStreamsDiffer) {
  RngStream a(42, 7), b(42, 7), c(42, 8), d(43, 7);
  std::set<std::uint64_t> firsts;
  for (int i = 0; i < 1000; ++i) {
    const auto va = a();
    EXPECT_EQ(va, b());
    if (i == 0) {
      firsts.insert(va);
      firsts.insert(c());
      firsts.insert(d());
    }
  }
  EXPECT_EQ(firsts.size(), 3u);
}

TEST(RngStream, TrialStreamsAreDistinct) {
  std::set<std::uint64_t> seen;
  for (std::uint32_t row = 0; row < 10; ++row)
    for (std::uint32_t t = 0; t < 100; ++t) seen.insert(RngStream::for_trial(1, row, t)());
  EXPECT_EQ(seen.size(), 1000u);
}

TEST(RngStream, SplitChildrenDistinct) {
  const RngStream parent(5, 9);
  std::set<std::uint64_t> seen;
  for (std::uint64_t k = 0; k < 256; ++k) seen.insert(parent.split(k)());
  EXPECT_EQ(seen.size(), 256u);
}

TEST(RngStream, BelowIsInRangeAndRoughlyUniform) {
  RngStream r(3);
  std::vector<int> counts(7, 0);
  const int draws = 70000;
  for (int i = 0; i < draws; ++i) {
    const auto v = r.below(7);
    ASSERT_LT(v, 7u);
    ++counts[v];
  }
  // Each cell: mean 10000, sd ~ 92.6; allow 5 sd.
  for (int c : counts) EXPECT_NEAR(c, 10000, 463);
}

TEST(RngStream, Uniform01Moments) {
  RngStream r(11);
  double sum = 0, sq = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = r.uniform01();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
    sq += u * u;
  }
  EXPECT_NEAR(sum / n, 0.5, 5 * std::sqrt(1.0 / 12 / n));
  EXPECT_NEAR(sq / n, 1.0 / 3, 0.003);
}

TEST(BernoulliCutoff, Extremes) {
  const BernoulliCutoff never(0.0), always(1.0);
  RngStream r(1);
  for (int i = 0; i < 1000; ++i) {
    const auto d = r();
    EXPECT_FALSE(never(d));
    EXPECT_TRUE(always(d));
  }
  EXPECT_FALSE(never(0));
  EXPECT_TRUE(always(~std::uint64_t{0}));
}

TEST(BernoulliCutoff, MonotoneInP) {
  RngStream r(2);
  const BernoulliCutoff lo(0.2), hi(0.3);
  int nlo = 0, nhi = 0;
  for (int i = 0; i < 100000; ++i) {
    const auto d = r();
    if (lo(d)) {
      EXPECT_TRUE(hi(d));
      ++nlo;
    }
    nhi += hi(d);
  }
  EXPECT_NEAR(nlo / 1e5, 0.2, 0.007);
  EXPECT_NEAR(nhi / 1e5, 0.3, 0.007);
}
