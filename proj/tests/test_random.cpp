#include <gtest/gtest.h>

#include <set>

#include "ucpoly/random.hpp"

using ucpoly::CounterRng;

TEST(CounterRng, SameSeedStreamGivesSameSequence) {
  CounterRng a(42, 7), b(42, 7);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a.next_u64(), b.next_u64());
}

TEST(CounterRng, DrawsArePureFunctionsOfTheCounter) {
  CounterRng a(9, 3);
  for (std::uint64_t i = 0; i < 100; ++i) EXPECT_EQ(a.next_u64(), CounterRng::mix(9, 3, i));
  EXPECT_EQ(a.counter(), 100u);
}

TEST(CounterRng, StreamsAndSeedsDiffer) {
  std::set<std::uint64_t> firsts;
  for (std::uint64_t seed = 0; seed < 20; ++seed)
    for (std::uint64_t stream = 0; stream < 20; ++stream) firsts.insert(CounterRng(seed, stream).next_u64());
  EXPECT_EQ(firsts.size(), 400u);
}

TEST(CounterRng, UniformRangesAndMoments) {
  CounterRng r(1, 1);
  double sum = 0.0, sq = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = r.uniform01();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
    sq += u * u;
  }
  EXPECT_NEAR(sum / n, 0.5, 0.005);
  EXPECT_NEAR(sq / n - (sum / n) * (sum / n), 1.0 / 12.0, 0.002);
  for (int i = 0; i < 1000; ++i) {
    const double v = r.uniform(-2.0, 3.0);
    ASSERT_GE(v, -2.0);
    ASSERT_LT(v, 3.0);
    const auto k = r.uniform_int(3, 5);
    ASSERT_GE(k, 3u);
    ASSERT_LE(k, 5u);
  }
}

TEST(CounterRng, UniformIntHitsEveryValue) {
  CounterRng r(5, 0);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 200; ++i) seen.insert(r.uniform_int(0, 6));
  EXPECT_EQ(seen.size(), 7u);
}
