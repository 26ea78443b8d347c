#include "adeval/random.h"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <set>

namespace adeval {
namespace {

TEST(RandomTest, DeriveSeedSeparatesStreams) {
  EXPECT_EQ(DeriveSeed(1, "split"), DeriveSeed(1, "split"));
  EXPECT_NE(DeriveSeed(1, "split"), DeriveSeed(2, "split"));
  EXPECT_NE(DeriveSeed(1, "split"), DeriveSeed(1, "splits"));
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(DeriveSeed(42, i));
  EXPECT_EQ(seen.size(), 1000u);
}

TEST(RandomTest, SameSeedSameSequence) {
  Rng a(99), b(99);
  for (int i = 0; i < 100; ++i) ASSERT_EQ(a.UniformIndex(1000), b.UniformIndex(1000));
}

TEST(RandomTest, UniformIndexCoversRange) {
  Rng rng(3);
  std::vector<int> hist(7, 0);
  for (int i = 0; i < 70000; ++i) ++hist[rng.UniformIndex(7)];
  for (int h : hist) EXPECT_NEAR(h, 10000, 500);
}

TEST(RandomTest, NormalMoments) {
  Rng rng(11);
  const int n = 200000;
  double sum = 0, sq = 0;
  for (int i = 0; i < n; ++i) {
    const double x = rng.Normal();
    sum += x;
    sq += x * x;
  }
  EXPECT_NEAR(sum / n, 0.0, 0.01);
  EXPECT_NEAR(sq / n, 1.0, 0.02);
}

TEST(RandomTest, ShuffleIsPermutation) {
  Rng rng(5);
  std::vector<int> v(50);
  std::iota(v.begin(), v.end(), 0);
  Shuffle(v.begin(), v.end(), rng);
  std::vector<int> sorted = v;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < 50; ++i) EXPECT_EQ(sorted[i], i);
  EXPECT_NE(v, sorted);
}

}  // namespace
}  // namespace adeval
