#include "qcaembed/rng.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>
#include <vector>

using namespace qcaembed;

TEST(Rng, SplitmixKnownValues) {
  // Reference outputs of the splitmix64 finaliser.
  EXPECT_EQ(splitmix64(0), 0xe220a8397b1dcdafULL);
  EXPECT_EQ(splitmix64(1), 0x910a2dec89025cc1ULL);
}

TEST(Rng, Fnv1aKnownValues) {
  EXPECT_EQ(fnv1a(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a("a"), 0xaf63dc4c8601ec8cULL);
}

TEST(Rng, DerivedSeedsDifferByStreamAndIndex) {
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 100; ++i) {
    seen.insert(derive_seed(7, "x", i));
    seen.insert(derive_seed(7, "y", i));
  }
  EXPECT_EQ(seen.size(), 200u);
  EXPECT_EQ(derive_seed(7, "x", 3, 4), derive_seed(7, "x", 3, 4));
  EXPECT_NE(derive_seed(7, "x", 3, 4), derive_seed(7, "x", 4, 3));
}

TEST(Rng, UniformIndexInRangeAndRoughlyFlat) {
  auto rng = make_rng(5);
  std::vector<int> counts(7, 0);
  for (int i = 0; i < 70000; ++i) {
    auto v = uniform_index(rng, 7);
    ASSERT_LT(v, 7u);
    ++counts[v];
  }
  for (int c : counts) EXPECT_NEAR(c, 10000, 500);
}

TEST(Rng, UniformUnitMoments) {
  auto rng = make_rng(11);
  double sum = 0;
  for (int i = 0; i < 100000; ++i) {
    double u = uniform_unit(rng);
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / 100000, 0.5, 0.01);
}

TEST(Rng, NormalMoments) {
  auto rng = make_rng(3);
  double s1 = 0, s2 = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    double z = standard_normal(rng);
    s1 += z;
    s2 += z * z;
  }
  EXPECT_NEAR(s1 / n, 0.0, 0.01);
  EXPECT_NEAR(s2 / n, 1.0, 0.02);
}

TEST(Rng, ShuffleIsPermutationAndRepeatable) {
  std::vector<int> a(50), b;
  std::iota(a.begin(), a.end(), 0);
  b = a;
  auto r1 = make_rng(9), r2 = make_rng(9);
  shuffle_range(a.begin(), a.end(), r1);
  shuffle_range(b.begin(), b.end(), r2);
  EXPECT_EQ(a, b);
  std::sort(a.begin(), a.end());
  for (int i = 0; i < 50; ++i) EXPECT_EQ(a[i], i);
}
