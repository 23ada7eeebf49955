// Copyright mtjbist contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "mtjbist/rng.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <set>

namespace mtjbist {
namespace {

TEST(Rng, SameSeedSameStream) {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next_u64(), b.next_u64());
}

TEST(Rng, Uniform01InRange) {
  Rng r(1);
  for (int i = 0; i < 10000; ++i) {
    const double u = r.uniform01();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(Rng, BelowIsUnbiasedEnough) {
  Rng r(7);
  std::vector<int> counts(3, 0);
  const int n = 30000;
  for (int i = 0; i < n; ++i) ++counts[r.below(3)];
  for (int c : counts) EXPECT_NEAR(c, n / 3, 400);
}

TEST(Rng, NormalMoments) {
  Rng r(3);
  const int n = 100000;
  double s = 0, s2 = 0;
  for (int i = 0; i < n; ++i) {
    const double x = r.normal();
    s += x;
    s2 += x * x;
  }
  EXPECT_NEAR(s / n, 0.0, 0.02);
  EXPECT_NEAR(s2 / n, 1.0, 0.02);
}

TEST(Rng, DerivedSeedsDiffer) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t stream = 0; stream < 4; ++stream)
    for (std::uint64_t i = 0; i < 100; ++i) seen.insert(derive_seed(1, stream, i));
  EXPECT_EQ(seen.size(), 400u);
  EXPECT_EQ(derive_seed(9, 2, 3), derive_seed(9, 2, 3));
}

}  // namespace
}  // namespace mtjbist
