// Copyright mtjbist contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "mtjbist/katan.hpp"

#include <gtest/gtest.h>

#include "katan_oracle.hpp"
#include "mtjbist/rng.hpp"

namespace mtjbist {
namespace {

using katan::Key;

std::vector<int> key_bits(const Key &k) {
  std::vector<int> out(80);
  for (int i = 0; i < 80; ++i) out[i] = k[i];
  return out;
}

Key random_key(Rng &rng) {
  Key k;
  for (int i = 0; i < 80; ++i) k[i] = rng.below(2);
  return k;
}

TEST(Katan, PublishedTestVectors) {
  EXPECT_EQ(katan::encrypt32(0x00000000u, katan::key_from_hex("ffffffffffffffffffff")), 0x7E1FF945u);
  EXPECT_EQ(katan::encrypt32(0xFFFFFFFFu, katan::key_from_hex("00000000000000000000")), 0x432E61DAu);
}

TEST(Katan, RoundConstantTableMatchesItsLfsr) {
  const auto ir = testing::KatanOracle::round_constants();
  for (unsigned r = 0; r < katan::kRounds; ++r) EXPECT_EQ(katan::kIrSequence[r], ir[r]) << "round " << r;
}

TEST(Katan, MatchesIndependentOracle) {
  Rng rng(2024);
  for (int i = 0; i < 200; ++i) {
    const auto pt = static_cast<std::uint32_t>(rng.next_u64());
    const Key key = random_key(rng);
    ASSERT_EQ(katan::encrypt32(pt, key), testing::KatanOracle::encrypt(pt, key_bits(key)));
  }
}

TEST(Katan, DecryptInvertsEncrypt) {
  Rng rng(5);
  for (int i = 0; i < 1000; ++i) {
    const auto pt = static_cast<std::uint32_t>(rng.next_u64());
    const Key key = random_key(rng);
    ASSERT_EQ(katan::decrypt32(katan::encrypt32(pt, key), key), pt);
  }
}

TEST(Katan, HexRoundTrips) {
  const Key k = katan::key_from_hex("0123456789abcdef0123");
  EXPECT_EQ(katan::key_to_hex(k), "0123456789abcdef0123");
  EXPECT_TRUE(k[0]);
  EXPECT_TRUE(k[1]);
  EXPECT_FALSE(k[2]);
  EXPECT_EQ(katan::block_from_hex("7e1ff945"), 0x7E1FF945u);
  EXPECT_EQ(katan::block_to_hex(0x0000ABCDu), "0000abcd");
  EXPECT_THROW(katan::key_from_hex("1ffffffffffffffffffff"), std::invalid_argument);
  EXPECT_THROW(katan::block_from_hex("123456789"), std::invalid_argument);
}

TEST(Katan, StateStepsThroughAllRounds) {
  const Key key = katan::key_from_hex("ffffffffffffffffffff");
  katan::KatanState s(0, key);
  for (unsigned r = 0; r < katan::kRounds; ++r) s.step();
  EXPECT_EQ(s.round(), katan::kRounds);
  EXPECT_EQ(s.block(), 0x7E1FF945u);
  EXPECT_THROW(s.step(), std::logic_error);
}

TEST(Katan, ToggleTraceHasOneEntryPerRound) {
  const auto t = katan::round_toggle_trace(0x12345678u, katan::key_from_hex("00112233445566778899"));
  EXPECT_EQ(t.size(), katan::kRounds);
  for (auto v : t) EXPECT_LE(v, 32u + 80u);
}

}  // namespace
}  // namespace mtjbist
