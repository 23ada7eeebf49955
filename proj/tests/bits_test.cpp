// Copyright mtjbist contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "mtjbist/bits.hpp"

#include <gtest/gtest.h>

#include "mtjbist/csv.hpp"

namespace mtjbist {
namespace {

TEST(Bits, UintRoundTripIsMsbFirst) {
  const BitVec b = bits_from_uint(0xA5, 8);
  EXPECT_EQ(b, (BitVec{1, 0, 1, 0, 0, 1, 0, 1}));
  EXPECT_EQ(bits_to_uint(b), 0xA5u);
  for (std::uint64_t v = 0; v < 1024; ++v) EXPECT_EQ(bits_to_uint(bits_from_uint(v, 10)), v);
}

TEST(Bits, HexIsRightAligned) {
  EXPECT_EQ(bits_from_hex("5", 6), (BitVec{0, 0, 0, 1, 0, 1}));
  EXPECT_EQ(bits_from_hex("0xA5", 8), bits_from_uint(0xA5, 8));
  EXPECT_EQ(bits_to_hex(bits_from_uint(0xA5, 8)), "a5");
  EXPECT_EQ(bits_to_hex(bits_from_uint(0x15, 5)), "15");
}

TEST(Bits, HexRejectsOverflowAndGarbage) {
  EXPECT_THROW(bits_from_hex("1ff", 8), std::invalid_argument);
  EXPECT_THROW(bits_from_hex("g1", 8), std::invalid_argument);
}

TEST(Bits, ParityAndDistance) {
  EXPECT_EQ(parity(bits_from_uint(0x07, 8)), 1);
  EXPECT_EQ(parity(bits_from_uint(0x03, 8)), 0);
  EXPECT_EQ(hamming_distance(bits_from_uint(0xF0, 8), bits_from_uint(0x0F, 8)), 8u);
  EXPECT_EQ(concat(BitVec{1}, BitVec{0, 1}), (BitVec{1, 0, 1}));
}

TEST(Csv, DoubleFormattingRoundTrips) {
  for (double v : {0.0, 0.1, 1.0 / 3.0, 1e-300, -2.5e10, 12.0}) EXPECT_EQ(parse_double(format_double(v)), v);
  EXPECT_EQ(format_double(12.0), "12");
  EXPECT_THROW(parse_double("1.0x"), std::invalid_argument);
  EXPECT_EQ(parse_u64("0x1f"), 31u);
}

TEST(Csv, SplitAndTrim) {
  EXPECT_EQ(split("a,b,,c", ','), (std::vector<std::string>{"a", "b", "", "c"}));
  EXPECT_EQ(trim("  x \t"), "x");
}

}  // namespace
}  // namespace mtjbist
