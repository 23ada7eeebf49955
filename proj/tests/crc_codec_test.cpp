// Copyright mtjbist contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "mtjbist/crc_codec.hpp"

#include <gtest/gtest.h>

#include "crc_oracle.hpp"
#include "mtjbist/error.hpp"
#include "mtjbist/rng.hpp"

namespace mtjbist {
namespace {

const CrcConfig kCrc8{};

std::vector<int> as_ints(const BitVec &b) { return {b.begin(), b.end()}; }

TEST(Crc, FrozenCheckValues) {
  // Frozen from the long-division oracle in crc_oracle.hpp.
  EXPECT_EQ(bits_to_uint(encode(bits_from_uint(0x01, 8), kCrc8).check), 0x07u);
  EXPECT_EQ(bits_to_uint(encode(bits_from_uint(0xA5, 8), kCrc8).check), 0x72u);
  EXPECT_EQ(bits_to_uint(encode(bits_from_uint(0xFF, 8), kCrc8).check), 0xF3u);
  EXPECT_EQ(bits_to_uint(encode(bits_from_uint(0x00, 8), kCrc8).check), 0x00u);
}

TEST(Crc, CatalogueCheckValue) {
  // CRC-8 with poly 0x07, zero init, no reflection: check("123456789") = 0xF4.
  CrcConfig c = kCrc8;
  c.data_width = 72;
  BitVec data;
  for (char ch : std::string("123456789")) {
    const BitVec byte = bits_from_uint(static_cast<unsigned char>(ch), 8);
    data.insert(data.end(), byte.begin(), byte.end());
  }
  EXPECT_EQ(bits_to_uint(encode(data, c).check), 0xF4u);
}

TEST(Crc, MatchesLongDivisionOracleForSeveralGenerators) {
  struct Case {
    const char *poly;
    unsigned g;
    std::size_t d;
  };
  for (const Case k : {Case{"07", 8, 8}, Case{"1021", 16, 12}, Case{"3", 3, 10}, Case{"9b", 8, 5}, Case{"5", 4, 9}}) {
    const CrcConfig c = CrcConfig::from_hex(k.poly, k.g, k.d);
    const auto gen = testing::generator_from_poly(c.poly, c.check_width);
    for (std::uint64_t v = 0; v < (1ull << k.d); ++v) {
      const BitVec data = bits_from_uint(v, k.d);
      ASSERT_EQ(as_ints(encode(data, c).check), testing::long_division_remainder(as_ints(data), gen))
          << k.poly << " data=" << v;
    }
  }
}

TEST(Crc, EveryCodewordVerifiesClean) {
  for (std::uint64_t v = 0; v < 256; ++v) {
    const Message m = encode(bits_from_uint(v, 8), kCrc8);
    EXPECT_EQ(verify(m, kCrc8), LogicLevel::Zero);
    EXPECT_EQ(crc_remainder(m.bits(), kCrc8), 0u);
  }
}

TEST(Crc, ExhaustiveSingleBitErrorsAreDetected) {
  for (std::size_t d : {4u, 8u, 12u}) {
    CrcConfig c = kCrc8;
    c.data_width = d;
    for (std::uint64_t v = 0; v < (1ull << d); ++v) {
      const BitVec sent = encode(bits_from_uint(v, d), c).bits();
      for (std::size_t i = 0; i < sent.size(); ++i) {
        BitVec bad = sent;
        bad[i] ^= 1;
        ASSERT_EQ(verify(Message::split(bad, c), c), LogicLevel::One) << "d=" << d << " v=" << v << " i=" << i;
      }
    }
  }
}

TEST(Crc, BurstsUpToCheckWidthAreDetected) {
  for (std::uint64_t v : {0x00ull, 0x5Aull, 0xFFull}) {
    const BitVec sent = encode(bits_from_uint(v, 8), kCrc8).bits();
    for (std::size_t len = 1; len <= kCrc8.check_width; ++len) {
      for (std::size_t start = 0; start + len <= sent.size(); ++start) {
        // Bursts start and end with a flipped bit; interior bits enumerate.
        const std::size_t interior = len > 2 ? len - 2 : 0;
        for (std::uint64_t mid = 0; mid < (1ull << interior); ++mid) {
          BitVec bad = sent;
          bad[start] ^= 1;
          if (len > 1) bad[start + len - 1] ^= 1;
          for (std::size_t j = 0; j < interior; ++j) bad[start + 1 + j] ^= static_cast<Bit>((mid >> j) & 1u);
          ASSERT_EQ(verify(Message::split(bad, kCrc8), kCrc8), LogicLevel::One);
        }
      }
    }
  }
}

TEST(Crc, Linearity) {
  Rng rng(11);
  for (int i = 0; i < 10000; ++i) {
    const BitVec a = rng.bits(8), b = rng.bits(8);
    BitVec x(8);
    for (int j = 0; j < 8; ++j) x[j] = a[j] ^ b[j];
    const auto ca = bits_to_uint(encode(a, kCrc8).check);
    const auto cb = bits_to_uint(encode(b, kCrc8).check);
    ASSERT_EQ(bits_to_uint(encode(x, kCrc8).check), ca ^ cb);
  }
}

TEST(Crc, WideRegistersWork) {
  const CrcConfig c = CrcConfig::from_hex("42f0e1eba9ea3693", 64, 16);
  const Message m = encode(bits_from_uint(0xBEEF, 16), c);
  EXPECT_EQ(m.check.size(), 64u);
  EXPECT_EQ(verify(m, c), LogicLevel::Zero);
  const auto gen = testing::generator_from_poly(c.poly, 64);
  EXPECT_EQ(as_ints(m.check), testing::long_division_remainder(as_ints(m.data), gen));
}

TEST(Crc, ConfigValidation) {
  EXPECT_THROW(CrcConfig::from_hex("07", 0, 8), ConfigError);
  EXPECT_THROW(CrcConfig::from_hex("07", 65, 8), ConfigError);
  EXPECT_THROW(CrcConfig::from_hex("zz", 8, 8), std::invalid_argument);
  EXPECT_THROW(encode(bits_from_uint(1, 4), kCrc8), ConfigError);
  EXPECT_EQ(CrcConfig::from_hex("07", 8, 8).receiver_init, 0xFFu);
}

TEST(Crc, SplitRoundTrip) {
  const Message m = encode(bits_from_uint(0x3C, 8), kCrc8);
  const Message back = Message::split(m.bits(), kCrc8);
  EXPECT_EQ(back.data, m.data);
  EXPECT_EQ(back.check, m.check);
}

}  // namespace
}  // namespace mtjbist
