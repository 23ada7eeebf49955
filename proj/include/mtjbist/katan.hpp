// Copyright mtjbist contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#ifndef MTJBIST_KATAN_HPP
#define MTJBIST_KATAN_HPP

#include <array>
#include <bitset>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace mtjbist::katan {

// Bit conventions: plaintext/ciphertext bit i is bit i of the 32-bit value;
// L2 holds bits 0..18 and L1 bits 19..31. Key bit i is bit i of the 80-bit
// value written as 20 hex digits (last digit = bits 3..0).

inline constexpr unsigned kRounds = 254;
inline constexpr unsigned kL1Bits = 13;
inline constexpr unsigned kL2Bits = 19;
inline constexpr unsigned kKeyBits = 80;

using Key = std::bitset<kKeyBits>;

/// Round constants IR_0..IR_253.
extern const std::array<std::uint8_t, kRounds> kIrSequence;

Key key_from_hex(std::string_view hex);
std::string key_to_hex(const Key &key);
std::uint32_t block_from_hex(std::string_view hex);
std::string block_to_hex(std::uint32_t block);

/// Cipher registers between rounds: the two NLFSRs and the 80-bit window of
/// the linear key schedule (bit j = k_{2r+j}).
class KatanState {
 public:
  KatanState(std::uint32_t plaintext, const Key &key);

  std::uint32_t l1() const { return l1_; }
  std::uint32_t l2() const { return l2_; }
  unsigned round() const { return round_; }
  const Key &key_window() const { return key_; }
  std::uint32_t block() const { return (l1_ << kL2Bits) | l2_; }

  /// Advances one round. Throws std::logic_error past round 254.
  void step();
  /// Number of register bits (state and key window) that flip in step().
  unsigned step_toggles();

 private:
  std::uint32_t l1_;
  std::uint32_t l2_;
  unsigned round_ = 0;
  Key key_;
};

std::uint32_t encrypt32(std::uint32_t plaintext, const Key &key);
std::uint32_t decrypt32(std::uint32_t ciphertext, const Key &key);

/// Per-round Hamming distance of (L1, L2, key window) across each round.
std::vector<std::uint32_t> round_toggle_trace(std::uint32_t plaintext, const Key &key);

}  // namespace mtjbist::katan

#endif  // MTJBIST_KATAN_HPP
