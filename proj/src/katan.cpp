// Copyright mtjbist contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "mtjbist/katan.hpp"

#include <bit>
#include <stdexcept>

#include "mtjbist/bits.hpp"

namespace mtjbist::katan {

// Generated once from the 8-bit LFSR x^8 + x^7 + x^5 + x^3 + 1 started in
// the all-ones state; the test suite regenerates and compares.
const std::array<std::uint8_t, kRounds> kIrSequence = {
    1, 1, 1, 1, 1, 1, 1, 0, 0, 0, 1, 1, 0, 1, 0, 1, 0, 1, 0, 1,
    1, 1, 1, 0, 1, 1, 0, 0, 1, 1, 0, 0, 1, 0, 1, 0, 0, 1, 0, 0,
    0, 1, 0, 0, 0, 1, 1, 0, 0, 0, 1, 1, 1, 1, 0, 0, 0, 0, 1, 0,
    0, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 0, 0, 1, 1,
    1, 1, 1, 1, 0, 1, 0, 1, 0, 0, 0, 1, 0, 1, 0, 1, 0, 0, 1, 1,
    0, 0, 0, 0, 1, 1, 0, 0, 1, 1, 1, 0, 1, 1, 1, 1, 1, 0, 1, 1,
    1, 0, 1, 0, 0, 1, 0, 1, 0, 1, 1, 0, 1, 0, 0, 1, 1, 1, 0, 0,
    1, 1, 0, 1, 1, 0, 0, 0, 1, 0, 1, 1, 1, 0, 1, 1, 0, 1, 1, 1,
    1, 0, 0, 1, 0, 1, 1, 0, 1, 1, 0, 1, 0, 1, 1, 1, 0, 0, 1, 0,
    0, 1, 0, 0, 1, 1, 0, 1, 0, 0, 0, 1, 1, 1, 0, 0, 0, 1, 0, 0,
    1, 1, 1, 1, 0, 1, 0, 0, 0, 0, 1, 1, 1, 0, 1, 0, 1, 1, 0, 0,
    0, 0, 0, 1, 0, 1, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 1, 0, 1,
    1, 1, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0,};

namespace {

constexpr std::uint32_t kL1Mask = (1u << kL1Bits) - 1;
constexpr std::uint32_t kL2Mask = (1u << kL2Bits) - 1;

constexpr unsigned bit(std::uint32_t reg, unsigned i) { return (reg >> i) & 1u; }

// k_{j+80} = k_j ^ k_{j+19} ^ k_{j+30} ^ k_{j+67}
void clock_key(Key &window) {
  const bool next = window[0] ^ window[19] ^ window[30] ^ window[67];
  window >>= 1;
  window[kKeyBits - 1] = next;
}

unsigned fa(std::uint32_t l1, unsigned ir, unsigned ka) {
  return bit(l1, 12) ^ bit(l1, 7) ^ (bit(l1, 8) & bit(l1, 5)) ^ (bit(l1, 3) & ir) ^ ka;
}

unsigned fb(std::uint32_t l2, unsigned kb) {
  return bit(l2, 18) ^ bit(l2, 7) ^ (bit(l2, 12) & bit(l2, 10)) ^ (bit(l2, 8) & bit(l2, 3)) ^ kb;
}

std::array<std::uint8_t, 2 * kRounds> key_stream(const Key &key) {
  std::array<std::uint8_t, 2 * kRounds> ks{};
  Key window = key;
  for (unsigned i = 0; i < 2 * kRounds; ++i) {
    ks[i] = window[0];
    clock_key(window);
  }
  return ks;
}

}  // namespace

Key key_from_hex(std::string_view hex) {
  const BitVec bits = bits_from_hex(hex, kKeyBits);
  Key key;
  for (unsigned i = 0; i < kKeyBits; ++i) key[i] = bits[kKeyBits - 1 - i];
  return key;
}

std::string key_to_hex(const Key &key) {
  BitVec bits(kKeyBits);
  for (unsigned i = 0; i < kKeyBits; ++i) bits[kKeyBits - 1 - i] = key[i];
  return bits_to_hex(bits);
}

std::uint32_t block_from_hex(std::string_view hex) {
  return static_cast<std::uint32_t>(bits_to_uint(bits_from_hex(hex, 32)));
}

std::string block_to_hex(std::uint32_t block) { return bits_to_hex(bits_from_uint(block, 32)); }

KatanState::KatanState(std::uint32_t plaintext, const Key &key)
    : l1_(plaintext >> kL2Bits), l2_(plaintext & kL2Mask), key_(key) {}

void KatanState::step() {
  if (round_ >= kRounds) throw std::logic_error("katan: all rounds already applied");
  const unsigned new_l2_bit = fa(l1_, kIrSequence[round_], key_[0]);
  const unsigned new_l1_bit = fb(l2_, key_[1]);
  l1_ = ((l1_ << 1) | new_l1_bit) & kL1Mask;
  l2_ = ((l2_ << 1) | new_l2_bit) & kL2Mask;
  clock_key(key_);
  clock_key(key_);
  ++round_;
}

unsigned KatanState::step_toggles() {
  const std::uint32_t before = block();
  const Key key_before = key_;
  step();
  return static_cast<unsigned>(std::popcount(before ^ block()) + (key_before ^ key_).count());
}

std::uint32_t encrypt32(std::uint32_t plaintext, const Key &key) {
  KatanState s(plaintext, key);
  for (unsigned r = 0; r < kRounds; ++r) s.step();
  return s.block();
}

std::uint32_t decrypt32(std::uint32_t ciphertext, const Key &key) {
  const auto ks = key_stream(key);
  std::uint32_t l1 = ciphertext >> kL2Bits;
  std::uint32_t l2 = ciphertext & kL2Mask;
  for (unsigned r = kRounds; r-- > 0;) {
    // Undo the shift; the bit that fell off the top of each register is
    // recovered from the feedback bit that entered the other one.
    const unsigned l1_in = l1 & 1u;
    const unsigned l2_in = l2 & 1u;
    std::uint32_t l1_old = l1 >> 1;
    std::uint32_t l2_old = l2 >> 1;
    const unsigned l2_top = l1_in ^ bit(l2_old, 7) ^ (bit(l2_old, 12) & bit(l2_old, 10)) ^
                            (bit(l2_old, 8) & bit(l2_old, 3)) ^ ks[2 * r + 1];
    const unsigned l1_top = l2_in ^ bit(l1_old, 7) ^ (bit(l1_old, 8) & bit(l1_old, 5)) ^
                            (bit(l1_old, 3) & kIrSequence[r]) ^ ks[2 * r];
    l1 = l1_old | (l1_top << (kL1Bits - 1));
    l2 = l2_old | (l2_top << (kL2Bits - 1));
  }
  return (l1 << kL2Bits) | l2;
}

std::vector<std::uint32_t> round_toggle_trace(std::uint32_t plaintext, const Key &key) {
  KatanState s(plaintext, key);
  std::vector<std::uint32_t> trace;
  trace.reserve(kRounds);
  for (unsigned r = 0; r < kRounds; ++r) trace.push_back(s.step_toggles());
  return trace;
}

}  // namespace mtjbist::katan
