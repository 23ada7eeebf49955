// Copyright mtjbist contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "mtjbist/bits.hpp"

#include <algorithm>

#include "mtjbist/error.hpp"

namespace mtjbist {

namespace {

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

BitVec bits_from_uint(std::uint64_t value, std::size_t width) {
  if (width > 64) throw ConfigError("bits_from_uint: width exceeds 64");
  if (width < 64 && (value >> width) != 0)
    throw ConfigError("bits_from_uint: value does not fit in " + std::to_string(width) + " bits");
  BitVec out(width);
  for (std::size_t i = 0; i < width; ++i) out[i] = static_cast<Bit>((value >> (width - 1 - i)) & 1u);
  return out;
}

std::uint64_t bits_to_uint(BitSpan bits) {
  if (bits.size() > 64) throw ConfigError("bits_to_uint: more than 64 bits");
  std::uint64_t v = 0;
  for (Bit b : bits) v = (v << 1) | (b & 1u);
  return v;
}

BitVec bits_from_hex(std::string_view hex, std::size_t width) {
  if (hex.starts_with("0x") || hex.starts_with("0X")) hex.remove_prefix(2);
  if (hex.empty()) throw ConfigError("empty hex string");
  BitVec all;
  all.reserve(hex.size() * 4);
  for (char c : hex) {
    int v = hex_value(c);
    if (v < 0) throw ConfigError("invalid hex digit '" + std::string(1, c) + "'");
    for (int i = 3; i >= 0; --i) all.push_back(static_cast<Bit>((v >> i) & 1));
  }
  if (all.size() < width) all.insert(all.begin(), width - all.size(), 0);
  const std::size_t excess = all.size() - width;
  if (std::any_of(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(excess), [](Bit b) { return b != 0; }))
    throw ConfigError("hex value '" + std::string(hex) + "' does not fit in " + std::to_string(width) + " bits");
  return BitVec(all.begin() + static_cast<std::ptrdiff_t>(excess), all.end());
}

std::string bits_to_hex(BitSpan bits) {
  static constexpr char kDigits[] = "0123456789abcdef";
  const std::size_t ndigits = (bits.size() + 3) / 4;
  const std::size_t pad = ndigits * 4 - bits.size();
  std::string out;
  out.reserve(ndigits);
  int acc = 0;
  for (std::size_t i = 0; i < ndigits * 4; ++i) {
    const Bit b = i < pad ? 0 : bits[i - pad];
    acc = (acc << 1) | b;
    if (i % 4 == 3) {
      out.push_back(kDigits[acc]);
      acc = 0;
    }
  }
  return out;
}

Bit parity(BitSpan bits) {
  Bit p = 0;
  for (Bit b : bits) p ^= b;
  return p;
}

std::size_t hamming_distance(BitSpan a, BitSpan b) {
  if (a.size() != b.size()) throw ConfigError("hamming_distance: length mismatch");
  std::size_t n = 0;
  for (std::size_t i = 0; i < a.size(); ++i) n += a[i] != b[i];
  return n;
}

BitVec concat(BitSpan a, BitSpan b) {
  BitVec out(a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

}  // namespace mtjbist
