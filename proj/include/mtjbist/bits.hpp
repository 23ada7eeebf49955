// Copyright mtjbist contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#ifndef MTJBIST_BITS_HPP
#define MTJBIST_BITS_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mtjbist {

// Bit sequences are stored one bit per byte (0 or 1), most significant /
// first transmitted bit at index 0.
using Bit = std::uint8_t;
using BitVec = std::vector<Bit>;
using BitSpan = std::span<const Bit>;

BitVec bits_from_uint(std::uint64_t value, std::size_t width);
std::uint64_t bits_to_uint(BitSpan bits);

// Hex strings are right-aligned: the last hex digit holds the last bits.
// Leading digits beyond `width` must be zero.
BitVec bits_from_hex(std::string_view hex, std::size_t width);
std::string bits_to_hex(BitSpan bits);

Bit parity(BitSpan bits);
std::size_t hamming_distance(BitSpan a, BitSpan b);

BitVec concat(BitSpan a, BitSpan b);

}  // namespace mtjbist

#endif  // MTJBIST_BITS_HPP
