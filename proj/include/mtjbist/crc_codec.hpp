// Copyright mtjbist contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#ifndef MTJBIST_CRC_CODEC_HPP
#define MTJBIST_CRC_CODEC_HPP

#include <cstdint>
#include <string>
#include <string_view>

#include "mtjbist/bits.hpp"
#include "mtjbist/mtj_device.hpp"

namespace mtjbist {

/// Generator polynomial and framing of the BIST encoder/decoder pair.
///
/// `poly` holds the coefficients below the implicit leading x^width term,
/// so the default 0x07 with width 8 is x^8 + x^2 + x + 1.
struct CrcConfig {
  std::uint64_t poly = 0x07;
  unsigned check_width = 8;
  std::size_t data_width = 8;
  /// Decoder remainder register value while held in reset.
  std::uint64_t receiver_init = 0xFF;

  /// Parses a polynomial written as hex coefficient bits ("07").
  static CrcConfig from_hex(std::string_view poly_hex, unsigned check_width = 8, std::size_t data_width = 8);

  std::uint64_t mask() const { return check_width == 64 ? ~0ull : (1ull << check_width) - 1; }
  std::size_t message_width() const { return data_width + check_width; }
  std::string poly_hex() const;
  void validate() const;
};

struct Message {
  BitVec data;
  BitVec check;

  BitVec bits() const { return concat(data, check); }
  static Message split(BitSpan bits, const CrcConfig &config);
};

/// One clock of the MSB-first division register: shifts `bit` in and
/// returns the new register value.
std::uint64_t crc_shift(std::uint64_t reg, Bit bit, const CrcConfig &config);

/// bits * x^g mod P over GF(2), zero initial register.
std::uint64_t crc_remainder(BitSpan bits, const CrcConfig &config);

/// Throws ConfigError when the pattern width is not data_width.
Message encode(BitSpan pattern, const CrcConfig &config);

/// Error signal after the full message is checked: One means corrupted.
LogicLevel verify(const Message &message, const CrcConfig &config);

}  // namespace mtjbist

#endif  // MTJBIST_CRC_CODEC_HPP
