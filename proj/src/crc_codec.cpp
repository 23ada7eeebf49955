// Copyright mtjbist contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "mtjbist/crc_codec.hpp"

#include "mtjbist/error.hpp"

namespace mtjbist {

CrcConfig CrcConfig::from_hex(std::string_view poly_hex, unsigned check_width, std::size_t data_width) {
  if (check_width < 1 || check_width > 64) throw ConfigError("crc: check width must be in [1, 64]");
  CrcConfig c;
  c.check_width = check_width;
  c.data_width = data_width;
  c.poly = bits_to_uint(bits_from_hex(poly_hex, check_width));
  c.receiver_init = c.mask();
  c.validate();
  return c;
}

std::string CrcConfig::poly_hex() const { return bits_to_hex(bits_from_uint(poly, check_width)); }

void CrcConfig::validate() const {
  if (check_width < 1 || check_width > 64) throw ConfigError("crc: check width must be in [1, 64]");
  if (data_width < 1) throw ConfigError("crc: data width must be >= 1");
  if ((poly & ~mask()) != 0) throw ConfigError("crc: polynomial has terms at or above x^width");
  if ((receiver_init & ~mask()) != 0) throw ConfigError("crc: receiver_init wider than the register");
}

Message Message::split(BitSpan bits, const CrcConfig &config) {
  if (bits.size() != config.message_width())
    throw ConfigError("message width " + std::to_string(bits.size()) + " != " + std::to_string(config.message_width()));
  return Message{BitVec(bits.begin(), bits.begin() + static_cast<std::ptrdiff_t>(config.data_width)),
                 BitVec(bits.begin() + static_cast<std::ptrdiff_t>(config.data_width), bits.end())};
}

std::uint64_t crc_shift(std::uint64_t reg, Bit bit, const CrcConfig &config) {
  const Bit feedback = static_cast<Bit>(((reg >> (config.check_width - 1)) & 1u) ^ bit);
  reg = (reg << 1) & config.mask();
  if (feedback) reg ^= config.poly;
  return reg;
}

std::uint64_t crc_remainder(BitSpan bits, const CrcConfig &config) {
  std::uint64_t reg = 0;
  for (Bit b : bits) reg = crc_shift(reg, b, config);
  return reg;
}

Message encode(BitSpan pattern, const CrcConfig &config) {
  if (pattern.size() != config.data_width)
    throw ConfigError("pattern width " + std::to_string(pattern.size()) + " != data width " +
                      std::to_string(config.data_width));
  return Message{BitVec(pattern.begin(), pattern.end()),
                 bits_from_uint(crc_remainder(pattern, config), config.check_width)};
}

LogicLevel verify(const Message &message, const CrcConfig &config) {
  if (message.data.size() != config.data_width || message.check.size() != config.check_width)
    throw ConfigError("verify: message widths do not match the crc config");
  return crc_remainder(message.bits(), config) != 0 ? LogicLevel::One : LogicLevel::Zero;
}

}  // namespace mtjbist
