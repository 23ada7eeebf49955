// Copyright mtjbist contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#ifndef MTJBIST_TROJAN_HPP
#define MTJBIST_TROJAN_HPP

#include <cstdint>
#include <string_view>
#include <vector>

#include "mtjbist/crc_codec.hpp"
#include "mtjbist/katan.hpp"

namespace mtjbist {

enum class TrojanTarget : std::uint8_t { CrcDecoder, Katan32 };
enum class TrojanPayload : std::uint8_t { ErrorSignalFlip, FlipFirstAndLastCipherBits };
/// How the CRC payload corrupts the error signal while triggered.
enum class Malfunction : std::uint8_t { Invert, StuckAt0, StuckAt1 };

struct TrojanSpec {
  TrojanTarget target = TrojanTarget::Katan32;
  /// Key bit indices feeding the KATAN trigger's key XOR tree.
  std::vector<unsigned> trigger_key_bits = {0, 1, 2, 3, 4, 5, 6, 7};
  /// Plaintext bit indices feeding the KATAN trigger's plaintext XOR tree.
  std::vector<unsigned> trigger_pt_bits = {0, 1, 2, 3, 4, 5, 6, 7};
  TrojanPayload payload = TrojanPayload::FlipFirstAndLastCipherBits;
  Malfunction malfunction = Malfunction::Invert;

  static TrojanSpec crc_default();
  static TrojanSpec katan_default();
  /// Throws ConfigError on a target/payload mismatch or bad index sets.
  void validate() const;
};

TrojanTarget parse_trojan_target(std::string_view s);
TrojanPayload parse_trojan_payload(std::string_view s);
Malfunction parse_malfunction(std::string_view s);
std::string_view to_string(TrojanTarget t);
std::string_view to_string(TrojanPayload p);
std::string_view to_string(Malfunction m);

/// XOR of the data bits AND XOR of the check bits.
bool crc_trigger(const Message &message);

/// Decoder with the Trojan inserted: clean verdict while dormant, the
/// malfunctioning one while triggered.
LogicLevel crc_verify_trojan(const Message &message, const CrcConfig &crc, Malfunction mode = Malfunction::Invert);

bool katan_trigger(std::uint32_t plaintext, const katan::Key &key, const TrojanSpec &spec);

/// Bit 31 is the first ciphertext bit, bit 0 the last.
inline constexpr std::uint32_t kKatanPayloadMask = 0x80000001u;

std::uint32_t encrypt32_trojan(std::uint32_t plaintext, const katan::Key &key, const TrojanSpec &spec);

}  // namespace mtjbist

#endif  // MTJBIST_TROJAN_HPP
