// Copyright mtjbist contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "mtjbist/trojan.hpp"

#include <string>

#include "mtjbist/error.hpp"

namespace mtjbist {

TrojanSpec TrojanSpec::crc_default() {
  TrojanSpec s;
  s.target = TrojanTarget::CrcDecoder;
  s.payload = TrojanPayload::ErrorSignalFlip;
  return s;
}

TrojanSpec TrojanSpec::katan_default() { return TrojanSpec{}; }

void TrojanSpec::validate() const {
  const bool matches = (target == TrojanTarget::CrcDecoder && payload == TrojanPayload::ErrorSignalFlip) ||
                       (target == TrojanTarget::Katan32 && payload == TrojanPayload::FlipFirstAndLastCipherBits);
  if (!matches) throw ConfigError("trojan: payload does not match target");
  if (target != TrojanTarget::Katan32) return;
  if (trigger_key_bits.empty() || trigger_pt_bits.empty()) throw ConfigError("trojan: trigger index sets must be non-empty");
  for (unsigned i : trigger_key_bits)
    if (i >= katan::kKeyBits) throw ConfigError("trojan: key bit " + std::to_string(i) + " out of range");
  for (unsigned i : trigger_pt_bits)
    if (i >= 32) throw ConfigError("trojan: plaintext bit " + std::to_string(i) + " out of range");
}

TrojanTarget parse_trojan_target(std::string_view s) {
  if (s == "crc" || s == "crc_decoder") return TrojanTarget::CrcDecoder;
  if (s == "katan" || s == "katan32") return TrojanTarget::Katan32;
  throw ConfigError("unknown trojan target '" + std::string(s) + "'");
}

TrojanPayload parse_trojan_payload(std::string_view s) {
  if (s == "error_signal_flip") return TrojanPayload::ErrorSignalFlip;
  if (s == "flip_first_last") return TrojanPayload::FlipFirstAndLastCipherBits;
  throw ConfigError("unknown trojan payload '" + std::string(s) + "'");
}

Malfunction parse_malfunction(std::string_view s) {
  if (s == "invert") return Malfunction::Invert;
  if (s == "stuck0") return Malfunction::StuckAt0;
  if (s == "stuck1") return Malfunction::StuckAt1;
  throw ConfigError("unknown malfunction mode '" + std::string(s) + "'");
}

std::string_view to_string(TrojanTarget t) { return t == TrojanTarget::CrcDecoder ? "crc" : "katan"; }

std::string_view to_string(TrojanPayload p) {
  return p == TrojanPayload::ErrorSignalFlip ? "error_signal_flip" : "flip_first_last";
}

std::string_view to_string(Malfunction m) {
  switch (m) {
    case Malfunction::Invert: return "invert";
    case Malfunction::StuckAt0: return "stuck0";
    case Malfunction::StuckAt1: return "stuck1";
  }
  return "invert";
}

bool crc_trigger(const Message &message) { return parity(message.data) && parity(message.check); }

LogicLevel crc_verify_trojan(const Message &message, const CrcConfig &crc, Malfunction mode) {
  const LogicLevel clean = verify(message, crc);
  if (!crc_trigger(message)) return clean;
  switch (mode) {
    case Malfunction::Invert: return !clean;
    case Malfunction::StuckAt0: return LogicLevel::Zero;
    case Malfunction::StuckAt1: return LogicLevel::One;
  }
  return clean;
}

bool katan_trigger(std::uint32_t plaintext, const katan::Key &key, const TrojanSpec &spec) {
  unsigned key_parity = 0;
  for (unsigned i : spec.trigger_key_bits) key_parity ^= key[i];
  unsigned pt_parity = 0;
  for (unsigned i : spec.trigger_pt_bits) pt_parity ^= (plaintext >> i) & 1u;
  return key_parity && pt_parity;
}

std::uint32_t encrypt32_trojan(std::uint32_t plaintext, const katan::Key &key, const TrojanSpec &spec) {
  const std::uint32_t c = katan::encrypt32(plaintext, key);
  return katan_trigger(plaintext, key, spec) ? c ^ kKatanPayloadMask : c;
}

}  // namespace mtjbist
