// Copyright mtjbist contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "mtjbist/circuits.hpp"

#include <bit>
#include <string>

#include "mtjbist/error.hpp"

namespace mtjbist {

namespace {

void check_width(BitSpan input, std::size_t width, std::string_view circuit) {
  if (input.size() != width)
    throw ConfigError(std::string(circuit) + ": input width " + std::to_string(input.size()) + " != " +
                      std::to_string(width));
}

}  // namespace

CrcDecoderCircuit::CrcDecoderCircuit(CrcConfig crc, Malfunction malfunction)
    : crc_(std::move(crc)), malfunction_(malfunction) {
  crc_.validate();
}

std::uint64_t CrcDecoderCircuit::init_residue() const {
  // The register after a valid message is init * x^n mod P, i.e. the
  // init value clocked with n zero bits.
  std::uint64_t reg = crc_.receiver_init;
  for (std::size_t i = 0; i < crc_.message_width(); ++i) reg = crc_shift(reg, 0, crc_);
  return reg;
}

LogicLevel CrcDecoderCircuit::decode(const Message &message, bool trojan_inserted) const {
  std::uint64_t reg = crc_.receiver_init;
  for (Bit b : message.bits()) reg = crc_shift(reg, b, crc_);
  const LogicLevel clean = reg != init_residue() ? LogicLevel::One : LogicLevel::Zero;
  if (!trojan_inserted || !crc_trigger(message)) return clean;
  switch (malfunction_) {
    case Malfunction::Invert: return !clean;
    case Malfunction::StuckAt0: return LogicLevel::Zero;
    case Malfunction::StuckAt1: return LogicLevel::One;
  }
  return clean;
}

ActivityProfile CrcDecoderCircuit::simulate_message(const Message &message, bool trojan_inserted) const {
  const BitVec bits = message.bits();
  check_width(bits, crc_.message_width(), name());
  ActivityProfile out;
  out.toggles.reserve(steps());
  std::uint64_t reg = crc_.receiver_init;
  for (Bit b : bits) {
    const std::uint64_t next = crc_shift(reg, b, crc_);
    out.toggles.push_back(static_cast<std::uint32_t>(std::popcount(reg ^ next)));
    reg = next;
  }
  // Error output leaves reset high.
  const LogicLevel error = decode(message, trojan_inserted);
  out.toggles.push_back(error == LogicLevel::One ? 0 : 1);
  if (trojan_inserted && crc_trigger(message)) out.payload_steps.push_back(steps() - 1);
  return out;
}

ActivityProfile CrcDecoderCircuit::simulate(BitSpan input, bool trojan_inserted) const {
  check_width(input, input_width(), name());
  return simulate_message(encode(input, crc_), trojan_inserted);
}

bool CrcDecoderCircuit::trojan_triggers(BitSpan input) const {
  check_width(input, input_width(), name());
  return crc_trigger(encode(input, crc_));
}

KatanCircuit::KatanCircuit(TrojanSpec spec) : spec_(std::move(spec)) { spec_.validate(); }

BitVec KatanCircuit::make_input(std::uint32_t plaintext, const katan::Key &key) {
  BitVec in = bits_from_uint(plaintext, 32);
  for (unsigned i = katan::kKeyBits; i-- > 0;) in.push_back(key[i]);
  return in;
}

std::pair<std::uint32_t, katan::Key> KatanCircuit::split_input(BitSpan input) {
  check_width(input, 32 + katan::kKeyBits, "katan32");
  const auto pt = static_cast<std::uint32_t>(bits_to_uint(input.first(32)));
  katan::Key key;
  for (unsigned i = 0; i < katan::kKeyBits; ++i) key[i] = input[32 + katan::kKeyBits - 1 - i];
  return {pt, key};
}

ActivityProfile KatanCircuit::simulate(BitSpan input, bool trojan_inserted) const {
  const auto [pt, key] = split_input(input);
  ActivityProfile out;
  auto rounds = katan::round_toggle_trace(pt, key);
  out.toggles.assign(rounds.begin(), rounds.end());
  const bool fires = trojan_inserted && katan_trigger(pt, key, spec_);
  out.toggles.push_back(fires ? static_cast<std::uint32_t>(std::popcount(kKatanPayloadMask)) : 0);
  if (fires) out.payload_steps.push_back(steps() - 1);
  return out;
}

bool KatanCircuit::trojan_triggers(BitSpan input) const {
  const auto [pt, key] = split_input(input);
  return katan_trigger(pt, key, spec_);
}

}  // namespace mtjbist
