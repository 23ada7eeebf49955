// Copyright mtjbist contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#ifndef MTJBIST_CIRCUITS_HPP
#define MTJBIST_CIRCUITS_HPP

#include <cstdint>
#include <string_view>
#include <vector>

#include "mtjbist/bits.hpp"
#include "mtjbist/crc_codec.hpp"
#include "mtjbist/trojan.hpp"

namespace mtjbist {

/// Bit-level switching activity of one circuit run.
struct ActivityProfile {
  /// Register/output bits that flipped at each clock step.
  std::vector<std::uint32_t> toggles;
  /// Steps at which an inserted Trojan's payload acts. Empty for the clean
  /// circuit and for a dormant Trojan.
  std::vector<std::size_t> payload_steps;
};

/// A digital circuit under test that can be driven with an input pattern
/// and observed step by step.
class Circuit {
 public:
  virtual ~Circuit() = default;

  virtual std::string_view name() const = 0;
  virtual std::size_t input_width() const = 0;
  virtual std::size_t steps() const = 0;
  /// Throws ConfigError on an input width mismatch.
  virtual ActivityProfile simulate(BitSpan input, bool trojan_inserted) const = 0;
  virtual bool trojan_triggers(BitSpan input) const = 0;
  /// Toggles per step contributed by the inserted trigger logic itself.
  virtual unsigned trigger_logic_toggles() const = 0;
};

/// CRC decoder fed by its encoder: the input is a data pattern, the decoder
/// shifts the encoded message into its remainder register (reset to
/// receiver_init) one bit per step and latches the error signal in a final
/// decision step.
class CrcDecoderCircuit final : public Circuit {
 public:
  explicit CrcDecoderCircuit(CrcConfig crc, Malfunction malfunction = Malfunction::Invert);

  std::string_view name() const override { return "crc_decoder"; }
  std::size_t input_width() const override { return crc_.data_width; }
  std::size_t steps() const override { return crc_.message_width() + 1; }
  ActivityProfile simulate(BitSpan input, bool trojan_inserted) const override;
  bool trojan_triggers(BitSpan input) const override;
  unsigned trigger_logic_toggles() const override { return 1; }

  /// Activity for an arbitrary (possibly corrupted) received message.
  ActivityProfile simulate_message(const Message &message, bool trojan_inserted) const;
  /// Error signal latched by the register-level decoder.
  LogicLevel decode(const Message &message, bool trojan_inserted) const;

  const CrcConfig &crc() const { return crc_; }

 private:
  std::uint64_t init_residue() const;

  CrcConfig crc_;
  Malfunction malfunction_;
};

/// KATAN-32 encryption core: input is the plaintext (32 bits, MSB first)
/// followed by the key (80 bits, MSB first). One step per round plus an
/// output step where the ciphertext is presented.
class KatanCircuit final : public Circuit {
 public:
  explicit KatanCircuit(TrojanSpec spec = TrojanSpec::katan_default());

  std::string_view name() const override { return "katan32"; }
  std::size_t input_width() const override { return 32 + katan::kKeyBits; }
  std::size_t steps() const override { return katan::kRounds + 1; }
  ActivityProfile simulate(BitSpan input, bool trojan_inserted) const override;
  bool trojan_triggers(BitSpan input) const override;
  /// The trigger reads the static plaintext/key ports, so it never toggles
  /// during an encryption.
  unsigned trigger_logic_toggles() const override { return 0; }

  static BitVec make_input(std::uint32_t plaintext, const katan::Key &key);
  static std::pair<std::uint32_t, katan::Key> split_input(BitSpan input);

 private:
  TrojanSpec spec_;
};

}  // namespace mtjbist

#endif  // MTJBIST_CIRCUITS_HPP
