// Copyright mtjbist contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#ifndef MTJBIST_CONFIG_HPP
#define MTJBIST_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mtjbist/bist_harness.hpp"
#include "mtjbist/crc_codec.hpp"
#include "mtjbist/detector.hpp"
#include "mtjbist/mtj_device.hpp"
#include "mtjbist/trace_gen.hpp"
#include "mtjbist/trojan.hpp"

namespace mtjbist {

using KeyValues = std::vector<std::pair<std::string, std::string>>;

/// Flat `key = value` text; '#' starts a comment line. Throws ConfigError
/// with a line number on malformed input.
KeyValues parse_key_values(std::istream &in, std::string_view source = "<config>");
KeyValues read_key_values(const std::filesystem::path &path);
void write_key_values(const std::filesystem::path &path, const KeyValues &kv);

std::vector<double> parse_double_list(std::string_view s);
/// Comma-separated indices; "a..b" expands to an inclusive range.
std::vector<std::size_t> parse_index_list(std::string_view s);

/// Every knob of the simulator, all with working defaults.
struct ExperimentConfig {
  std::uint64_t seed = 1;
  std::filesystem::path output_dir = "out";

  ClockConfig clock;

  std::string crc_poly_hex = "07";
  unsigned crc_width = 8;
  std::size_t crc_data_width = 8;
  std::optional<std::uint64_t> crc_receiver_init;

  MtjDelayModel mtj;
  std::optional<std::filesystem::path> mtj_array_path;
  /// Hex of the array state before launch (message width); all zeros if unset.
  std::optional<std::string> mtj_initial_state;

  AttackSpec attack;
  /// When > 0, the attack targets this many random cells instead.
  std::size_t attack_random_targets = 0;
  double attack_multiplier_lo = 1.25;
  double attack_multiplier_hi = 1.30;

  /// Half period used when the BIST runs "at the clock frequency under test".
  std::vector<double> sweep_half_periods = {3.0, 2.5, 2.0, 1.75, 1.5, 1.25, 1.0, 0.75, 0.5};

  TraceParams trace;
  std::size_t n_patterns = 20;
  bool trojan_triggered_only = true;

  std::vector<double> sensitivities = kDefaultSensitivities;
  double default_sensitivity = kDefaultSensitivity;
  DetectorMode detector_mode = DetectorMode::Raw;

  TrojanSpec trojan = TrojanSpec::katan_default();
  Malfunction crc_malfunction = Malfunction::Invert;

  /// Applies one key. Throws ConfigError for unknown keys or bad values.
  void set(std::string_view key, std::string_view value);
  void apply(const KeyValues &kv);
  void validate() const;

  CrcConfig crc() const;
  /// Array from the table file (or all nominal) with the initial state
  /// applied.
  std::vector<MtjCell> base_array() const;
  /// base_array() with the configured attack injected.
  std::vector<MtjCell> build_array() const;
  AttackSpec effective_attack(std::size_t array_size) const;
  TrojanSpec katan_trojan() const;
};

/// Loads a config file on top of the defaults. Throws ConfigError when the
/// file is missing or malformed.
ExperimentConfig load_config(const std::filesystem::path &path);

}  // namespace mtjbist

#endif  // MTJBIST_CONFIG_HPP
