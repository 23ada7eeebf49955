// Copyright mtjbist contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#ifndef MTJBIST_TRACE_GEN_HPP
#define MTJBIST_TRACE_GEN_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mtjbist/bits.hpp"
#include "mtjbist/circuits.hpp"

namespace mtjbist {

enum class ConditionKind : std::uint8_t { Normal, ProcessVariation, Temperature, Trojan };

std::string_view to_string(ConditionKind k);
ConditionKind parse_condition_kind(std::string_view s);

/// Operating condition of the circuit while a trace is captured.
struct Condition {
  ConditionKind kind = ConditionKind::Normal;
  /// Relative transistor-length shift, ProcessVariation only, in [-0.2, 0.2].
  std::optional<double> pv_length_fraction;
  /// Die temperature in C, Temperature only, in [20, 120].
  std::optional<double> temperature_c;

  static Condition normal() { return {}; }
  static Condition process_variation(double length_fraction);
  static Condition temperature(double celsius);
  static Condition trojan();

  void validate() const;
  /// True when the trace comes from the unmodified circuit.
  bool original_circuit() const { return kind != ConditionKind::Trojan; }
};

inline constexpr double kPvFractionLimit = 0.20;
inline constexpr double kTemperatureMinC = 20.0;
inline constexpr double kTemperatureMaxC = 120.0;

/// Current model knobs. Units: ns, uA.
struct TraceParams {
  double dt_ns = 0.1;
  std::size_t length = 256;
  double i_unit_uA = 1.0;
  /// Static current drawn regardless of switching activity.
  double baseline_uA = 20.0;
  double noise_sigma_uA = 0.05;
  /// Payload spike height in units of i_unit.
  double spike_gain = 4.0e4;
  double k_pv = 0.5;
  /// Per degree C above 20 C.
  double k_temp = 0.002;
  /// Overrides the circuit's own trigger-logic toggle count when set.
  std::optional<unsigned> trigger_logic_toggles;

  void validate() const;
};

/// Multiplicative amplitude factor applied to switching current.
double condition_scale(const Condition &condition, const TraceParams &params);

struct CurrentTrace {
  double dt = 0.1;
  std::vector<double> samples;
  /// Hex of the input pattern that produced the trace.
  std::string pattern_id;
  Condition condition;
};

struct Dataset {
  std::string circuit;
  ConditionKind kind = ConditionKind::Normal;
  std::uint64_t seed = 0;
  std::vector<CurrentTrace> traces;
};

/// Per-step toggle counts of the clean circuit.
std::vector<std::uint32_t> toggle_profile(const Circuit &circuit, BitSpan pattern);

/// Current trace for one pattern: scaled switching current, static
/// baseline, seeded Gaussian noise and, under the Trojan condition, trigger
/// logic activity plus a payload spike on the first sample of each payload
/// step.
CurrentTrace simulate_trace(const Circuit &circuit, BitSpan pattern, const Condition &condition,
                            const TraceParams &params, std::uint64_t seed);

struct DatasetOptions {
  std::size_t n_patterns = 20;
  /// Trojan datasets only use patterns that wake the trigger.
  bool trojan_triggered_only = true;
  /// Patterns never drawn (e.g. the reference pattern).
  std::vector<BitVec> exclude;
};

/// Draws patterns uniformly (distinct where the space allows) and simulates
/// each one. ProcessVariation and Temperature traces each get their own
/// parameter drawn uniformly over the condition's range.
Dataset build_dataset(const Circuit &circuit, ConditionKind kind, std::uint64_t seed, const TraceParams &params,
                      const DatasetOptions &options = {});

/// Pattern with the most total switching activity: exhaustive for inputs
/// up to 16 bits, otherwise the best of 256 seeded candidates.
BitVec select_reference_pattern(const Circuit &circuit, std::uint64_t seed);

// Trace CSV: `time_ns,current_uA`. Dataset directory: `manifest` plus one
// trace_NNN.csv per trace.
void save_trace_csv(const std::filesystem::path &path, const CurrentTrace &trace);
CurrentTrace load_trace_csv(const std::filesystem::path &path);
void save_dataset(const std::filesystem::path &dir, const Dataset &dataset);
Dataset load_dataset(const std::filesystem::path &dir);

}  // namespace mtjbist

#endif  // MTJBIST_TRACE_GEN_HPP
