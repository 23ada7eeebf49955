// Copyright mtjbist contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#ifndef MTJBIST_BIST_HARNESS_HPP
#define MTJBIST_BIST_HARNESS_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mtjbist/crc_codec.hpp"
#include "mtjbist/mtj_device.hpp"

namespace mtjbist {

/// BIST-RS clock. Rising edges sit at 0, 2h, 4h, ... for half period h.
///
/// The encoder releases reset before the second rising edge and launches
/// the message at `launch_offset_cycles` full periods (7.5 ns at h = 3 ns).
/// The decoder is held in reset, remainder register all ones and error
/// high, until rising edge number `sample_edge` (1-based; 12 ns at h = 3 ns)
/// where it captures the MTJ outputs.
struct ClockConfig {
  double half_period = 3.0;
  double launch_offset_cycles = 1.25;
  unsigned sample_edge = 3;

  double full_period() const { return 2.0 * half_period; }
  /// Time of 1-based rising edge `n`.
  double rising_edge(unsigned n) const { return (n - 1) * full_period(); }
  double launch_time() const { return launch_offset_cycles * full_period(); }
  double sample_time() const { return rising_edge(sample_edge); }
  /// Throws ConfigError unless h > 0 and launch precedes the sample edge.
  void validate() const;
};

struct BistResult {
  LogicLevel error_flag = LogicLevel::Zero;
  BitVec launched_bits;
  BitVec sensed_bits;
  /// Cells whose sensed bit differs from the launched bit, ascending.
  std::vector<std::size_t> faulted_positions;
  double launch_time = 0.0;
  double sample_time = 0.0;
};

/// Decoder error output at time t: held high through reset, then the
/// integrity verdict once the sample edge has passed.
LogicLevel error_signal_at(const BistResult &result, double t);

/// One BIST-RS round. The array carries the message (data then check bits),
/// so its length must be data_width + check_width. The array is taken by
/// value; the caller's cells are not modified.
BistResult run_bist(BitSpan pattern, std::vector<MtjCell> array, const ClockConfig &clock, const CrcConfig &crc,
                    const MtjDelayModel &model);

struct AttackSpec {
  std::vector<std::size_t> target_indices;
  std::vector<double> thickness_multipliers;
  std::uint64_t rng_seed = 0;

  void validate(std::size_t array_size) const;
};

/// Multiplies tm_actual of each target by its factor.
std::vector<MtjCell> inject_attack(std::vector<MtjCell> array, const AttackSpec &spec);

/// Attack on `n_targets` distinct cells chosen with `seed`, each with a
/// multiplier drawn uniformly from [mult_lo, mult_hi].
AttackSpec random_attack(std::size_t array_size, std::size_t n_targets, double mult_lo, double mult_hi,
                         std::uint64_t seed);

struct SweepPoint {
  double half_period = 0.0;
  std::size_t pattern_index = 0;
  LogicLevel error_flag = LogicLevel::Zero;
  std::vector<std::size_t> faulted_positions;
};

struct SweepResult {
  /// Ordered by half period (input order), then pattern index.
  std::vector<SweepPoint> grid;
  /// Per pattern: largest half period at which the error fired.
  std::vector<std::optional<double>> largest_failing_half_period;
};

/// Runs every (half period, pattern) pair on a fresh copy of `array`.
/// `base_clock` supplies the launch offset and sample edge.
SweepResult frequency_sweep(const std::vector<MtjCell> &array, std::span<const BitVec> patterns,
                            std::span<const double> half_periods, const ClockConfig &base_clock,
                            const CrcConfig &crc, const MtjDelayModel &model);

struct CoverageResult {
  std::size_t infected = 0;
  /// Infected cells observed as faulted in at least one erroring round.
  std::size_t flagged_infected = 0;
  /// Rounds that raised the error although no cell is infected.
  std::size_t false_alarms = 0;
  std::size_t rounds = 0;
  /// flagged_infected / infected; nullopt when nothing is infected.
  std::optional<double> coverage;
  bool true_negative_run() const { return infected == 0 && false_alarms == 0; }
};

/// Coverage over an explicit pattern list at the clock's test frequency.
CoverageResult detection_coverage(const std::vector<MtjCell> &array, std::span<const BitVec> patterns,
                                  const ClockConfig &clock, const CrcConfig &crc, const MtjDelayModel &model);

/// Coverage over `n_patterns` uniformly drawn patterns.
CoverageResult detection_coverage(const std::vector<MtjCell> &array, std::uint64_t rng_seed, std::size_t n_patterns,
                                  const ClockConfig &clock, const CrcConfig &crc, const MtjDelayModel &model);

}  // namespace mtjbist

#endif  // MTJBIST_BIST_HARNESS_HPP
