// Copyright mtjbist contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "mtjbist/bist_harness.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "mtjbist/error.hpp"
#include "mtjbist/rng.hpp"

namespace mtjbist {

void ClockConfig::validate() const {
  if (!(half_period > 0.0) || !std::isfinite(half_period)) throw ConfigError("clock: half period must be positive");
  if (sample_edge < 1) throw ConfigError("clock: sample edge is 1-based");
  if (!(launch_offset_cycles >= 0.0)) throw ConfigError("clock: launch offset must be non-negative");
  if (!(launch_time() < sample_time())) throw ConfigError("clock: message launch must precede the sample edge");
}

LogicLevel error_signal_at(const BistResult &result, double t) {
  return t < result.sample_time ? LogicLevel::One : result.error_flag;
}

BistResult run_bist(BitSpan pattern, std::vector<MtjCell> array, const ClockConfig &clock, const CrcConfig &crc,
                    const MtjDelayModel &model) {
  clock.validate();
  if (array.size() != crc.message_width())
    throw ConfigError("bist: array has " + std::to_string(array.size()) + " cells, message needs " +
                      std::to_string(crc.message_width()));
  const Message sent = encode(pattern, crc);

  BistResult r;
  r.launched_bits = sent.bits();
  r.launch_time = clock.launch_time();
  r.sample_time = clock.sample_time();
  r.sensed_bits.resize(array.size());
  for (std::size_t i = 0; i < array.size(); ++i) {
    array[i] = apply_bit(std::move(array[i]), to_level(r.launched_bits[i]), r.launch_time, model);
    r.sensed_bits[i] = to_bit(sense(array[i], r.sample_time));
    if (r.sensed_bits[i] != r.launched_bits[i]) r.faulted_positions.push_back(i);
  }
  r.error_flag = verify(Message::split(r.sensed_bits, crc), crc);
  return r;
}

void AttackSpec::validate(std::size_t array_size) const {
  if (target_indices.size() != thickness_multipliers.size())
    throw ConfigError("attack: one multiplier per target is required");
  for (std::size_t i = 0; i < target_indices.size(); ++i) {
    if (target_indices[i] >= array_size)
      throw std::out_of_range("attack: target index " + std::to_string(target_indices[i]) + " outside array of " +
                              std::to_string(array_size));
    if (!(thickness_multipliers[i] > 0.0) || !std::isfinite(thickness_multipliers[i]))
      throw ConfigError("attack: multipliers must be positive");
  }
}

std::vector<MtjCell> inject_attack(std::vector<MtjCell> array, const AttackSpec &spec) {
  spec.validate(array.size());
  for (std::size_t i = 0; i < spec.target_indices.size(); ++i) {
    auto &cell = array[spec.target_indices[i]];
    cell = cell.with_thickness(cell.tm_actual() * spec.thickness_multipliers[i]);
  }
  return array;
}

AttackSpec random_attack(std::size_t array_size, std::size_t n_targets, double mult_lo, double mult_hi,
                         std::uint64_t seed) {
  if (n_targets > array_size) throw ConfigError("attack: more targets than cells");
  Rng rng(seed);
  std::vector<std::size_t> cells(array_size);
  for (std::size_t i = 0; i < array_size; ++i) cells[i] = i;
  // Partial Fisher-Yates.
  for (std::size_t i = 0; i < n_targets; ++i) std::swap(cells[i], cells[i + rng.below(array_size - i)]);
  AttackSpec spec;
  spec.rng_seed = seed;
  spec.target_indices.assign(cells.begin(), cells.begin() + static_cast<std::ptrdiff_t>(n_targets));
  std::sort(spec.target_indices.begin(), spec.target_indices.end());
  for (std::size_t i = 0; i < n_targets; ++i) spec.thickness_multipliers.push_back(rng.uniform(mult_lo, mult_hi));
  return spec;
}

SweepResult frequency_sweep(const std::vector<MtjCell> &array, std::span<const BitVec> patterns,
                            std::span<const double> half_periods, const ClockConfig &base_clock,
                            const CrcConfig &crc, const MtjDelayModel &model) {
  if (patterns.empty() || half_periods.empty()) throw ConfigError("sweep: patterns and half periods must be non-empty");
  SweepResult out;
  out.largest_failing_half_period.resize(patterns.size());
  for (double h : half_periods) {
    ClockConfig clock = base_clock;
    clock.half_period = h;
    for (std::size_t p = 0; p < patterns.size(); ++p) {
      const BistResult r = run_bist(patterns[p], array, clock, crc, model);
      out.grid.push_back(SweepPoint{h, p, r.error_flag, r.faulted_positions});
      if (r.error_flag == LogicLevel::One) {
        auto &best = out.largest_failing_half_period[p];
        if (!best || h > *best) best = h;
      }
    }
  }
  return out;
}

CoverageResult detection_coverage(const std::vector<MtjCell> &array, std::span<const BitVec> patterns,
                                  const ClockConfig &clock, const CrcConfig &crc, const MtjDelayModel &model) {
  if (patterns.empty()) throw ConfigError("coverage: need at least one pattern");
  std::set<std::size_t> infected;
  for (std::size_t i = 0; i < array.size(); ++i)
    if (is_malicious(array[i], model)) infected.insert(i);

  CoverageResult cov;
  cov.infected = infected.size();
  std::set<std::size_t> flagged;
  for (const auto &p : patterns) {
    const BistResult r = run_bist(p, array, clock, crc, model);
    ++cov.rounds;
    if (r.error_flag != LogicLevel::One) continue;
    if (infected.empty()) ++cov.false_alarms;
    for (std::size_t i : r.faulted_positions)
      if (infected.count(i)) flagged.insert(i);
  }
  cov.flagged_infected = flagged.size();
  if (!infected.empty()) cov.coverage = static_cast<double>(flagged.size()) / static_cast<double>(infected.size());
  return cov;
}

CoverageResult detection_coverage(const std::vector<MtjCell> &array, std::uint64_t rng_seed, std::size_t n_patterns,
                                  const ClockConfig &clock, const CrcConfig &crc, const MtjDelayModel &model) {
  if (n_patterns < 1) throw ConfigError("coverage: n_patterns must be >= 1");
  Rng rng(rng_seed);
  std::vector<BitVec> patterns;
  patterns.reserve(n_patterns);
  for (std::size_t i = 0; i < n_patterns; ++i) patterns.push_back(rng.bits(crc.data_width));
  return detection_coverage(array, patterns, clock, crc, model);
}

}  // namespace mtjbist
