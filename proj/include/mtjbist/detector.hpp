// Copyright mtjbist contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#ifndef MTJBIST_DETECTOR_HPP
#define MTJBIST_DETECTOR_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "mtjbist/trace_gen.hpp"

namespace mtjbist {

/// Full linear cross-correlation, 2N-1 lags:
/// out[k] = sum_n a[n] * b[n + k - (N-1)], zero outside the signals.
/// Throws ConfigError unless both inputs have the same non-zero length.
std::vector<double> cross_correlation(std::span<const double> a, std::span<const double> b);

enum class DetectorMode : std::uint8_t {
  /// max |xcorr|
  Raw,
  /// max |xcorr| / sqrt(E_a * E_b); insensitive to trace amplitude.
  EnergyNormalized,
};

/// Relational detector between a reference and a test signal.
double relational_detector(std::span<const double> reference, std::span<const double> test,
                           DetectorMode mode = DetectorMode::Raw);

/// Trace captured from the designated reference pattern under the normal
/// condition.
struct ReferenceSignal {
  CurrentTrace trace;
};

/// Throws ConfigError if the trace is not a normal-condition trace.
ReferenceSignal make_reference(CurrentTrace trace);

struct EvaluationSignal {
  std::vector<double> values;
};

EvaluationSignal evaluation_signal(const ReferenceSignal &ref, std::span<const CurrentTrace> traces,
                                   DetectorMode mode = DetectorMode::Raw);

/// Mean of a reference evaluation signal. Throws ConfigError when empty.
double threshold_from_reference(const EvaluationSignal &ref_eval);

struct DetectorConfig {
  double threshold = 1.0;
  /// Relative half-width of the acceptance band around the threshold.
  double sensitivity = 0.10;

  void validate() const;
};

inline constexpr double kDefaultSensitivity = 0.10;
inline const std::vector<double> kDefaultSensitivities = {0.05, 0.10, 0.20};

enum class Decision : std::uint8_t { Accept, Reject };

/// Accept iff |value - threshold| <= sensitivity * threshold.
std::vector<Decision> classify(const EvaluationSignal &eval, const DetectorConfig &config);

struct ConfusionCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;
  std::size_t fn = 0;

  std::size_t total() const { return tp + fp + tn + fn; }
  bool operator==(const ConfusionCounts &) const = default;
};

/// Scores decisions against the dataset's ground truth: only the Trojan
/// condition is "not from the original circuit".
ConfusionCounts score(std::span<const Decision> decisions, ConditionKind condition);

}  // namespace mtjbist

#endif  // MTJBIST_DETECTOR_HPP
