// Copyright mtjbist contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "mtjbist/detector.hpp"

#include <cmath>
#include <string>

#include "mtjbist/error.hpp"

namespace mtjbist {

std::vector<double> cross_correlation(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ConfigError("cross_correlation: length mismatch");
  if (a.empty()) throw ConfigError("cross_correlation: empty signals");
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(a.size());
  std::vector<double> out(static_cast<std::size_t>(2 * n - 1), 0.0);
  for (std::ptrdiff_t k = 0; k < 2 * n - 1; ++k) {
    const std::ptrdiff_t shift = k - (n - 1);
    // b index n + shift must fall inside [0, n).
    const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, -shift);
    const std::ptrdiff_t hi = std::min<std::ptrdiff_t>(n, n - shift);
    double acc = 0.0;
    for (std::ptrdiff_t i = lo; i < hi; ++i) acc += a[i] * b[i + shift];
    out[k] = acc;
  }
  return out;
}

double relational_detector(std::span<const double> reference, std::span<const double> test, DetectorMode mode) {
  const auto xc = cross_correlation(reference, test);
  double peak = 0.0;
  for (double v : xc) peak = std::max(peak, std::abs(v));
  if (mode == DetectorMode::Raw) return peak;
  double ea = 0.0, eb = 0.0;
  for (double v : reference) ea += v * v;
  for (double v : test) eb += v * v;
  const double denom = std::sqrt(ea * eb);
  return denom > 0.0 ? peak / denom : 0.0;
}

ReferenceSignal make_reference(CurrentTrace trace) {
  if (trace.condition.kind != ConditionKind::Normal)
    throw ConfigError("reference signal must be captured under the normal condition");
  return ReferenceSignal{std::move(trace)};
}

EvaluationSignal evaluation_signal(const ReferenceSignal &ref, std::span<const CurrentTrace> traces, DetectorMode mode) {
  EvaluationSignal eval;
  eval.values.reserve(traces.size());
  for (const auto &t : traces) {
    if (t.samples.size() != ref.trace.samples.size())
      throw ConfigError("evaluation: trace " + t.pattern_id + " has " + std::to_string(t.samples.size()) +
                        " samples, reference has " + std::to_string(ref.trace.samples.size()));
    eval.values.push_back(relational_detector(ref.trace.samples, t.samples, mode));
  }
  return eval;
}

double threshold_from_reference(const EvaluationSignal &ref_eval) {
  if (ref_eval.values.empty()) throw ConfigError("threshold: empty reference evaluation signal");
  double sum = 0.0;
  for (double v : ref_eval.values) sum += v;
  return sum / static_cast<double>(ref_eval.values.size());
}

void DetectorConfig::validate() const {
  if (!(threshold > 0.0)) throw ConfigError("detector: threshold must be positive");
  if (!(sensitivity > 0.0)) throw ConfigError("detector: sensitivity must be positive");
}

std::vector<Decision> classify(const EvaluationSignal &eval, const DetectorConfig &config) {
  config.validate();
  std::vector<Decision> out;
  out.reserve(eval.values.size());
  const double band = config.sensitivity * config.threshold;
  for (double v : eval.values) out.push_back(std::abs(v - config.threshold) <= band ? Decision::Accept : Decision::Reject);
  return out;
}

ConfusionCounts score(std::span<const Decision> decisions, ConditionKind condition) {
  const bool original = condition != ConditionKind::Trojan;
  ConfusionCounts c;
  for (Decision d : decisions) {
    const bool rejected = d == Decision::Reject;
    if (rejected && !original) ++c.tp;
    else if (rejected && original) ++c.fp;
    else if (!rejected && original) ++c.tn;
    else ++c.fn;
  }
  return c;
}

}  // namespace mtjbist
