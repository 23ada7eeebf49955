// Copyright mtjbist contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "mtjbist/detector.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "mtjbist/circuits.hpp"
#include "mtjbist/error.hpp"
#include "mtjbist/rng.hpp"

namespace mtjbist {
namespace {

// Naive reading of the definition: out[k] = sum_n a[n] * b[n + k - (N - 1)].
std::vector<double> oracle_xcorr(const std::vector<double> &a, const std::vector<double> &b) {
  const long n = static_cast<long>(a.size());
  std::vector<double> out;
  for (long k = 0; k < 2 * n - 1; ++k) {
    double acc = 0.0;
    for (long i = 0; i < n; ++i) {
      const long j = i + k - (n - 1);
      if (j >= 0 && j < n) acc += a[i] * b[j];
    }
    out.push_back(acc);
  }
  return out;
}

double oracle_detector(const std::vector<double> &a, const std::vector<double> &b) {
  double best = 0.0;
  for (double v : oracle_xcorr(a, b))
    if (std::abs(v) > best) best = std::abs(v);
  return best;
}

std::vector<double> random_signal(Rng &rng, std::size_t n) {
  std::vector<double> v(n);
  for (double &x : v) x = rng.uniform(-5.0, 5.0);
  return v;
}

CurrentTrace trace_of(std::vector<double> s) {
  CurrentTrace t;
  t.samples = std::move(s);
  return t;
}

TEST(CrossCorrelation, HandExpandedExamples) {
  // Expanding the definition for a = [1,2], b = [3,4]:
  //   k=0: a[1]b[0] = 6, k=1: a[0]b[0] + a[1]b[1] = 11, k=2: a[0]b[1] = 4.
  EXPECT_EQ(cross_correlation(std::vector<double>{1, 2}, std::vector<double>{3, 4}), (std::vector<double>{6, 11, 4}));
  EXPECT_EQ(cross_correlation(std::vector<double>{1, 0, 0}, std::vector<double>{1, 0, 0}),
            (std::vector<double>{0, 0, 1, 0, 0}));
  const std::vector<double> a{1.5, -2, 3};
  EXPECT_EQ(cross_correlation(a, a)[2], 1.5 * 1.5 + 4 + 9);
}

TEST(CrossCorrelation, Errors) {
  EXPECT_THROW(cross_correlation(std::vector<double>{1}, std::vector<double>{1, 2}), ConfigError);
  EXPECT_THROW(cross_correlation(std::vector<double>{}, std::vector<double>{}), ConfigError);
}

TEST(RelationalDetector, MatchesBruteForceOracleExactly) {
  Rng rng(123);
  for (int i = 0; i < 1000; ++i) {
    const std::size_t n = 1 + rng.below(32);
    const auto a = random_signal(rng, n), b = random_signal(rng, n);
    ASSERT_EQ(cross_correlation(a, b), oracle_xcorr(a, b));
    ASSERT_EQ(relational_detector(a, b), oracle_detector(a, b));
  }
}

TEST(RelationalDetector, SymmetryAndScaling) {
  Rng rng(9);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 1 + rng.below(64);
    const auto a = random_signal(rng, n), b = random_signal(rng, n);
    const double v = relational_detector(a, b);
    EXPECT_EQ(relational_detector(b, a), v);
    for (double alpha : {2.0, -0.5, -1.0}) {
      std::vector<double> sa = a;
      for (double &x : sa) x *= alpha;
      EXPECT_EQ(relational_detector(sa, b), std::abs(alpha) * v);
    }
  }
}

TEST(RelationalDetector, SelfValueIsEnergyForPositiveTraces) {
  Rng rng(4);
  std::vector<double> ref(16);
  for (double &x : ref) x = 20.0 + rng.uniform(0.0, 5.0);
  double energy = 0;
  for (double x : ref) energy += x * x;
  EXPECT_NEAR(relational_detector(ref, ref), energy, 1e-9 * energy);
  EXPECT_EQ(relational_detector(ref, std::vector<double>(16, 0.0)), 0.0);
  std::vector<double> twice = ref;
  for (double &x : twice) x *= 2;
  EXPECT_EQ(relational_detector(ref, twice), 2.0 * relational_detector(ref, ref));
}

TEST(RelationalDetector, NormalizedModeIsBounded) {
  Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    const auto a = random_signal(rng, 20), b = random_signal(rng, 20);
    const double v = relational_detector(a, b, DetectorMode::EnergyNormalized);
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0 + 1e-12);
  }
  EXPECT_EQ(relational_detector(std::vector<double>(4, 0.0), std::vector<double>(4, 1.0), DetectorMode::EnergyNormalized),
            0.0);
}

TEST(Reference, MustBeNormalCondition) {
  CurrentTrace t = trace_of({1, 2, 3});
  t.condition = Condition::trojan();
  EXPECT_THROW(make_reference(t), ConfigError);
}

TEST(Evaluation, LengthMismatchPropagates) {
  const ReferenceSignal ref = make_reference(trace_of({1, 2, 3}));
  const std::vector<CurrentTrace> traces{trace_of({1, 2})};
  EXPECT_THROW(evaluation_signal(ref, traces), ConfigError);
}

TEST(Threshold, MeanOfReferenceEvaluation) {
  EXPECT_DOUBLE_EQ(threshold_from_reference(EvaluationSignal{{1.0, 2.0, 6.0}}), 3.0);
  EXPECT_THROW(threshold_from_reference(EvaluationSignal{}), ConfigError);
}

TEST(Threshold, MatchesOracleOnASimulatedHoldout) {
  const CrcDecoderCircuit c{CrcConfig{}};
  const TraceParams p;
  const ReferenceSignal ref = make_reference(simulate_trace(c, bits_from_uint(0x5A, 8), Condition::normal(), p, 1));
  const Dataset holdout = build_dataset(c, ConditionKind::Normal, 77, p);
  double sum = 0;
  for (const auto &t : holdout.traces) sum += oracle_detector(ref.trace.samples, t.samples);
  EXPECT_EQ(threshold_from_reference(evaluation_signal(ref, holdout.traces)), sum / 20.0);
}

TEST(Classify, BandIsInclusiveAndSymmetric) {
  const EvaluationSignal eval{{90, 89.9, 100, 110, 110.1}};
  const auto d = classify(eval, DetectorConfig{100, 0.10});
  EXPECT_EQ(d, (std::vector<Decision>{Decision::Accept, Decision::Reject, Decision::Accept, Decision::Accept,
                                      Decision::Reject}));
  EXPECT_THROW(classify(eval, DetectorConfig{0.0, 0.1}), ConfigError);
  EXPECT_THROW(classify(eval, DetectorConfig{1.0, 0.0}), ConfigError);
}

TEST(Classify, WiderBandNeverRejectsMore) {
  Rng rng(6);
  EvaluationSignal eval;
  for (int i = 0; i < 500; ++i) eval.values.push_back(rng.uniform(50, 150));
  const auto narrow = classify(eval, DetectorConfig{100, 0.05});
  const auto mid = classify(eval, DetectorConfig{100, 0.10});
  const auto wide = classify(eval, DetectorConfig{100, 0.20});
  for (std::size_t i = 0; i < eval.values.size(); ++i) {
    if (narrow[i] == Decision::Accept) {
      EXPECT_EQ(mid[i], Decision::Accept);
    }
    if (mid[i] == Decision::Accept) {
      EXPECT_EQ(wide[i], Decision::Accept);
    }
  }
}

TEST(Classify, InvariantUnderJointScaling) {
  Rng rng(7);
  const auto ref = random_signal(rng, 24);
  std::vector<CurrentTrace> traces;
  for (int i = 0; i < 50; ++i) traces.push_back(trace_of(random_signal(rng, 24)));
  const ReferenceSignal r = make_reference(trace_of(ref));
  const EvaluationSignal e = evaluation_signal(r, traces);
  const double theta = threshold_from_reference(e);
  std::vector<CurrentTrace> scaled = traces;
  for (auto &t : scaled)
    for (double &x : t.samples) x *= 4.0;
  const EvaluationSignal es = evaluation_signal(r, scaled);
  EXPECT_EQ(classify(e, DetectorConfig{theta, 0.1}), classify(es, DetectorConfig{4.0 * theta, 0.1}));
}

TEST(Score, CountsFollowGroundTruth) {
  const std::vector<Decision> d{Decision::Accept, Decision::Accept, Decision::Reject};
  EXPECT_EQ(score(d, ConditionKind::Normal), (ConfusionCounts{0, 1, 2, 0}));
  EXPECT_EQ(score(d, ConditionKind::Temperature), (ConfusionCounts{0, 1, 2, 0}));
  EXPECT_EQ(score(d, ConditionKind::Trojan), (ConfusionCounts{1, 0, 0, 2}));
  EXPECT_EQ(score({}, ConditionKind::Normal).total(), 0u);
  EXPECT_EQ(score(d, ConditionKind::ProcessVariation).total(), d.size());
}

}  // namespace
}  // namespace mtjbist
