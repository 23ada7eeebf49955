// Copyright mtjbist contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#ifndef MTJBIST_EXPERIMENT_HPP
#define MTJBIST_EXPERIMENT_HPP

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "mtjbist/circuits.hpp"
#include "mtjbist/config.hpp"
#include "mtjbist/csv.hpp"
#include "mtjbist/detector.hpp"
#include "mtjbist/trace_gen.hpp"

namespace mtjbist {

struct SensitivityRow {
  double sensitivity = 0.0;
  ConfusionCounts counts;
};

struct DatasetReport {
  Dataset dataset;
  EvaluationSignal eval;
  /// Decisions at the default sensitivity.
  std::vector<Decision> decisions;
  std::vector<SensitivityRow> confusion;

  std::string name() const { return std::string(to_string(dataset.kind)); }
};

/// Everything one run of the identification pipeline produces.
struct IdentificationReport {
  std::string circuit;
  BitVec reference_pattern;
  ReferenceSignal reference;
  /// Held-out normal dataset whose evaluation signal fixes the threshold.
  DatasetReport holdout;
  double threshold = 0.0;
  double default_sensitivity = kDefaultSensitivity;
  std::vector<DatasetReport> datasets;

  const DatasetReport &dataset(ConditionKind kind) const;
};

/// Reference pattern and its normal-condition trace for `circuit`.
ReferenceSignal experiment_reference(const Circuit &circuit, const ExperimentConfig &config, BitVec *pattern = nullptr);

/// Dataset for `kind` exactly as the experiments draw it. `holdout` selects
/// the normal dataset that fixes the threshold.
Dataset experiment_dataset(const Circuit &circuit, ConditionKind kind, const ExperimentConfig &config,
                           const BitVec &reference_pattern, bool holdout = false);

/// Reference trace from the most active pattern, threshold from a held-out
/// normal dataset, then one scored dataset per requested condition.
IdentificationReport run_identification(const Circuit &circuit, std::span<const ConditionKind> kinds,
                                        const ExperimentConfig &config);

/// CRC decoder under normal, process-variation, temperature and Trojan
/// conditions.
IdentificationReport run_experiment1(const ExperimentConfig &config);
/// KATAN-32 under normal and Trojan conditions.
IdentificationReport run_experiment2(const ExperimentConfig &config);

CsvTable confusion_table(const DatasetReport &report);
/// Writes reference.csv, summary.csv, evaluation.csv, confusion.csv,
/// confusion_<condition>.csv and the datasets/ directory tree.
void write_report(const std::filesystem::path &dir, const IdentificationReport &report);

std::string_view to_string(Decision d);
Decision parse_decision(std::string_view s);

/// Human-readable digest of any CSV this tool writes; recognizes the schema
/// from the header row.
std::string describe_csv(const std::filesystem::path &path);

}  // namespace mtjbist

#endif  // MTJBIST_EXPERIMENT_HPP
