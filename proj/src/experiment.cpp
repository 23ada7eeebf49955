// Copyright mtjbist contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "mtjbist/experiment.hpp"

#include <algorithm>
#include <sstream>

#include "mtjbist/error.hpp"
#include "mtjbist/rng.hpp"

namespace mtjbist {

namespace {

constexpr std::uint64_t kStreamReference = 0x726566;  // "ref"
constexpr std::uint64_t kStreamHoldout = 0x686f6c64;  // "hold"
constexpr std::uint64_t kStreamDataset = 0x64617461;  // "data"

DatasetReport evaluate(Dataset dataset, const ReferenceSignal &ref, double threshold, const ExperimentConfig &config) {
  DatasetReport r;
  r.eval = evaluation_signal(ref, dataset.traces, config.detector_mode);
  r.decisions = classify(r.eval, DetectorConfig{threshold, config.default_sensitivity});
  for (double s : config.sensitivities) {
    const auto decisions = classify(r.eval, DetectorConfig{threshold, s});
    r.confusion.push_back(SensitivityRow{s, score(decisions, dataset.kind)});
  }
  r.dataset = std::move(dataset);
  return r;
}

}  // namespace

const DatasetReport &IdentificationReport::dataset(ConditionKind kind) const {
  for (const auto &d : datasets)
    if (d.dataset.kind == kind) return d;
  throw ConfigError("report has no " + std::string(to_string(kind)) + " dataset");
}

ReferenceSignal experiment_reference(const Circuit &circuit, const ExperimentConfig &config, BitVec *pattern) {
  BitVec p = select_reference_pattern(circuit, derive_seed(config.seed, kStreamReference));
  ReferenceSignal ref = make_reference(
      simulate_trace(circuit, p, Condition::normal(), config.trace, derive_seed(config.seed, kStreamReference, 1)));
  if (pattern) *pattern = std::move(p);
  return ref;
}

Dataset experiment_dataset(const Circuit &circuit, ConditionKind kind, const ExperimentConfig &config,
                           const BitVec &reference_pattern, bool holdout) {
  if (holdout && kind != ConditionKind::Normal) throw ConfigError("the held-out dataset is a normal-condition dataset");
  DatasetOptions options;
  options.n_patterns = config.n_patterns;
  options.trojan_triggered_only = config.trojan_triggered_only;
  options.exclude = {reference_pattern};
  const std::uint64_t seed = holdout ? derive_seed(config.seed, kStreamHoldout)
                                     : derive_seed(config.seed, kStreamDataset, static_cast<std::uint64_t>(kind));
  return build_dataset(circuit, kind, seed, config.trace, options);
}

IdentificationReport run_identification(const Circuit &circuit, std::span<const ConditionKind> kinds,
                                        const ExperimentConfig &config) {
  config.validate();
  IdentificationReport report;
  report.circuit = std::string(circuit.name());
  report.default_sensitivity = config.default_sensitivity;
  report.reference = experiment_reference(circuit, config, &report.reference_pattern);

  Dataset holdout = experiment_dataset(circuit, ConditionKind::Normal, config, report.reference_pattern, true);
  report.threshold =
      threshold_from_reference(evaluation_signal(report.reference, holdout.traces, config.detector_mode));
  report.holdout = evaluate(std::move(holdout), report.reference, report.threshold, config);

  for (ConditionKind kind : kinds)
    report.datasets.push_back(evaluate(experiment_dataset(circuit, kind, config, report.reference_pattern),
                                       report.reference, report.threshold, config));
  return report;
}

IdentificationReport run_experiment1(const ExperimentConfig &config) {
  const CrcDecoderCircuit circuit(config.crc(), config.crc_malfunction);
  static constexpr ConditionKind kKinds[] = {ConditionKind::Normal, ConditionKind::ProcessVariation,
                                             ConditionKind::Temperature, ConditionKind::Trojan};
  return run_identification(circuit, kKinds, config);
}

IdentificationReport run_experiment2(const ExperimentConfig &config) {
  const KatanCircuit circuit(config.katan_trojan());
  static constexpr ConditionKind kKinds[] = {ConditionKind::Normal, ConditionKind::Trojan};
  return run_identification(circuit, kKinds, config);
}

std::string_view to_string(Decision d) { return d == Decision::Accept ? "accept" : "reject"; }

Decision parse_decision(std::string_view s) {
  if (s == "accept") return Decision::Accept;
  if (s == "reject") return Decision::Reject;
  throw ConfigError("unknown decision '" + std::string(s) + "'");
}

CsvTable confusion_table(const DatasetReport &report) {
  CsvTable t;
  t.header = {"sensitivity", "tp", "fp", "tn", "fn"};
  for (const auto &row : report.confusion)
    t.rows.push_back({format_double(row.sensitivity), std::to_string(row.counts.tp), std::to_string(row.counts.fp),
                      std::to_string(row.counts.tn), std::to_string(row.counts.fn)});
  return t;
}

void write_report(const std::filesystem::path &dir, const IdentificationReport &report) {
  std::filesystem::create_directories(dir);
  save_trace_csv(dir / "reference.csv", report.reference.trace);

  CsvTable summary;
  summary.header = {"key", "value"};
  summary.rows = {{"circuit", report.circuit},
                  {"reference_pattern", bits_to_hex(report.reference_pattern)},
                  {"threshold", format_double(report.threshold)},
                  {"default_sensitivity", format_double(report.default_sensitivity)},
                  {"holdout_traces", std::to_string(report.holdout.dataset.traces.size())}};
  write_csv(dir / "summary.csv", summary);

  CsvTable eval;
  eval.header = {"dataset", "index", "pattern_hex", "value", "decision"};
  auto add_eval = [&eval](const std::string &name, const DatasetReport &r) {
    for (std::size_t i = 0; i < r.eval.values.size(); ++i)
      eval.rows.push_back({name, std::to_string(i), r.dataset.traces[i].pattern_id, format_double(r.eval.values[i]),
                           std::string(to_string(r.decisions[i]))});
  };
  add_eval("reference_holdout", report.holdout);
  for (const auto &d : report.datasets) add_eval(d.name(), d);
  write_csv(dir / "evaluation.csv", eval);

  CsvTable combined;
  combined.header = {"dataset", "sensitivity", "tp", "fp", "tn", "fn"};
  for (const auto &d : report.datasets) {
    const CsvTable t = confusion_table(d);
    write_csv(dir / ("confusion_" + d.name() + ".csv"), t);
    for (const auto &row : t.rows) {
      std::vector<std::string> r = {d.name()};
      r.insert(r.end(), row.begin(), row.end());
      combined.rows.push_back(std::move(r));
    }
  }
  write_csv(dir / "confusion.csv", combined);

  save_dataset(dir / "datasets" / "reference_holdout", report.holdout.dataset);
  for (const auto &d : report.datasets) save_dataset(dir / "datasets" / d.name(), d.dataset);
}

std::string describe_csv(const std::filesystem::path &path) {
  const CsvTable t = read_csv(path);
  std::ostringstream os;
  os << path.string() << ": " << t.rows.size() << " rows\n";
  auto has = [&t](std::string_view c) { return std::find(t.header.begin(), t.header.end(), c) != t.header.end(); };

  if (has("tp") && has("fp") && has("tn") && has("fn") && has("sensitivity")) {
    const bool named = has("dataset");
    for (const auto &r : t.rows) {
      const auto tp = parse_u64(r[t.column("tp")]), fp = parse_u64(r[t.column("fp")]);
      const auto tn = parse_u64(r[t.column("tn")]), fn = parse_u64(r[t.column("fn")]);
      const auto total = tp + fp + tn + fn;
      const double accuracy = total ? static_cast<double>(tp + tn) / static_cast<double>(total) : 0.0;
      os << "  " << (named ? r[t.column("dataset")] + " " : "") << "sensitivity=" << r[t.column("sensitivity")]
         << " tp=" << tp << " fp=" << fp << " tn=" << tn << " fn=" << fn << " accuracy=" << format_double(accuracy)
         << '\n';
    }
  } else if (has("value") && has("decision")) {
    std::size_t accepted = 0;
    double lo = 0.0, hi = 0.0;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
      const double v = parse_double(t.rows[i][t.column("value")]);
      lo = i ? std::min(lo, v) : v;
      hi = i ? std::max(hi, v) : v;
      accepted += parse_decision(t.rows[i][t.column("decision")]) == Decision::Accept;
    }
    os << "  accepted=" << accepted << " rejected=" << t.rows.size() - accepted << " min=" << format_double(lo)
       << " max=" << format_double(hi) << '\n';
  } else if (has("time_ns") && has("current_uA")) {
    double lo = 0.0, hi = 0.0, sum = 0.0;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
      const double v = parse_double(t.rows[i][t.column("current_uA")]);
      lo = i ? std::min(lo, v) : v;
      hi = i ? std::max(hi, v) : v;
      sum += v;
    }
    os << "  trace: min=" << format_double(lo) << " max=" << format_double(hi)
       << " mean=" << format_double(t.rows.empty() ? 0.0 : sum / static_cast<double>(t.rows.size())) << " uA\n";
  } else if (has("error_flag") && has("half_period_ns")) {
    std::size_t errors = 0;
    for (const auto &r : t.rows) errors += parse_u64(r[t.column("error_flag")]) != 0;
    os << "  bist rounds=" << t.rows.size() << " errors=" << errors << '\n';
  } else if (has("index") && has("tm_actual")) {
    os << "  mtj array of " << t.rows.size() << " cells\n";
  } else if (has("key") && has("value")) {
    for (const auto &r : t.rows) os << "  " << r[0] << " = " << r[1] << '\n';
  } else {
    os << "  columns:";
    for (const auto &h : t.header) os << ' ' << h;
    os << '\n';
  }
  return os.str();
}

}  // namespace mtjbist
