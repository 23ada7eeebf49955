// Copyright mtjbist contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

// Batch runner for the MTJ BIST-RS simulator and the current-signal
// identification experiments.
//
// Exit codes: 0 success / nothing detected, 1 usage or configuration error,
// 2 a BIST error flag fired.

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mtjbist/bist_harness.hpp"
#include "mtjbist/config.hpp"
#include "mtjbist/csv.hpp"
#include "mtjbist/error.hpp"
#include "mtjbist/experiment.hpp"
#include "mtjbist/katan.hpp"
#include "mtjbist/mtj_array_io.hpp"
#include "mtjbist/rng.hpp"
#include "mtjbist/trojan.hpp"

namespace fs = std::filesystem;
using namespace mtjbist;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitDetected = 2;

struct GlobalOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out;
};

ExperimentConfig resolve_config(const GlobalOptions &g) {
  ExperimentConfig cfg = g.config_path.empty() ? ExperimentConfig{} : load_config(g.config_path);
  if (g.seed) cfg.seed = *g.seed;
  if (!g.out.empty()) cfg.output_dir = g.out;
  cfg.validate();
  return cfg;
}

std::string join_indices(const std::vector<std::size_t> &v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ';';
    s += std::to_string(v[i]);
  }
  return s;
}

std::vector<BitVec> bist_patterns(const std::vector<std::string> &hex, std::size_t n_random, const ExperimentConfig &cfg) {
  const CrcConfig crc = cfg.crc();
  std::vector<BitVec> out;
  for (const auto &h : hex) out.push_back(bits_from_hex(h, crc.data_width));
  if (n_random > 0) {
    Rng rng(derive_seed(cfg.seed, 0x62697374));
    for (std::size_t i = 0; i < n_random; ++i) out.push_back(rng.bits(crc.data_width));
  }
  if (out.empty()) {
    if (crc.data_width <= 12) {
      for (std::uint64_t v = 0; v < (1ull << crc.data_width); ++v) out.push_back(bits_from_uint(v, crc.data_width));
    } else {
      Rng rng(derive_seed(cfg.seed, 0x62697374));
      for (int i = 0; i < 256; ++i) out.push_back(rng.bits(crc.data_width));
    }
  }
  return out;
}

CsvTable sweep_table(const SweepResult &sweep, const std::vector<BitVec> &patterns) {
  CsvTable t;
  t.header = {"half_period_ns", "pattern_hex", "error_flag", "faulted_indices"};
  for (const auto &p : sweep.grid)
    t.rows.push_back({format_double(p.half_period), bits_to_hex(patterns[p.pattern_index]),
                      std::to_string(to_bit(p.error_flag)), join_indices(p.faulted_positions)});
  return t;
}

int cmd_bist(const GlobalOptions &g, bool sweep_mode, const std::vector<std::string> &patterns_hex,
             std::size_t n_random, std::optional<double> half_period, const std::vector<double> &half_periods) {
  ExperimentConfig cfg = resolve_config(g);
  const auto array = cfg.build_array();
  const auto patterns = bist_patterns(patterns_hex, n_random, cfg);
  std::vector<double> grid;
  if (sweep_mode) grid = half_periods.empty() ? cfg.sweep_half_periods : half_periods;
  else grid = {half_period.value_or(cfg.clock.half_period)};

  const SweepResult sweep = frequency_sweep(array, patterns, grid, cfg.clock, cfg.crc(), cfg.mtj);
  const fs::path out = cfg.output_dir;
  write_csv(out / (sweep_mode ? "sweep_results.csv" : "bist_results.csv"), sweep_table(sweep, patterns));

  const auto errors = std::count_if(sweep.grid.begin(), sweep.grid.end(),
                                    [](const SweepPoint &p) { return p.error_flag == LogicLevel::One; });
  if (sweep_mode) {
    CsvTable summary;
    summary.header = {"pattern_hex", "largest_failing_half_period_ns"};
    for (std::size_t i = 0; i < patterns.size(); ++i) {
      const auto &h = sweep.largest_failing_half_period[i];
      summary.rows.push_back({bits_to_hex(patterns[i]), h ? format_double(*h) : "none"});
    }
    write_csv(out / "sweep_summary.csv", summary);
  }
  std::size_t malicious = 0;
  for (const auto &c : array) malicious += is_malicious(c, cfg.mtj);
  std::cout << "rounds=" << sweep.grid.size() << " errors=" << errors << " malicious_cells=" << malicious << '\n';
  return errors > 0 ? kExitDetected : kExitOk;
}

int cmd_attack(const GlobalOptions &g, const std::vector<std::size_t> &targets, const std::vector<double> &multipliers,
               std::size_t random_targets) {
  ExperimentConfig cfg = resolve_config(g);
  auto cells = cfg.base_array();
  AttackSpec spec;
  if (random_targets > 0) {
    spec = random_attack(cells.size(), random_targets, cfg.attack_multiplier_lo, cfg.attack_multiplier_hi, cfg.seed);
  } else if (!targets.empty()) {
    spec.target_indices = targets;
    spec.thickness_multipliers = multipliers;
    if (spec.thickness_multipliers.size() == 1 && targets.size() > 1)
      spec.thickness_multipliers.assign(targets.size(), multipliers.front());
  } else {
    spec = cfg.effective_attack(cells.size());
  }
  cells = inject_attack(std::move(cells), spec);
  save_mtj_array(fs::path(cfg.output_dir) / "array.csv", cells);
  std::cout << "malicious:";
  for (std::size_t i = 0; i < cells.size(); ++i)
    if (is_malicious(cells[i], cfg.mtj)) std::cout << ' ' << i;
  std::cout << '\n';
  return kExitOk;
}

std::unique_ptr<Circuit> make_circuit(const std::string &name, const ExperimentConfig &cfg) {
  if (name == "crc" || name == "crc_decoder") return std::make_unique<CrcDecoderCircuit>(cfg.crc(), cfg.crc_malfunction);
  if (name == "katan" || name == "katan32") return std::make_unique<KatanCircuit>(cfg.katan_trojan());
  throw ConfigError("unknown circuit '" + name + "'");
}

int cmd_trace(const GlobalOptions &g, std::string circuit_name, const std::string &condition, std::optional<std::size_t> n,
              bool reference, bool holdout) {
  ExperimentConfig cfg = resolve_config(g);
  if (n) cfg.n_patterns = *n;
  if (circuit_name.empty()) circuit_name = std::string(to_string(cfg.trojan.target));
  const auto circuit = make_circuit(circuit_name, cfg);
  const fs::path out = cfg.output_dir;
  BitVec ref_pattern;
  const ReferenceSignal ref = experiment_reference(*circuit, cfg, &ref_pattern);
  if (reference) {
    save_trace_csv(out / "reference.csv", ref.trace);
    std::cout << "reference pattern " << bits_to_hex(ref_pattern) << '\n';
    return kExitOk;
  }
  const Dataset ds = experiment_dataset(*circuit, parse_condition_kind(condition), cfg, ref_pattern, holdout);
  save_dataset(out, ds);
  std::cout << "wrote " << ds.traces.size() << " traces to " << out.string() << '\n';
  return kExitOk;
}

double threshold_from_summary(const fs::path &path) {
  const CsvTable t = read_csv(path);
  for (const auto &r : t.rows)
    if (r[t.column("key")] == "threshold") return parse_double(r[t.column("value")]);
  throw ConfigError(path.string() + ": no threshold row");
}

int cmd_detect_eval(const GlobalOptions &g, const std::string &dataset_dir, const std::string &reference_csv,
                    std::optional<double> threshold, const std::string &holdout_dir, std::optional<double> sensitivity) {
  ExperimentConfig cfg = resolve_config(g);
  const Dataset ds = load_dataset(dataset_dir);
  const ReferenceSignal ref = make_reference(load_trace_csv(reference_csv));
  if (!threshold) {
    if (holdout_dir.empty()) throw ConfigError("detect eval needs --threshold or --holdout");
    const Dataset holdout = load_dataset(holdout_dir);
    threshold = threshold_from_reference(evaluation_signal(ref, holdout.traces, cfg.detector_mode));
  }
  const double s = sensitivity.value_or(cfg.default_sensitivity);
  const EvaluationSignal eval = evaluation_signal(ref, ds.traces, cfg.detector_mode);
  const auto decisions = classify(eval, DetectorConfig{*threshold, s});

  CsvTable t;
  t.header = {"index", "value", "decision"};
  for (std::size_t i = 0; i < eval.values.size(); ++i)
    t.rows.push_back({std::to_string(i), format_double(eval.values[i]), std::string(to_string(decisions[i]))});
  const fs::path out = cfg.output_dir;
  write_csv(out / "evaluation.csv", t);
  CsvTable th;
  th.header = {"key", "value"};
  th.rows = {{"threshold", format_double(*threshold)}, {"sensitivity", format_double(s)},
             {"condition", std::string(to_string(ds.kind))}};
  write_csv(out / "threshold.csv", th);
  std::cout << "threshold=" << format_double(*threshold) << " accepted="
            << std::count(decisions.begin(), decisions.end(), Decision::Accept) << '/' << decisions.size() << '\n';
  return kExitOk;
}

int cmd_detect_score(const GlobalOptions &g, const std::string &evaluation_csv, std::optional<double> threshold,
                     const std::string &threshold_csv, std::string condition) {
  ExperimentConfig cfg = resolve_config(g);
  if (!threshold) {
    if (threshold_csv.empty()) throw ConfigError("detect score needs --threshold or --threshold-file");
    threshold = threshold_from_summary(threshold_csv);
    if (condition.empty()) {
      const CsvTable t = read_csv(threshold_csv);
      for (const auto &r : t.rows)
        if (r[t.column("key")] == "condition") condition = r[t.column("value")];
    }
  }
  if (condition.empty()) throw ConfigError("detect score needs --condition");
  const ConditionKind kind = parse_condition_kind(condition);
  const CsvTable in = read_csv(evaluation_csv);
  EvaluationSignal eval;
  for (const auto &r : in.rows) eval.values.push_back(parse_double(r[in.column("value")]));

  DatasetReport report;
  report.dataset.kind = kind;
  for (double s : cfg.sensitivities)
    report.confusion.push_back(SensitivityRow{s, score(classify(eval, DetectorConfig{*threshold, s}), kind)});
  const CsvTable t = confusion_table(report);
  write_csv(fs::path(cfg.output_dir) / "confusion.csv", t);
  std::cout << to_csv_string(t);
  return kExitOk;
}

int cmd_katan(bool decrypt, const std::string &key_hex, const std::string &block_hex, bool trojan,
              const GlobalOptions &g) {
  const ExperimentConfig cfg = resolve_config(g);
  const katan::Key key = katan::key_from_hex(key_hex);
  const std::uint32_t block = katan::block_from_hex(block_hex);
  std::uint32_t result;
  if (decrypt) result = katan::decrypt32(block, key);
  else result = trojan ? encrypt32_trojan(block, key, cfg.katan_trojan()) : katan::encrypt32(block, key);
  std::cout << katan::block_to_hex(result) << '\n';
  return kExitOk;
}

int cmd_experiment(const GlobalOptions &g, int which) {
  const ExperimentConfig cfg = resolve_config(g);
  const IdentificationReport report = which == 1 ? run_experiment1(cfg) : run_experiment2(cfg);
  write_report(cfg.output_dir, report);
  std::cout << "circuit=" << report.circuit << " threshold=" << format_double(report.threshold) << '\n';
  for (const auto &d : report.datasets)
    for (const auto &row : d.confusion)
      std::cout << d.name() << " s=" << format_double(row.sensitivity) << " tp=" << row.counts.tp
                << " fp=" << row.counts.fp << " tn=" << row.counts.tn << " fn=" << row.counts.fn << '\n';
  return kExitOk;
}

int cmd_report(const std::vector<std::string> &paths) {
  for (const auto &p : paths) {
    if (fs::is_directory(p)) {
      std::vector<fs::path> files;
      for (const auto &e : fs::directory_iterator(p))
        if (e.path().extension() == ".csv") files.push_back(e.path());
      std::sort(files.begin(), files.end());
      for (const auto &f : files) std::cout << describe_csv(f);
    } else {
      std::cout << describe_csv(p);
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"MTJ BIST-RS simulator and current-signal Trojan identification"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--config", g.config_path, "Key-value config file");
  app.add_option("--seed", g.seed, "Global RNG seed");
  app.add_option("--out", g.out, "Output directory");

  int exit_code = kExitOk;
  std::function<int()> action;

  // bist
  auto *bist = app.add_subcommand("bist", "BIST-RS rounds and frequency sweeps");
  bist->require_subcommand(1);
  std::vector<std::string> patterns;
  std::size_t n_random = 0;
  std::optional<double> half_period;
  std::vector<double> half_periods;
  auto *bist_run = bist->add_subcommand("run", "Run BIST rounds at one clock frequency");
  bist_run->add_option("--pattern", patterns, "Data pattern(s) in hex");
  bist_run->add_option("--random", n_random, "Number of random patterns");
  bist_run->add_option("--half-period", half_period, "Clock half period in ns");
  bist_run->callback([&] { action = [&] { return cmd_bist(g, false, patterns, n_random, half_period, {}); }; });
  auto *bist_sweep = bist->add_subcommand("sweep", "Sweep the clock half period");
  bist_sweep->add_option("--pattern", patterns, "Data pattern(s) in hex");
  bist_sweep->add_option("--random", n_random, "Number of random patterns");
  bist_sweep->add_option("--half-periods", half_periods, "Half periods in ns")->delimiter(',');
  bist_sweep->callback([&] { action = [&] { return cmd_bist(g, true, patterns, n_random, std::nullopt, half_periods); }; });

  // attack
  auto *attack = app.add_subcommand("attack", "Free-layer thickness attacks");
  attack->require_subcommand(1);
  std::vector<std::size_t> targets;
  std::vector<double> multipliers;
  std::size_t random_targets = 0;
  auto *inject = attack->add_subcommand("inject", "Scale the thickness of target cells and write the array");
  inject->add_option("--targets", targets, "Cell indices")->delimiter(',');
  inject->add_option("--multipliers", multipliers, "Thickness factors (one, or one per target)")->delimiter(',');
  inject->add_option("--random-targets", random_targets, "Attack this many seeded random cells");
  inject->callback([&] { action = [&] { return cmd_attack(g, targets, multipliers, random_targets); }; });

  // trace
  auto *trace = app.add_subcommand("trace", "Synthetic current traces");
  trace->require_subcommand(1);
  std::string circuit_name, condition = "normal";
  std::optional<std::size_t> n_traces;
  bool reference = false, holdout = false;
  auto *gen = trace->add_subcommand("gen", "Generate a dataset directory (or the reference trace)");
  gen->add_option("--circuit", circuit_name, "crc | katan");
  gen->add_option("--condition", condition, "normal | pv | temp | trojan");
  gen->add_option("--n", n_traces, "Number of traces");
  gen->add_flag("--reference", reference, "Write only the reference trace");
  gen->add_flag("--holdout", holdout, "Draw the held-out normal dataset");
  gen->callback([&] { action = [&] { return cmd_trace(g, circuit_name, condition, n_traces, reference, holdout); }; });

  // detect
  auto *detect = app.add_subcommand("detect", "Relational detector");
  detect->require_subcommand(1);
  std::string dataset_dir, reference_csv, holdout_dir, evaluation_csv, threshold_csv, score_condition;
  std::optional<double> threshold, sensitivity;
  auto *eval = detect->add_subcommand("eval", "Evaluation signal and decisions for a dataset");
  eval->add_option("--dataset", dataset_dir, "Dataset directory")->required();
  eval->add_option("--reference", reference_csv, "Reference trace CSV")->required();
  eval->add_option("--threshold", threshold, "Detector threshold");
  eval->add_option("--holdout", holdout_dir, "Normal dataset directory that fixes the threshold");
  eval->add_option("--sensitivity", sensitivity, "Relative acceptance band");
  eval->callback([&] {
    action = [&] { return cmd_detect_eval(g, dataset_dir, reference_csv, threshold, holdout_dir, sensitivity); };
  });
  auto *score_cmd = detect->add_subcommand("score", "Confusion counts per sensitivity level");
  score_cmd->add_option("--evaluation", evaluation_csv, "evaluation.csv from detect eval")->required();
  score_cmd->add_option("--threshold", threshold, "Detector threshold");
  score_cmd->add_option("--threshold-file", threshold_csv, "threshold.csv from detect eval");
  score_cmd->add_option("--condition", score_condition, "Ground-truth condition of the dataset");
  score_cmd->callback([&] {
    action = [&] { return cmd_detect_score(g, evaluation_csv, threshold, threshold_csv, score_condition); };
  });

  // katan
  auto *katan_cmd = app.add_subcommand("katan", "KATAN-32 block cipher");
  katan_cmd->require_subcommand(1);
  std::string key_hex, block_hex;
  bool with_trojan = false;
  auto *enc = katan_cmd->add_subcommand("enc", "Encrypt one block");
  enc->add_option("--key", key_hex, "80-bit key, 20 hex digits")->required();
  enc->add_option("--pt", block_hex, "32-bit plaintext, 8 hex digits")->required();
  enc->add_flag("--trojan", with_trojan, "Use the Trojan-infected core");
  enc->callback([&] { action = [&] { return cmd_katan(false, key_hex, block_hex, with_trojan, g); }; });
  auto *dec = katan_cmd->add_subcommand("dec", "Decrypt one block");
  dec->add_option("--key", key_hex, "80-bit key, 20 hex digits")->required();
  dec->add_option("--ct", block_hex, "32-bit ciphertext, 8 hex digits")->required();
  dec->callback([&] { action = [&] { return cmd_katan(true, key_hex, block_hex, false, g); }; });

  auto *exp1 = app.add_subcommand("exp1", "CRC decoder identification experiment");
  exp1->callback([&] { action = [&] { return cmd_experiment(g, 1); }; });
  auto *exp2 = app.add_subcommand("exp2", "KATAN-32 identification experiment");
  exp2->callback([&] { action = [&] { return cmd_experiment(g, 2); }; });

  std::vector<std::string> report_paths;
  auto *report = app.add_subcommand("report", "Summarize CSV outputs");
  report->add_option("paths", report_paths, "CSV files or directories")->required();
  report->callback([&] { action = [&] { return cmd_report(report_paths); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    exit_code = action ? action() : kExitUsage;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return exit_code;
}
