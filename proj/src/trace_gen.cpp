// Copyright mtjbist contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "mtjbist/trace_gen.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <set>

#include "mtjbist/config.hpp"
#include "mtjbist/csv.hpp"
#include "mtjbist/error.hpp"
#include "mtjbist/rng.hpp"

namespace mtjbist {

namespace {

constexpr std::uint64_t kStreamPatterns = 0x70617474;  // "patt"
constexpr std::uint64_t kStreamTraces = 0x74726163;    // "trac"
constexpr std::uint64_t kStreamCandidates = 0x63616e64;

std::uint64_t total_activity(const Circuit &circuit, BitSpan pattern) {
  const auto profile = toggle_profile(circuit, pattern);
  return std::accumulate(profile.begin(), profile.end(), std::uint64_t{0});
}

std::string trace_file_name(std::size_t i) {
  std::string digits = std::to_string(i);
  if (digits.size() < 3) digits.insert(0, 3 - digits.size(), '0');
  return "trace_" + digits + ".csv";
}

}  // namespace

std::string_view to_string(ConditionKind k) {
  switch (k) {
    case ConditionKind::Normal: return "normal";
    case ConditionKind::ProcessVariation: return "process_variation";
    case ConditionKind::Temperature: return "temperature";
    case ConditionKind::Trojan: return "trojan";
  }
  return "normal";
}

ConditionKind parse_condition_kind(std::string_view s) {
  if (s == "normal") return ConditionKind::Normal;
  if (s == "process_variation" || s == "pv") return ConditionKind::ProcessVariation;
  if (s == "temperature" || s == "temp") return ConditionKind::Temperature;
  if (s == "trojan") return ConditionKind::Trojan;
  throw ConfigError("unknown condition '" + std::string(s) + "'");
}

Condition Condition::process_variation(double length_fraction) {
  Condition c{ConditionKind::ProcessVariation, length_fraction, std::nullopt};
  c.validate();
  return c;
}

Condition Condition::temperature(double celsius) {
  Condition c{ConditionKind::Temperature, std::nullopt, celsius};
  c.validate();
  return c;
}

Condition Condition::trojan() { return Condition{ConditionKind::Trojan, std::nullopt, std::nullopt}; }

void Condition::validate() const {
  const bool needs_pv = kind == ConditionKind::ProcessVariation;
  const bool needs_temp = kind == ConditionKind::Temperature;
  if (needs_pv != pv_length_fraction.has_value())
    throw ConfigError("condition: length fraction is required for, and only for, process variation");
  if (needs_temp != temperature_c.has_value())
    throw ConfigError("condition: temperature is required for, and only for, the temperature condition");
  if (needs_pv && !(std::abs(*pv_length_fraction) <= kPvFractionLimit))
    throw ConfigError("condition: length fraction outside [-0.2, 0.2]");
  if (needs_temp && !(*temperature_c >= kTemperatureMinC && *temperature_c <= kTemperatureMaxC))
    throw ConfigError("condition: temperature outside [20, 120] C");
}

void TraceParams::validate() const {
  if (!(dt_ns > 0.0)) throw ConfigError("trace: dt must be positive");
  if (length < 100) throw ConfigError("trace: length must be at least 100 samples");
  if (!(i_unit_uA > 0.0)) throw ConfigError("trace: unit current must be positive");
  if (!(noise_sigma_uA >= 0.0)) throw ConfigError("trace: noise sigma must be non-negative");
  if (!(spike_gain >= 0.0)) throw ConfigError("trace: spike gain must be non-negative");
  if (!std::isfinite(baseline_uA) || !std::isfinite(k_pv) || !std::isfinite(k_temp))
    throw ConfigError("trace: coefficients must be finite");
}

double condition_scale(const Condition &condition, const TraceParams &params) {
  switch (condition.kind) {
    case ConditionKind::ProcessVariation: return 1.0 + params.k_pv * condition.pv_length_fraction.value();
    case ConditionKind::Temperature: return 1.0 + params.k_temp * (condition.temperature_c.value() - kTemperatureMinC);
    case ConditionKind::Normal:
    case ConditionKind::Trojan: return 1.0;
  }
  return 1.0;
}

std::vector<std::uint32_t> toggle_profile(const Circuit &circuit, BitSpan pattern) {
  return circuit.simulate(pattern, false).toggles;
}

CurrentTrace simulate_trace(const Circuit &circuit, BitSpan pattern, const Condition &condition,
                            const TraceParams &params, std::uint64_t seed) {
  condition.validate();
  params.validate();
  const bool trojan = condition.kind == ConditionKind::Trojan;
  const ActivityProfile activity = circuit.simulate(pattern, trojan);
  const std::size_t steps = activity.toggles.size();
  const std::size_t per_step = params.length / steps;
  if (per_step == 0) throw ConfigError("trace: length shorter than the circuit's step count");

  const double scale = condition_scale(condition, params);
  const double logic = trojan ? params.trigger_logic_toggles.value_or(circuit.trigger_logic_toggles()) : 0.0;

  CurrentTrace out;
  out.dt = params.dt_ns;
  out.pattern_id = bits_to_hex(pattern);
  out.condition = condition;
  out.samples.assign(params.length, params.baseline_uA);
  for (std::size_t s = 0; s < steps; ++s) {
    const double dynamic = params.i_unit_uA * scale * (activity.toggles[s] + logic);
    for (std::size_t j = 0; j < per_step; ++j) out.samples[s * per_step + j] += dynamic;
  }
  for (std::size_t s : activity.payload_steps) out.samples[s * per_step] += params.spike_gain * params.i_unit_uA;
  if (params.noise_sigma_uA > 0.0) {
    Rng rng(seed);
    for (double &v : out.samples) v += params.noise_sigma_uA * rng.normal();
  }
  return out;
}

Dataset build_dataset(const Circuit &circuit, ConditionKind kind, std::uint64_t seed, const TraceParams &params,
                      const DatasetOptions &options) {
  if (options.n_patterns < 1) throw ConfigError("dataset: n_patterns must be >= 1");
  const std::size_t width = circuit.input_width();
  const bool triggered_only = kind == ConditionKind::Trojan && options.trojan_triggered_only;
  const std::set<BitVec> excluded(options.exclude.begin(), options.exclude.end());
  auto eligible = [&](const BitVec &p) {
    return !excluded.count(p) && (!triggered_only || circuit.trojan_triggers(p));
  };

  Rng rng(derive_seed(seed, kStreamPatterns));
  std::vector<BitVec> patterns;
  if (width <= 16) {
    std::vector<BitVec> pool;
    for (std::uint64_t v = 0; v < (1ull << width); ++v) {
      BitVec p = bits_from_uint(v, width);
      if (eligible(p)) pool.push_back(std::move(p));
    }
    if (pool.empty()) throw ConfigError("dataset: no eligible input patterns");
    for (std::size_t i = 0; i < options.n_patterns; ++i) {
      if (i < pool.size()) {
        std::swap(pool[i], pool[i + rng.below(pool.size() - i)]);
        patterns.push_back(pool[i]);
      } else {
        patterns.push_back(pool[rng.below(pool.size())]);  // space exhausted
      }
    }
  } else {
    std::set<BitVec> seen;
    std::size_t attempts = 0;
    const std::size_t max_attempts = 10000 * options.n_patterns;
    while (patterns.size() < options.n_patterns) {
      if (++attempts > max_attempts) throw ConfigError("dataset: could not draw enough eligible patterns");
      BitVec p = rng.bits(width);
      if (!eligible(p) || !seen.insert(p).second) continue;
      patterns.push_back(std::move(p));
    }
  }

  Dataset ds;
  ds.circuit = std::string(circuit.name());
  ds.kind = kind;
  ds.seed = seed;
  ds.traces.reserve(patterns.size());
  for (std::size_t i = 0; i < patterns.size(); ++i) {
    const std::uint64_t trace_seed = derive_seed(seed, kStreamTraces, i);
    Rng cond_rng(derive_seed(trace_seed, static_cast<std::uint64_t>(kind) + 1));
    Condition cond;
    switch (kind) {
      case ConditionKind::Normal: cond = Condition::normal(); break;
      case ConditionKind::ProcessVariation:
        cond = Condition::process_variation(cond_rng.uniform(-kPvFractionLimit, kPvFractionLimit));
        break;
      case ConditionKind::Temperature:
        cond = Condition::temperature(cond_rng.uniform(kTemperatureMinC, kTemperatureMaxC));
        break;
      case ConditionKind::Trojan: cond = Condition::trojan(); break;
    }
    ds.traces.push_back(simulate_trace(circuit, patterns[i], cond, params, trace_seed));
  }
  return ds;
}

BitVec select_reference_pattern(const Circuit &circuit, std::uint64_t seed) {
  const std::size_t width = circuit.input_width();
  BitVec best;
  std::uint64_t best_activity = 0;
  auto consider = [&](BitVec p) {
    const std::uint64_t a = total_activity(circuit, p);
    if (best.empty() || a > best_activity) {
      best_activity = a;
      best = std::move(p);
    }
  };
  if (width <= 16) {
    for (std::uint64_t v = 0; v < (1ull << width); ++v) consider(bits_from_uint(v, width));
  } else {
    Rng rng(derive_seed(seed, kStreamCandidates));
    for (int i = 0; i < 256; ++i) consider(rng.bits(width));
  }
  return best;
}

void save_trace_csv(const std::filesystem::path &path, const CurrentTrace &trace) {
  CsvTable t;
  t.header = {"time_ns", "current_uA"};
  t.rows.reserve(trace.samples.size());
  for (std::size_t i = 0; i < trace.samples.size(); ++i)
    t.rows.push_back({format_double(static_cast<double>(i) * trace.dt), format_double(trace.samples[i])});
  write_csv(path, t);
}

CurrentTrace load_trace_csv(const std::filesystem::path &path) {
  const CsvTable t = read_csv(path);
  const std::size_t tcol = t.column("time_ns");
  const std::size_t icol = t.column("current_uA");
  if (t.rows.size() < 2) throw ConfigError(path.string() + ": trace needs at least two samples");
  CurrentTrace trace;
  trace.dt = parse_double(t.rows[1][tcol]) - parse_double(t.rows[0][tcol]);
  if (!(trace.dt > 0.0)) throw ConfigError(path.string() + ": time column must increase");
  trace.samples.reserve(t.rows.size());
  for (const auto &r : t.rows) {
    const double v = parse_double(r[icol]);
    if (!std::isfinite(v)) throw ConfigError(path.string() + ": non-finite sample");
    trace.samples.push_back(v);
  }
  trace.pattern_id = path.stem().string();
  return trace;
}

void save_dataset(const std::filesystem::path &dir, const Dataset &dataset) {
  std::filesystem::create_directories(dir);
  std::vector<std::pair<std::string, std::string>> kv = {
      {"circuit", dataset.circuit},
      {"condition", std::string(to_string(dataset.kind))},
      {"seed", std::to_string(dataset.seed)},
      {"n", std::to_string(dataset.traces.size())},
  };
  for (std::size_t i = 0; i < dataset.traces.size(); ++i) {
    const auto &tr = dataset.traces[i];
    const std::string prefix = "trace." + std::to_string(i) + ".";
    kv.emplace_back(prefix + "file", trace_file_name(i));
    kv.emplace_back(prefix + "pattern", tr.pattern_id);
    if (tr.condition.pv_length_fraction)
      kv.emplace_back(prefix + "pv_length_fraction", format_double(*tr.condition.pv_length_fraction));
    if (tr.condition.temperature_c) kv.emplace_back(prefix + "temperature_c", format_double(*tr.condition.temperature_c));
    save_trace_csv(dir / trace_file_name(i), tr);
  }
  write_key_values(dir / "manifest", kv);
}

Dataset load_dataset(const std::filesystem::path &dir) {
  std::map<std::string, std::string> kv;
  for (auto &[k, v] : read_key_values(dir / "manifest")) kv[k] = v;
  auto get = [&](const std::string &k) -> const std::string & {
    auto it = kv.find(k);
    if (it == kv.end()) throw ConfigError((dir / "manifest").string() + ": missing key " + k);
    return it->second;
  };
  Dataset ds;
  ds.circuit = kv.count("circuit") ? kv["circuit"] : "";
  ds.kind = parse_condition_kind(get("condition"));
  ds.seed = parse_u64(get("seed"));
  const std::size_t n = parse_u64(get("n"));
  for (std::size_t i = 0; i < n; ++i) {
    const std::string prefix = "trace." + std::to_string(i) + ".";
    CurrentTrace tr = load_trace_csv(dir / get(prefix + "file"));
    tr.pattern_id = get(prefix + "pattern");
    tr.condition.kind = ds.kind;
    if (auto it = kv.find(prefix + "pv_length_fraction"); it != kv.end()) tr.condition.pv_length_fraction = parse_double(it->second);
    if (auto it = kv.find(prefix + "temperature_c"); it != kv.end()) tr.condition.temperature_c = parse_double(it->second);
    tr.condition.validate();
    if (!ds.traces.empty() && (tr.samples.size() != ds.traces.front().samples.size()))
      throw ConfigError(dir.string() + ": traces differ in length");
    ds.traces.push_back(std::move(tr));
  }
  return ds;
}

}  // namespace mtjbist
