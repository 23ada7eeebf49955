// Copyright mtjbist contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "mtjbist/config.hpp"

#include <fstream>
#include <functional>
#include <map>

#include "mtjbist/csv.hpp"
#include "mtjbist/error.hpp"
#include "mtjbist/mtj_array_io.hpp"

namespace mtjbist {

KeyValues parse_key_values(std::istream &in, std::string_view source) {
  KeyValues kv;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError(std::string(source) + ":" + std::to_string(lineno) + ": expected key = value");
    const std::string_view key = trim(t.substr(0, eq));
    if (key.empty()) throw ConfigError(std::string(source) + ":" + std::to_string(lineno) + ": empty key");
    kv.emplace_back(std::string(key), std::string(trim(t.substr(eq + 1))));
  }
  return kv;
}

KeyValues read_key_values(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  return parse_key_values(in, path.string());
}

void write_key_values(const std::filesystem::path &path, const KeyValues &kv) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  for (const auto &[k, v] : kv) out << k << '=' << v << '\n';
}

std::vector<double> parse_double_list(std::string_view s) {
  std::vector<double> out;
  for (const auto &f : split(s, ','))
    if (!f.empty()) out.push_back(parse_double(f));
  return out;
}

std::vector<std::size_t> parse_index_list(std::string_view s) {
  std::vector<std::size_t> out;
  for (const auto &f : split(s, ',')) {
    if (f.empty()) continue;
    if (const auto dots = f.find(".."); dots != std::string::npos) {
      const std::uint64_t lo = parse_u64(std::string_view(f).substr(0, dots));
      const std::uint64_t hi = parse_u64(std::string_view(f).substr(dots + 2));
      if (hi < lo) throw ConfigError("bad index range '" + f + "'");
      for (std::uint64_t i = lo; i <= hi; ++i) out.push_back(i);
    } else {
      out.push_back(parse_u64(f));
    }
  }
  return out;
}

namespace {

bool parse_bool(std::string_view s) {
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  throw ConfigError("not a boolean: '" + std::string(s) + "'");
}

std::vector<unsigned> to_unsigned(const std::vector<std::size_t> &v) { return {v.begin(), v.end()}; }

}  // namespace

void ExperimentConfig::set(std::string_view key, std::string_view value) {
  using Setter = std::function<void(ExperimentConfig &, std::string_view)>;
  static const std::map<std::string, Setter, std::less<>> setters = {
      {"seed", [](auto &c, auto v) { c.seed = parse_u64(v); }},
      {"out", [](auto &c, auto v) { c.output_dir = std::string(v); }},
      {"half_period_ns", [](auto &c, auto v) { c.clock.half_period = parse_double(v); }},
      {"launch_offset_cycles", [](auto &c, auto v) { c.clock.launch_offset_cycles = parse_double(v); }},
      {"sample_edge", [](auto &c, auto v) { c.clock.sample_edge = static_cast<unsigned>(parse_u64(v)); }},
      {"crc.poly", [](auto &c, auto v) { c.crc_poly_hex = std::string(v); }},
      {"crc.width", [](auto &c, auto v) { c.crc_width = static_cast<unsigned>(parse_u64(v)); }},
      {"crc.data_width", [](auto &c, auto v) { c.crc_data_width = parse_u64(v); }},
      {"crc.receiver_init", [](auto &c, auto v) { c.crc_receiver_init = parse_u64(v); }},
      {"mtj.tolerance", [](auto &c, auto v) { c.mtj.tm_tolerance = parse_double(v); }},
      {"mtj.tm_nominal", [](auto &c, auto v) { c.mtj.tm_nominal = parse_double(v); }},
      {"mtj.tm_min", [](auto &c, auto v) { c.mtj.tm_min = parse_double(v); }},
      {"mtj.tm_max", [](auto &c, auto v) { c.mtj.tm_max = parse_double(v); }},
      {"mtj.delay01_min_ns", [](auto &c, auto v) { c.mtj.delay01_min = parse_double(v); }},
      {"mtj.delay01_max_ns", [](auto &c, auto v) { c.mtj.delay01_max = parse_double(v); }},
      {"mtj.delay10_min_ns", [](auto &c, auto v) { c.mtj.delay10_min = parse_double(v); }},
      {"mtj.delay10_max_ns", [](auto &c, auto v) { c.mtj.delay10_max = parse_double(v); }},
      {"mtj.array", [](auto &c, auto v) { c.mtj_array_path = std::string(v); }},
      {"mtj.initial_state", [](auto &c, auto v) { c.mtj_initial_state = std::string(v); }},
      {"attack.targets", [](auto &c, auto v) { c.attack.target_indices = parse_index_list(v); }},
      {"attack.multipliers", [](auto &c, auto v) { c.attack.thickness_multipliers = parse_double_list(v); }},
      {"attack.seed", [](auto &c, auto v) { c.attack.rng_seed = parse_u64(v); }},
      {"attack.random_targets", [](auto &c, auto v) { c.attack_random_targets = parse_u64(v); }},
      {"attack.multiplier_lo", [](auto &c, auto v) { c.attack_multiplier_lo = parse_double(v); }},
      {"attack.multiplier_hi", [](auto &c, auto v) { c.attack_multiplier_hi = parse_double(v); }},
      {"bist.sweep_half_periods_ns", [](auto &c, auto v) { c.sweep_half_periods = parse_double_list(v); }},
      {"trace.dt_ns", [](auto &c, auto v) { c.trace.dt_ns = parse_double(v); }},
      {"trace.length", [](auto &c, auto v) { c.trace.length = parse_u64(v); }},
      {"trace.i_unit_uA", [](auto &c, auto v) { c.trace.i_unit_uA = parse_double(v); }},
      {"trace.baseline_uA", [](auto &c, auto v) { c.trace.baseline_uA = parse_double(v); }},
      {"trace.noise_sigma_uA", [](auto &c, auto v) { c.trace.noise_sigma_uA = parse_double(v); }},
      {"trace.spike_gain", [](auto &c, auto v) { c.trace.spike_gain = parse_double(v); }},
      {"trace.k_pv", [](auto &c, auto v) { c.trace.k_pv = parse_double(v); }},
      {"trace.k_temp", [](auto &c, auto v) { c.trace.k_temp = parse_double(v); }},
      {"trace.n_patterns", [](auto &c, auto v) { c.n_patterns = parse_u64(v); }},
      {"trace.trojan_triggered_only", [](auto &c, auto v) { c.trojan_triggered_only = parse_bool(v); }},
      {"detector.sensitivities", [](auto &c, auto v) { c.sensitivities = parse_double_list(v); }},
      {"detector.default_sensitivity", [](auto &c, auto v) { c.default_sensitivity = parse_double(v); }},
      {"detector.normalized",
       [](auto &c, auto v) { c.detector_mode = parse_bool(v) ? DetectorMode::EnergyNormalized : DetectorMode::Raw; }},
      {"trojan.target", [](auto &c, auto v) { c.trojan.target = parse_trojan_target(v); }},
      {"trojan.key_bits", [](auto &c, auto v) { c.trojan.trigger_key_bits = to_unsigned(parse_index_list(v)); }},
      {"trojan.pt_bits", [](auto &c, auto v) { c.trojan.trigger_pt_bits = to_unsigned(parse_index_list(v)); }},
      {"trojan.payload", [](auto &c, auto v) { c.trojan.payload = parse_trojan_payload(v); }},
      {"trojan.malfunction", [](auto &c, auto v) { c.crc_malfunction = parse_malfunction(v); }},
      {"trojan.logic_toggles",
       [](auto &c, auto v) { c.trace.trigger_logic_toggles = static_cast<unsigned>(parse_u64(v)); }},
  };
  const auto it = setters.find(key);
  if (it == setters.end()) throw ConfigError("unknown config key '" + std::string(key) + "'");
  try {
    it->second(*this, value);
  } catch (const ConfigError &e) {
    throw ConfigError(std::string(key) + ": " + e.what());
  }
}

void ExperimentConfig::apply(const KeyValues &kv) {
  for (const auto &[k, v] : kv) set(k, v);
}

CrcConfig ExperimentConfig::crc() const {
  CrcConfig c = CrcConfig::from_hex(crc_poly_hex, crc_width, crc_data_width);
  if (crc_receiver_init) c.receiver_init = *crc_receiver_init;
  c.validate();
  return c;
}

void ExperimentConfig::validate() const {
  clock.validate();
  const CrcConfig c = crc();
  mtj.validate();
  trace.validate();
  if (n_patterns < 1) throw ConfigError("trace.n_patterns must be >= 1");
  if (sensitivities.empty()) throw ConfigError("detector.sensitivities must be non-empty");
  for (double s : sensitivities)
    if (!(s > 0.0)) throw ConfigError("detector sensitivities must be positive");
  if (!(default_sensitivity > 0.0)) throw ConfigError("detector.default_sensitivity must be positive");
  if (sweep_half_periods.empty()) throw ConfigError("bist.sweep_half_periods_ns must be non-empty");
  if (mtj_initial_state) bits_from_hex(*mtj_initial_state, c.message_width());
  katan_trojan().validate();
}

TrojanSpec ExperimentConfig::katan_trojan() const {
  TrojanSpec s = trojan;
  s.target = TrojanTarget::Katan32;
  s.payload = TrojanPayload::FlipFirstAndLastCipherBits;
  return s;
}

AttackSpec ExperimentConfig::effective_attack(std::size_t array_size) const {
  if (attack_random_targets > 0)
    return random_attack(array_size, attack_random_targets, attack_multiplier_lo, attack_multiplier_hi,
                         attack.rng_seed != 0 ? attack.rng_seed : seed);
  return attack;
}

std::vector<MtjCell> ExperimentConfig::base_array() const {
  const CrcConfig c = crc();
  std::vector<MtjCell> cells =
      mtj_array_path ? load_mtj_array(*mtj_array_path, mtj.tm_nominal) : nominal_array(c.message_width(), mtj.tm_nominal);
  if (mtj_initial_state) {
    const BitVec state = bits_from_hex(*mtj_initial_state, cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i) cells[i] = cells[i].with_state(to_level(state[i]));
  }
  return cells;
}

std::vector<MtjCell> ExperimentConfig::build_array() const {
  std::vector<MtjCell> cells = base_array();
  const AttackSpec spec = effective_attack(cells.size());
  return inject_attack(std::move(cells), spec);
}

ExperimentConfig load_config(const std::filesystem::path &path) {
  ExperimentConfig cfg;
  cfg.apply(read_key_values(path));
  return cfg;
}

}  // namespace mtjbist
