// Copyright mtjbist contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "mtjbist/mtj_array_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <string>

#include "mtjbist/csv.hpp"
#include "mtjbist/error.hpp"

namespace mtjbist {

std::vector<MtjCell> read_mtj_array(std::istream &in, double tm_nominal) {
  std::map<std::uint64_t, double> rows;
  std::string line;
  std::size_t lineno = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::replace(line.begin(), line.end(), ',', ' ');
    std::replace(line.begin(), line.end(), '\t', ' ');
    std::vector<std::string> fields;
    for (auto &f : split(line, ' '))
      if (!f.empty()) fields.push_back(f);
    if (fields.empty()) continue;
    const bool was_first = first;
    first = false;
    if (fields.size() != 2) throw ConfigError("mtj array line " + std::to_string(lineno) + ": expected 2 columns");
    std::uint64_t index = 0;
    double tm = 0.0;
    try {
      index = parse_u64(fields[0]);
      tm = parse_double(fields[1]);
    } catch (const ConfigError &) {
      if (was_first) continue;  // header
      throw ConfigError("mtj array line " + std::to_string(lineno) + ": malformed row");
    }
    if (!rows.emplace(index, tm).second)
      throw ConfigError("mtj array: duplicate index " + std::to_string(index));
  }
  std::vector<MtjCell> cells;
  cells.reserve(rows.size());
  std::uint64_t expected = 0;
  for (const auto &[index, tm] : rows) {
    if (index != expected) throw ConfigError("mtj array: missing index " + std::to_string(expected));
    cells.emplace_back(tm_nominal, tm);
    ++expected;
  }
  if (cells.empty()) throw ConfigError("mtj array: no cells");
  return cells;
}

std::vector<MtjCell> load_mtj_array(const std::filesystem::path &path, double tm_nominal) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open mtj array " + path.string());
  return read_mtj_array(in, tm_nominal);
}

void save_mtj_array(const std::filesystem::path &path, const std::vector<MtjCell> &cells) {
  CsvTable t;
  t.header = {"index", "tm_actual"};
  for (std::size_t i = 0; i < cells.size(); ++i) t.rows.push_back({std::to_string(i), format_double(cells[i].tm_actual())});
  write_csv(path, t);
}

std::vector<MtjCell> nominal_array(std::size_t size, double tm_nominal, LogicLevel state) {
  return std::vector<MtjCell>(size, MtjCell(tm_nominal, tm_nominal, state));
}

}  // namespace mtjbist
