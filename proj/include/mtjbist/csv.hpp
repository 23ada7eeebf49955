// Copyright mtjbist contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#ifndef MTJBIST_CSV_HPP
#define MTJBIST_CSV_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace mtjbist {

/// Shortest decimal text that parses back to the same double.
std::string format_double(double v);
double parse_double(std::string_view text);
std::uint64_t parse_u64(std::string_view text);

std::string_view trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);

/// A comma-separated table with a mandatory header row. Fields never contain
/// commas or quotes, so no quoting is performed.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Index of a header column; throws ConfigError if absent.
  std::size_t column(std::string_view name) const;
};

CsvTable read_csv(const std::filesystem::path &path);
void write_csv(const std::filesystem::path &path, const CsvTable &table);
std::string to_csv_string(const CsvTable &table);

}  // namespace mtjbist

#endif  // MTJBIST_CSV_HPP
