// Copyright mtjbist contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#ifndef MTJBIST_MTJ_ARRAY_IO_HPP
#define MTJBIST_MTJ_ARRAY_IO_HPP

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "mtjbist/mtj_device.hpp"

namespace mtjbist {

// MTJ array tables: one row per cell, `index, tm_actual` in nominal units.
// Separators may be commas or whitespace; '#' starts a comment and a
// non-numeric first row is treated as a header. Indices must cover 0..n-1
// exactly once, in any order.
std::vector<MtjCell> read_mtj_array(std::istream &in, double tm_nominal = 1.0);
std::vector<MtjCell> load_mtj_array(const std::filesystem::path &path, double tm_nominal = 1.0);
void save_mtj_array(const std::filesystem::path &path, const std::vector<MtjCell> &cells);

std::vector<MtjCell> nominal_array(std::size_t size, double tm_nominal = 1.0, LogicLevel state = LogicLevel::Zero);

}  // namespace mtjbist

#endif  // MTJBIST_MTJ_ARRAY_IO_HPP
