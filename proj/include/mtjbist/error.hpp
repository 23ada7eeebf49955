// Copyright mtjbist contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#ifndef MTJBIST_ERROR_HPP
#define MTJBIST_ERROR_HPP

#include <stdexcept>
#include <string>

namespace mtjbist {

/// Invalid user-facing configuration: widths, ranges, malformed files.
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string &what) : std::invalid_argument(what) {}
};

/// A write was issued to an MTJ cell whose previous transition is still in
/// flight. Indicates a bug in whoever schedules writes, not bad input.
class SchedulingError : public std::logic_error {
 public:
  explicit SchedulingError(const std::string &what) : std::logic_error(what) {}
};

}  // namespace mtjbist

#endif  // MTJBIST_ERROR_HPP
