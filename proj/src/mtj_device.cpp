// Copyright mtjbist contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "mtjbist/mtj_device.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mtjbist/error.hpp"

namespace mtjbist {

void MtjDelayModel::validate() const {
  if (!(tm_nominal > 0.0)) throw ConfigError("mtj: tm_nominal must be positive");
  if (!(tm_min > 0.0) || !(tm_min < tm_max)) throw ConfigError("mtj: need 0 < tm_min < tm_max");
  if (!(delay01_min >= 0.0) || !(delay01_min <= delay01_max)) throw ConfigError("mtj: need 0 <= delay01_min <= delay01_max");
  if (!(delay10_min >= 0.0) || !(delay10_min <= delay10_max)) throw ConfigError("mtj: need 0 <= delay10_min <= delay10_max");
  if (!(tm_tolerance >= 0.0)) throw ConfigError("mtj: tolerance must be non-negative");
}

double switching_delay(const MtjDelayModel &model, double tm, LogicLevel from, LogicLevel to) {
  if (from == to) return 0.0;
  const double lo = from == LogicLevel::Zero ? model.delay01_min : model.delay10_min;
  const double hi = from == LogicLevel::Zero ? model.delay01_max : model.delay10_max;
  const double clamped = std::clamp(tm, model.tm_min, model.tm_max);
  const double frac = (clamped - model.tm_min) / (model.tm_max - model.tm_min);
  return lo + frac * (hi - lo);
}

MtjCell::MtjCell(double tm_nominal, double tm_actual, LogicLevel state)
    : tm_nominal_(tm_nominal), tm_actual_(tm_actual), state_(state) {
  if (!(tm_nominal > 0.0) || !(tm_actual > 0.0) || !std::isfinite(tm_actual))
    throw ConfigError("mtj cell thickness must be positive and finite");
}

MtjCell MtjCell::with_thickness(double tm_actual) const {
  MtjCell c(tm_nominal_, tm_actual, state_);
  c.pending_ = pending_;
  return c;
}

MtjCell MtjCell::with_state(LogicLevel state) const {
  MtjCell c = *this;
  c.state_ = state;
  c.pending_.reset();
  return c;
}

MtjCell apply_bit(MtjCell cell, LogicLevel bit, double t_write, const MtjDelayModel &model) {
  if (cell.pending_)
    throw SchedulingError("write at t=" + std::to_string(t_write) + " ns while a transition is pending");
  if (bit == cell.state_) return cell;
  const double delay = switching_delay(model, cell.tm_actual_, cell.state_, bit);
  cell.pending_ = PendingTransition{bit, t_write, t_write + delay};
  return cell;
}

LogicLevel sense(MtjCell &cell, double t_sample) {
  if (cell.pending_ && cell.pending_->completes_at <= t_sample) {
    cell.state_ = cell.pending_->target;
    cell.pending_.reset();
  }
  return cell.state_;
}

bool is_malicious(const MtjCell &cell, const MtjDelayModel &model) {
  // Slack absorbs decimal round-off so that a cell written as exactly
  // (1 + tolerance) x nominal sits on the accepted side of the boundary.
  constexpr double kSlack = 1e-12;
  const double deviation = std::abs(cell.tm_actual() - cell.tm_nominal()) / cell.tm_nominal();
  return deviation > model.tm_tolerance + kSlack;
}

}  // namespace mtjbist
