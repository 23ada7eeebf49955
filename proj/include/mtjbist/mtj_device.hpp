// Copyright mtjbist contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#ifndef MTJBIST_MTJ_DEVICE_HPP
#define MTJBIST_MTJ_DEVICE_HPP

#include <cstdint>
#include <optional>

#include "mtjbist/bits.hpp"

namespace mtjbist {

/// Logical state of a PMA-MTJ. Zero is the parallel (low-resistance) state,
/// One the anti-parallel (high-resistance) state.
enum class LogicLevel : std::uint8_t { Zero = 0, One = 1 };

constexpr LogicLevel to_level(Bit b) { return b ? LogicLevel::One : LogicLevel::Zero; }
constexpr Bit to_bit(LogicLevel l) { return l == LogicLevel::One ? 1 : 0; }
constexpr LogicLevel operator!(LogicLevel l) { return l == LogicLevel::One ? LogicLevel::Zero : LogicLevel::One; }

enum class Resistance : std::uint8_t { Low, High };
constexpr Resistance resistance_of(LogicLevel l) { return l == LogicLevel::One ? Resistance::High : Resistance::Low; }

/// Thickness-to-delay calibration of the free layer.
///
/// Thickness is in nominal units (nominal cell = 1.0). Delay windows are
/// measured from write start: a 0->1 write that starts at 7.5 ns completes
/// somewhere in [7.5, 9.76] ns, a 1->0 write in [7.5, 8.85] ns.
struct MtjDelayModel {
  double tm_nominal = 1.0;
  double tm_min = 0.8;
  double tm_max = 1.3;
  double delay01_min = 0.0;
  double delay01_max = 2.26;
  double delay10_min = 0.0;
  double delay10_max = 1.35;
  /// Acceptable |tm_actual - tm_nominal| / tm_nominal.
  double tm_tolerance = 0.10;

  /// Throws ConfigError when bounds are inverted or non-positive.
  void validate() const;
};

/// Completion delay (ns) of a from->to write for free-layer thickness `tm`.
/// Affine in tm over [tm_min, tm_max]; tm outside that range is clamped.
/// Identity transitions take zero time.
double switching_delay(const MtjDelayModel &model, double tm, LogicLevel from, LogicLevel to);

struct PendingTransition {
  LogicLevel target;
  double started_at;
  double completes_at;
};

class MtjCell {
 public:
  MtjCell() = default;
  /// Throws ConfigError unless both thicknesses are positive.
  MtjCell(double tm_nominal, double tm_actual, LogicLevel state = LogicLevel::Zero);

  double tm_nominal() const { return tm_nominal_; }
  double tm_actual() const { return tm_actual_; }
  LogicLevel state() const { return state_; }
  const std::optional<PendingTransition> &pending() const { return pending_; }

  MtjCell with_thickness(double tm_actual) const;
  MtjCell with_state(LogicLevel state) const;

 private:
  friend MtjCell apply_bit(MtjCell cell, LogicLevel bit, double t_write, const MtjDelayModel &model);
  friend LogicLevel sense(MtjCell &cell, double t_sample);

  double tm_nominal_ = 1.0;
  double tm_actual_ = 1.0;
  LogicLevel state_ = LogicLevel::Zero;
  std::optional<PendingTransition> pending_;
};

/// Starts writing `bit` at `t_write`. Writing the current state is a no-op.
/// Throws SchedulingError if a transition is still pending.
MtjCell apply_bit(MtjCell cell, LogicLevel bit, double t_write, const MtjDelayModel &model);

/// Reads the cell at `t_sample`. A transition that has completed by then is
/// committed; one still in flight reads as the old state (transition-delay
/// fault) and stays pending.
LogicLevel sense(MtjCell &cell, double t_sample);

/// True when the thickness deviation is strictly beyond the tolerance.
bool is_malicious(const MtjCell &cell, const MtjDelayModel &model);

}  // namespace mtjbist

#endif  // MTJBIST_MTJ_DEVICE_HPP
