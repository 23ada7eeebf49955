// Copyright mtjbist contributors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#ifndef MTJBIST_RNG_HPP
#define MTJBIST_RNG_HPP

#include <cstdint>
#include <random>

#include "mtjbist/bits.hpp"

namespace mtjbist {

/// Seeded generator whose output is identical across standard libraries.
///
/// The engine sequence of std::mt19937_64 is fixed by the standard, but the
/// std distributions are not, so the transforms to uniform and normal
/// variates live here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on [0, 1) with 53 bits of resolution.
  double uniform01();
  double uniform(double lo, double hi);
  /// Uniform integer in [0, bound); bound must be > 0.
  std::uint64_t below(std::uint64_t bound);
  /// Standard normal via Box-Muller (one variate per call, the pair's
  /// second half is cached).
  double normal();
  BitVec bits(std::size_t width);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Mixes a base seed with a stream tag and an index into an independent
/// child seed (splitmix64 finalizer).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index = 0);

}  // namespace mtjbist

#endif  // MTJBIST_RNG_HPP
