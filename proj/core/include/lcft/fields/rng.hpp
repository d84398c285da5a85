#pragma once

#include <cstdint>
#include <limits>
#include <random>

#include "lcft/core/params.hpp"

namespace lcft::fields {

/// Counter-based stream: SplitMix64 over a 64-bit state derived from
/// (seed, geometry, resolution, sample index). Streams for different indices
/// are independent of the order in which they are drawn.
class SampleRng {
 public:
  using result_type = std::uint64_t;

  SampleRng(std::uint64_t seed, GeometryKind kind, int resolution, std::uint64_t index);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()();

  double normal() { return normal_(*this); }
  double uniform() { return uniform_(*this); }

 private:
  std::uint64_t state_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

}  // namespace lcft::fields
