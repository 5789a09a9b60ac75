#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace scsim {

/// Seeded 64-bit generator with platform-independent derived draws.
///
/// std::uniform_real_distribution and friends are implementation-defined, so
/// every draw the simulator consumes goes through the helpers below. Each
/// helper consumes exactly one engine output.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1) with 53 bits of resolution.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Exponential with the given rate; the mean is 1/rate.
  double exponential(double rate) { return -std::log1p(-uniform()) / rate; }

  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace scsim
