#pragma once

// Seeded random streams. Distribution transforms are written out here
// rather than taken from <random> so that draws are identical across
// standard library implementations.

#include <cstdint>
#include <random>

namespace tlsw {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal by the Marsaglia polar method.
  double normal();

  /// Exp(1) by inversion.
  double exponential();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// splitmix64 finaliser applied to seed + (index + 1) * golden gamma. Used to
/// give every Monte-Carlo realisation its own stream.
std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace tlsw
