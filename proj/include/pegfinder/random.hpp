#pragma once

#include <cstdint>
#include <random>

namespace pegfinder {

/// Seeded generator whose output depends only on the seed: mt19937_64 is
/// fully specified, and doubles are built from its raw bits rather than
/// through the implementation-defined std distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Standard normal via Box-Muller.
  double normal();

 private:
  std::mt19937_64 engine_;
};

}  // namespace pegfinder
