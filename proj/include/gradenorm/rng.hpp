#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace gradenorm {

/// Deterministic per-trial random stream.  Keyed by (seed, stream) so trials
/// are independent of evaluation order and thread count; Box-Muller is
/// hand-rolled so values do not depend on standard-library distribution
/// internals.
class TrialRng {
 public:
  TrialRng(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream),
                      static_cast<std::uint32_t>(stream >> 32), 0x9E3779B9u};
    eng_.seed(seq);
  }

  /// Uniform in [0, 1).
  double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [lo, hi], inclusive.
  int uniform_int(int lo, int hi) {
    const int span = hi - lo + 1;
    int v = lo + static_cast<int>(uniform01() * span);
    return v > hi ? hi : v;
  }

  double normal() {
    const double u1 = 1.0 - uniform01();  // (0, 1]
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace gradenorm
