#pragma once

#include <cmath>
#include <cstdint>

namespace crmud {

// Counter-friendly 64-bit generator (splitmix64). Chosen over the std engines
// so that streams are identical on every platform and a fresh, statistically
// independent stream can be derived per trial from (master_seed, trial_index).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform on the open interval (0,1); never returns 0 or 1.
  double uniform_open01() { return (static_cast<double>(next() >> 11) + 0.5) * 0x1p-53; }

  // Inverse-CDF exponential with unit mean.
  double exponential() { return -std::log(uniform_open01()); }

  static std::uint64_t mix(std::uint64_t x) {
    x ^= x >> 33;
    x *= 0xFF51AFD7ED558CCDULL;
    x ^= x >> 33;
    x *= 0xC4CEB9FE1A85EC53ULL;
    x ^= x >> 33;
    return x;
  }

  static SplitMix64 for_trial(std::uint64_t master_seed, std::uint64_t trial_index) {
    return SplitMix64(mix(master_seed + 0x9E3779B97F4A7C15ULL * (trial_index + 1)));
  }

 private:
  std::uint64_t state_;
};

}  // namespace crmud
