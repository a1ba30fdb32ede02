#pragma once

#include <cstdint>
#include <random>

namespace pttc {

/// Deterministic random source. All draws go through explicit bit
/// transforms (never std::uniform_*_distribution, whose output is
/// implementation-defined), so a 64-bit seed reproduces the exact same
/// stream on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform in the open interval (0, 1). 53-bit resolution, offset by
  /// half an ulp so 0 and 1 are unreachable.
  double uniform01() {
    const std::uint64_t bits = gen_() >> 11;
    return (static_cast<double>(bits) + 0.5) * (1.0 / 9007199254740992.0);
  }

  /// Uniform integer in [0, n). Rejection sampling, unbiased.
  std::uint64_t uniform_int(std::uint64_t n);

  std::uint64_t next_raw() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

/// SplitMix64 finalizer. Used to derive independent seed streams
/// (market generation vs. mechanism noise) from one trial seed.
std::uint64_t splitmix64(std::uint64_t x);

}  // namespace pttc
