#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace acr {

// Seeded stream with a fixed mapping from engine output to draws, so results
// are identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform in [0, n); n must be positive.
  std::size_t index(std::size_t n) {
    __extension__ using u128 = unsigned __int128;
    u128 wide = static_cast<u128>(engine_()) * n;
    return static_cast<std::size_t>(wide >> 64);
  }

  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace acr
