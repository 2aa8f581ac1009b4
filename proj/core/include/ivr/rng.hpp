#pragma once

#include <cstdint>

namespace ivr {

// Deterministic, platform-independent generator (splitmix64 core).
//
// std::mt19937 plus the standard distributions would not reproduce bit-for-bit
// across library implementations, so every random draw in this project goes
// through this class. Substreams are derived from the constructor seed only:
// split(k) yields the same stream no matter how much the parent has consumed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ull;
    return mix(state_);
  }

  // Uniform on [0, 1) with 53-bit resolution.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // +1.0 or -1.0 with equal probability (top bit of the next word).
  double next_sign() { return (next_u64() >> 63) ? 1.0 : -1.0; }

  // Independent substream k of this generator's seed.
  Rng split(std::uint64_t stream) const {
    return Rng(mix(seed_ + 0x9E3779B97F4A7C15ull * (stream + 1)));
  }

  std::uint64_t seed() const { return seed_; }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::uint64_t seed_;
  std::uint64_t state_;
};

}  // namespace ivr
