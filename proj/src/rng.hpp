#pragma once

#include <cstdint>

namespace qcss {

// Deterministic splittable generator (splitmix64). The standard library
// engines are portable but its distributions are not, so uniform doubles
// are produced here directly: same seed, same stream, on every platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ull;
    return mix(state_);
  }

  // Uniform in [0, 1), 53 mantissa bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, bound) by rejection-free scaling; bound > 0.
  std::uint64_t next_below(std::uint64_t bound) { return next_u64() % bound; }

  // Derives an independent child stream without advancing this generator.
  SplitMix64 split(std::uint64_t stream) const {
    return SplitMix64(mix(state_ + 0x9E3779B97F4A7C15ull * (stream + 1)));
  }

  std::uint64_t state() const { return state_; }

 private:
  std::uint64_t state_;
};

}  // namespace qcss
