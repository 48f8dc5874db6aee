#pragma once

#include <cstdint>

namespace rel {

/// Stateless-style counter generator built on the splitmix64 finalizer.
///
/// Every draw is a pure function of (seed, stream, draw index), so a
/// simulation result is reproducible from those three numbers alone. The
/// derivation is part of the tool's output contract:
///
///   state   = mix64(mix64(seed + GAMMA) + stream)
///   draw j  = mix64(state + (j + 1) * GAMMA)          j = 0, 1, 2, ...
///
/// where mix64 is the splitmix64 finalizer and GAMMA = 0x9E3779B97F4A7C15.
/// Substreams of one seed are therefore independent of how work is chunked:
/// the Monte Carlo driver opens stream i for global sample i and component k
/// consumes draw k of that stream.
class CounterRng {
 public:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

  static constexpr std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
  }

  explicit constexpr CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : state_(mix64(mix64(seed + kGamma) + stream)) {}

  constexpr std::uint64_t next_u64() { return mix64(state_ + (++counter_) * kGamma); }

  /// Uniform draw on [0, 1) with 53 significant bits.
  constexpr double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
  std::uint64_t counter_ = 0;
};

}  // namespace rel
