// Deterministic seeded random streams.
//
// A splitmix64 generator with explicit per-stream derivation, so Monte Carlo
// loops can hand each trial its own stream and produce identical results
// regardless of scheduling or host.

#pragma once

#include <cstdint>
#include <numbers>

namespace ewfsim {

class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : state_(seed) {}

  // Independent stream for (seed, stream_index), e.g. one per Monte Carlo trial.
  static RngStream derived(std::uint64_t seed, std::uint64_t stream_index) {
    RngStream mixer(seed ^ (0x9e3779b97f4a7c15ULL * (stream_index + 1)));
    mixer.next_u64();
    return RngStream(mixer.next_u64());
  }

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform on [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform on [0, 2*pi).
  double uniform_angle() { return uniform() * 2.0 * std::numbers::pi; }

 private:
  std::uint64_t state_;
};

}  // namespace ewfsim
