#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace ppgrow {

// Reproducible random source.
//
// Stream-splitting rule: every consumer derives an independent stream from
// (seed, stream_id) via two rounds of splitmix64 — the engine seed is
// splitmix64(splitmix64(seed) ^ (stream_id * 0x9e3779b97f4a7c15)). Stream ids
// are assigned deterministically by the caller:
//   - single-phase simulators use stream 0 of the seed they are given;
//   - the three-phase generator uses stream 0 for the startup phase and
//     stream 1 + i for daily phase day i;
//   - randomized multi-start optimizers use the start index as stream id.
// Identical (seed, stream_id) always reproduces the same draws, independent
// of how many threads consume other streams.
//
// Uniform doubles are built directly from the top 53 bits of the engine
// output so results do not depend on standard-library distribution
// implementations.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id)
      : engine_(mix(mix(seed) ^ (stream_id * 0x9e3779b97f4a7c15ULL))) {}

  // Uniform on [0, 1).
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Exponential with the given rate (> 0).
  double exponential(double rate) {
    // uniform() < 1 so the argument of log stays in (0, 1].
    return -std::log(1.0 - uniform()) / rate;
  }

  // Log-uniform on [lo, hi], lo > 0.
  double log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
  }

  std::uint64_t next_u64() { return engine_(); }

 private:
  static std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  std::mt19937_64 engine_;
};

}  // namespace ppgrow
