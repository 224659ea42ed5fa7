#pragma once

#include <cstdint>

namespace esolab {

// splitmix64: the full 64-bit integer stream is identical for a given seed
// on every platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in (0, 1), never exactly 0.
  double next_unit() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * (1.0 / 9007199254740992.0);
  }

  // Standard normal via Box-Muller (cosine branch only).
  double next_gaussian();

 private:
  std::uint64_t state_;
};

// Band-limited measurement noise: a zero-mean Gaussian of variance
// power/sample_time, redrawn every sample_time and held in between.
struct NoiseSpec {
  double power = 0.0;        // PSD level, units^2 * s
  double sample_time = 0.01; // s
  std::uint64_t seed = 0;

  void validate() const;
};

// Stateful sampler for a fixed-step loop. Holds each draw for
// round(sample_time / dt) steps so the resampling grid never suffers from
// floating-point boundary jitter.
class NoiseGenerator {
 public:
  NoiseGenerator(const NoiseSpec& spec, double dt);

  // Noise value for step index k (k = t/dt).
  double sample(std::uint64_t step_index);

 private:
  SplitMix64 rng_;
  double sigma_;
  std::uint64_t stride_;
  std::uint64_t next_draw_step_ = 0;
  double held_ = 0.0;
};

}  // namespace esolab
