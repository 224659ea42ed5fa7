#include "esolab/noise.hpp"

#include <cmath>

#include "esolab/errors.hpp"

namespace esolab {

double SplitMix64::next_gaussian() {
  const double u1 = next_unit();
  const double u2 = next_unit();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
}

void NoiseSpec::validate() const {
  if (power < 0.0) throw ConfigError("noise power must be >= 0");
  if (sample_time <= 0.0) throw ConfigError("noise sample_time must be positive");
}

NoiseGenerator::NoiseGenerator(const NoiseSpec& spec, double dt) : rng_(spec.seed) {
  spec.validate();
  if (dt <= 0.0) throw ConfigError("dt must be positive");
  sigma_ = std::sqrt(spec.power / spec.sample_time);
  const double ratio = spec.sample_time / dt;
  stride_ = ratio <= 1.0 ? 1 : static_cast<std::uint64_t>(std::llround(ratio));
}

double NoiseGenerator::sample(std::uint64_t step_index) {
  if (sigma_ == 0.0) return 0.0;
  while (step_index >= next_draw_step_) {
    held_ = sigma_ * rng_.next_gaussian();
    next_draw_step_ += stride_;
  }
  return held_;
}

}  // namespace esolab
