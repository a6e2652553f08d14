#include "smcquad/rng.hpp"

#include <cmath>

namespace smcquad {

namespace {

// splitmix64 finalizer; bijective on 64-bit words.
std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Uniform double in (0, 1]; never returns 0 so it is safe under log().
double uniform_open0(std::uint64_t word) {
  return (static_cast<double>(word >> 11) + 1.0) * 0x1.0p-53;
}

// Uniform double in [0, 1).
double uniform_half_open(std::uint64_t word) {
  return static_cast<double>(word >> 11) * 0x1.0p-53;
}

}  // namespace

NoiseRng NoiseRng::from_seed(std::uint64_t seed) { return {mix64(seed), 0}; }

NoiseRng NoiseRng::channel_stream(std::uint64_t seed, std::uint32_t channel) {
  return {mix64(mix64(seed) ^ (0xC2B2AE3D27D4EB4FULL * (channel + 1))), 0};
}

NoiseDraw sample_noise(const NoiseRng& rng, double std_dev) {
  NoiseDraw draw;
  draw.next = {rng.key, rng.counter + 1};
  if (std_dev == 0.0) {
    draw.value = 0.0;
    return draw;
  }
  const std::uint64_t w1 = mix64(rng.key ^ mix64(2 * rng.counter));
  const std::uint64_t w2 = mix64(rng.key ^ mix64(2 * rng.counter + 1));
  const double u1 = uniform_open0(w1);
  const double u2 = uniform_half_open(w2);
  constexpr double kTwoPi = 6.283185307179586;
  draw.value = std_dev * std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
  return draw;
}

}  // namespace smcquad
