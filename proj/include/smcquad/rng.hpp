#pragma once

#include <cstdint>

namespace smcquad {

/// Counter-based Gaussian noise source. A draw is a pure function of
/// (key, counter), so streams can be split per channel and replayed
/// bit-identically regardless of evaluation order.
struct NoiseRng {
  std::uint64_t key = 0;
  std::uint64_t counter = 0;

  static NoiseRng from_seed(std::uint64_t seed);

  /// Independent stream for one measured channel of a seeded run.
  static NoiseRng channel_stream(std::uint64_t seed, std::uint32_t channel);
};

struct NoiseDraw {
  double value = 0.0;
  NoiseRng next;
};

/// Zero-mean Gaussian draw with the given standard deviation. std_dev = 0
/// returns exactly 0.0. The counter advances in both cases so a channel's
/// stream position depends only on how many draws were made.
NoiseDraw sample_noise(const NoiseRng& rng, double std_dev);

}  // namespace smcquad
