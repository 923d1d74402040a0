#ifndef SSMUSIC_RNG_HPP
#define SSMUSIC_RNG_HPP

#include <cstdint>

namespace ssmusic {

// Counter-based pseudo-random generator. Draw i of stream `seed` depends only
// on (seed, i): the SplitMix64 finalizer is applied to seed + (i+1)*gamma, so
// streams can be replayed or split across workers without shared state.
// Gaussian variates come from the Box-Muller transform on two uniform draws.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t next_u64() { return mix(seed_ + kGamma * (++counter_)); }

  // Uniform double in [0,1), 53-bit resolution.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Standard normal. Pairs share one Box-Muller evaluation.
  double normal();

  // Deterministically derives an independent stream seed (for sub-streams of
  // one trial: frequencies, amplitudes, noise, ...).
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) {
    return mix(seed ^ mix(stream + kGamma));
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

}  // namespace ssmusic

#endif  // SSMUSIC_RNG_HPP
