#ifndef CHAINLAB_RNG_HPP
#define CHAINLAB_RNG_HPP

#include <cstdint>
#include <random>

namespace chainlab {

/// Deterministic 64-bit generator. The mapping from raw bits to doubles is
/// fixed here rather than left to std::uniform_real_distribution, so streams
/// are reproducible across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
    engine_.seed(seq);
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Exactly false for p <= 0 and exactly true for p >= 1.
  bool bernoulli(double p) { return uniform() < p; }

  /// Seed of the independent stream `stream` derived from a master seed.
  static std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) {
    return splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
  }

  static std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace chainlab

#endif  // CHAINLAB_RNG_HPP
