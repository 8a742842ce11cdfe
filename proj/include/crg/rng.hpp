#pragma once

#include <cstdint>
#include <random>

namespace crg {

// Reproducible random stream: same (seed, stream) gives the same sequence,
// distinct stream ids give statistically independent sequences.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0)
      : engine_(mix(seed, stream)) {}

  using result_type = std::mt19937_64::result_type;
  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

  double uniform() {
    return std::uniform_real_distribution<double>(0.0, 1.0)(engine_);
  }
  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  // inclusive bounds
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(engine_);
  }
  double gaussian(double mean = 0.0, double sd = 1.0) {
    return std::normal_distribution<double>(mean, sd)(engine_);
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  // splitmix64 finalizer over the (seed, stream) pair
  static std::uint64_t splitmix(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  static std::mt19937_64 mix(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t s = seed ^ (0x632be59bd9b4e019ULL * (stream + 1));
    std::seed_seq seq{static_cast<unsigned>(splitmix(s)),
                      static_cast<unsigned>(splitmix(s) >> 32),
                      static_cast<unsigned>(splitmix(s)),
                      static_cast<unsigned>(splitmix(s) >> 32),
                      static_cast<unsigned>(splitmix(s)),
                      static_cast<unsigned>(splitmix(s) >> 32)};
    return std::mt19937_64(seq);
  }

  std::mt19937_64 engine_;
};

}  // namespace crg
