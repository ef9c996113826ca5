#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <numbers>

namespace ancillary {

/// SplitMix64 finalizer; used both to expand seeds and to hash stream paths.
constexpr std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t hash_combine64(std::uint64_t h, std::uint64_t v) noexcept {
  std::uint64_t s = h ^ (v + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2));
  return splitmix64(s);
}

/// Purpose tags keep the draws for data, bootstrap resampling and auxiliary
/// uses on disjoint streams even when the rest of the path coincides.
enum class StreamPurpose : std::uint64_t {
  data = 1,
  bootstrap = 2,
  resample = 3,
  fixture = 4,
  model = 5,
};

/// xoshiro256** engine. Satisfies UniformRandomBitGenerator.
class Xoshiro256 {
 public:
  using result_type = std::uint64_t;

  constexpr explicit Xoshiro256(std::uint64_t seed = 1) noexcept {
    std::uint64_t x = seed;
    for (auto& v : state_) v = splitmix64(x);
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  constexpr result_type operator()() noexcept {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  friend constexpr bool operator==(const Xoshiro256&, const Xoshiro256&) = default;

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }
  std::array<std::uint64_t, 4> state_{};
};

/// Counter-based stream: the generator state is a pure function of
/// (root seed, path). Replication i of a cell always sees the same draws,
/// whichever worker thread evaluates it.
class RandomStream {
 public:
  RandomStream(std::uint64_t root_seed, std::initializer_list<std::uint64_t> path) noexcept
      : root_seed_(root_seed) {
    std::uint64_t h = hash_combine64(0x6A09E667F3BCC909ULL, root_seed);
    for (std::uint64_t p : path) h = hash_combine64(h, p);
    engine_ = Xoshiro256(h);
  }

  std::uint64_t root_seed() const noexcept { return root_seed_; }

  std::uint64_t next_u64() noexcept { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform on (0, 1]; safe as a log argument.
  double uniform_pos() noexcept { return 1.0 - uniform(); }

  /// Unbiased-enough index in [0, bound) by 128-bit multiply-shift; the bias
  /// is at most bound / 2^64.
  std::size_t index(std::size_t bound) noexcept {
    const auto wide = static_cast<unsigned __int128>(engine_()) * bound;
    return static_cast<std::size_t>(wide >> 64);
  }

  double exponential() noexcept { return -std::log(uniform_pos()); }

  /// Box-Muller; one variate per call so the stream position stays a simple
  /// function of the number of draws.
  double normal() noexcept {
    const double r = std::sqrt(-2.0 * std::log(uniform_pos()));
    return r * std::cos(2.0 * std::numbers::pi * uniform());
  }

  double lognormal(double meanlog, double sdlog) noexcept {
    return std::exp(meanlog + sdlog * normal());
  }

  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

  /// Weibull by inverse CDF: scale * (-log(1-u))^(1/shape).
  double weibull(double shape, double scale) noexcept {
    return scale * std::pow(-std::log(uniform_pos()), 1.0 / shape);
  }

  /// Beta(1/2, 1/2) (arcsine law) by inverse CDF: sin^2(pi u / 2).
  double arcsine() noexcept {
    const double s = std::sin(0.5 * std::numbers::pi * uniform());
    return s * s;
  }

  Xoshiro256& engine() noexcept { return engine_; }

  friend bool operator==(const RandomStream&, const RandomStream&) = default;

 private:
  std::uint64_t root_seed_;
  Xoshiro256 engine_;
};

}  // namespace ancillary
