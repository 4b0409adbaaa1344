#pragma once

#include <cstdint>
#include <random>

namespace evstat {

/// 64-bit finalizer used to spread (seed, stream) pairs over the engine's
/// seed space. Bijective, so distinct inputs never collide.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// Seeded random source identified by a (seed, stream) pair.
///
/// The same (seed, stream) always reproduces the same draw sequence;
/// distinct streams are decorrelated. Experiments assign one stream per
/// replicate, which makes results independent of thread count.
class RandomSource {
public:
  explicit RandomSource(std::uint64_t seed, std::uint64_t stream = 0)
      : seed_(seed),
        stream_(stream),
        engine_(splitmix64(splitmix64(seed) ^ splitmix64(~stream))) {}

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream() const noexcept { return stream_; }

  /// Fresh source with the same seed but the given stream index.
  RandomSource at_stream(std::uint64_t stream) const { return RandomSource(seed_, stream); }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1), 53-bit resolution.
  double next_unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform double in the open interval (0, 1); safe to feed to log().
  double next_unit_open() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Exponential variate with the given rate.
  double exponential(double rate);

  /// Poisson variate by Knuth's product method; intended for small means.
  std::uint64_t poisson(double mean);

  /// Uniform integer in [0, bound) via Lemire's multiply-shift reduction.
  /// Bias is below bound/2^64, negligible for the bounds used here.
  std::uint64_t next_below(std::uint64_t bound) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(engine_()) * bound) >> 64);
  }

private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
};

}  // namespace evstat
