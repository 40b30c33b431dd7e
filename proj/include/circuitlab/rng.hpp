#pragma once

#include <complex>
#include <cstdint>
#include <string_view>

namespace circuitlab {

// SplitMix64 mixing step; used to derive stream seeds from (seed, id) tuples.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<std::uint8_t>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Counter-seeded xoshiro256++ stream. A stream is addressed by
/// (master seed, realization index, purpose tag); the same address yields
/// the same draw sequence regardless of thread count or call site.
/// All samplers are hand-rolled so sequences do not depend on the standard
/// library implementation.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t realization,
            std::uint64_t purpose);
  RngStream(std::uint64_t master_seed, std::uint64_t realization,
            std::string_view purpose)
      : RngStream(master_seed, realization, fnv1a64(purpose)) {}
  explicit RngStream(std::uint64_t master_seed)
      : RngStream(master_seed, 0, std::uint64_t{0}) {}

  /// Child stream, for splitting work below the realization level.
  RngStream split(std::uint64_t index, std::string_view purpose) const;

  std::uint64_t next_u64();
  /// Uniform double in [0, 1), 53-bit resolution.
  double uniform();
  double uniform(double lo, double hi);
  /// Uniform integer in [0, n); exact (rejection), n >= 1.
  std::uint64_t uniform_index(std::uint64_t n);
  bool bernoulli(double p);
  /// Standard normal via Box-Muller (second value cached).
  double normal();
  std::complex<double> complex_normal();  // re, im ~ N(0,1)
  double exponential(double rate);

 private:
  std::uint64_t s_[4];
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;

  std::uint64_t seed_tuple_[3];
};

}  // namespace circuitlab
