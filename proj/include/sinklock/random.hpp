#pragma once

#include <cstdint>
#include <random>

namespace sinklock {

/// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Stateless counter-based hash of (key, a, b, c).
constexpr std::uint64_t counter_hash(std::uint64_t key, std::uint64_t a,
                                     std::uint64_t b = 0,
                                     std::uint64_t c = 0) noexcept {
  std::uint64_t h = mix64(key);
  h = mix64(h ^ a);
  h = mix64(h ^ (b * 0xD6E8FEB86659FD93ULL));
  h = mix64(h ^ (c * 0xA0761D6478BD642FULL));
  return h;
}

/// The orientation coin for edge {u, v} (u < v) in a given round.
/// false: u -> v, true: v -> u.
constexpr bool edge_coin(std::uint64_t seed, std::uint64_t round,
                         std::uint32_t u, std::uint32_t v) noexcept {
  return (counter_hash(seed, round, u, v) >> 63) != 0;
}

/// Maps 64 random bits to [0, 1) with 53 bits of precision.
constexpr double to_unit_interval(std::uint64_t bits) noexcept {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// Sequential generator for graph construction. Only the engine comes from
/// <random>; the conversions are ours so output is identical across
/// standard library implementations.
class stream_rng {
 public:
  explicit stream_rng(std::uint64_t seed) : engine_(mix64(seed)) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  double unit() { return to_unit_interval(engine_()); }

  bool bernoulli(double p) { return unit() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace sinklock
