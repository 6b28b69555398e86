#pragma once

// Data-parallel kernels behind the orientation statistics. Each kernel has a
// serial reference and an OpenMP version; both reduce integer counters only,
// so their results are bit-identical for any thread count.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sinklock/graph.hpp"

namespace sinklock::kernels {

/// Largest edge count the bitmask kernels accept.
inline constexpr std::size_t max_mask_edges = 62;

/// Per-vertex sink test over an orientation bitmask: bit i set means edge i
/// points from its larger endpoint to its smaller one. v is a sink iff
/// (mask & incident[v]) == inward[v].
struct sink_masks {
  std::vector<std::uint64_t> incident;
  std::vector<std::uint64_t> inward;

  explicit sink_masks(const graph& g);

  std::size_t count(std::uint64_t mask) const noexcept {
    std::size_t sinks = 0;
    for (std::size_t v = 0; v < incident.size(); ++v) {
      sinks += (mask & incident[v]) == inward[v];
    }
    return sinks;
  }
};

struct enumeration_counts {
  std::uint64_t orientations = 0;
  std::uint64_t total_sinks = 0;
  std::uint64_t with_sink = 0;
  std::vector<std::uint64_t> histogram;  // histogram[s]: orientations with s sinks

  bool operator==(const enumeration_counts&) const = default;
};

enumeration_counts enumerate_serial(const graph& g);
enumeration_counts enumerate_parallel(const graph& g);

struct trial_moments {
  std::uint64_t trials = 0;
  std::uint64_t sum = 0;
  std::uint64_t sum_squares = 0;
  std::uint64_t with_sink = 0;

  bool operator==(const trial_moments&) const = default;
};

/// Trial t samples the orientation drawn with coins (seed, round = t).
trial_moments sample_serial(const graph& g, std::uint64_t trials,
                            std::uint64_t seed);
trial_moments sample_parallel(const graph& g, std::uint64_t trials,
                              std::uint64_t seed);

/// Sinks of the orientation drawn with coins (seed, round).
std::size_t sinks_for_round(const graph& g, std::uint64_t seed,
                            std::uint64_t round);

}  // namespace sinklock::kernels
