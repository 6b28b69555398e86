#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "sinklock/graph.hpp"
#include "sinklock/resource_model.hpp"
#include "sinklock/trace.hpp"

namespace sinklock {

enum class run_status { complete, incomplete };
std::string_view to_string(run_status s) noexcept;

/// One resource class per edge (class id = edge index), capacity 1, and one
/// unit requested by each endpoint.
resource_model workload_from_graph(const graph& g);

struct rgm_run {
  trace events;
  run_status status = run_status::incomplete;
  std::uint64_t rounds = 0;
  /// granted[r - 1]: processes granted in round r, ascending.
  std::vector<std::vector<vertex>> granted;
};

inline std::uint64_t default_max_rounds(const graph& g) {
  return 10 * static_cast<std::uint64_t>(g.vertex_count());
}

/// Rounds are numbered from 1. Each round orients the conflict graph on the
/// remaining processes with coins (seed, round, u, v), grants every sink all
/// of its resources, then releases them and retires the sink. Stops when no
/// process remains or after max_rounds.
rgm_run simulate_random_orientation_rgm(const graph& g, std::uint64_t seed,
                                        std::uint64_t max_rounds);

}  // namespace sinklock
