#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace sinklock {

using adjacency_list = std::vector<std::vector<std::size_t>>;

/// One directed cycle as a vertex sequence v0 -> v1 -> ... -> v0, or
/// nullopt when the digraph is acyclic. Search starts from the smallest
/// vertex and follows successors in list order, so the witness is
/// deterministic.
std::optional<std::vector<std::size_t>> find_directed_cycle(
    const adjacency_list& out);

/// Kahn's algorithm; nullopt when a cycle exists. Ties go to the smallest
/// index.
std::optional<std::vector<std::size_t>> topological_order(
    const adjacency_list& out);

}  // namespace sinklock
