#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "sinklock/graph.hpp"
#include "sinklock/rational.hpp"

namespace sinklock {

/// A direction for every edge of a base graph. Edge i = {u, v}, u < v, is
/// the arc u -> v unless reversed(i), in which case it is v -> u.
class orientation {
 public:
  orientation(graph base, std::vector<bool> reversed);

  const graph& base() const noexcept { return base_; }
  bool reversed(std::size_t edge_index) const { return reversed_.at(edge_index); }
  vertex tail(std::size_t edge_index) const;
  vertex head(std::size_t edge_index) const;

  /// (tail, head) pairs in edge order.
  std::vector<std::pair<vertex, vertex>> arcs() const;
  std::size_t out_degree(vertex v) const;

  bool operator==(const orientation&) const = default;

 private:
  graph base_;
  std::vector<bool> reversed_;
};

/// Sorted vertex ids with no out-arcs.
using sink_set = std::vector<vertex>;

/// Fair coin per edge, keyed by (seed, round, endpoints).
orientation random_orientation(const graph& g, std::uint64_t seed,
                               std::uint64_t round = 0);

/// Every edge with an endpoint in targets points into targets; the rest
/// point from smaller to larger id. targets must be independent in g.
orientation orient_toward(const graph& g, const std::vector<vertex>& targets);

sink_set sinks(const orientation& o);

bool is_acyclic(const orientation& o);

/// A directed cycle of o when one exists.
std::optional<std::vector<vertex>> directed_cycle(const orientation& o);

bool is_independent_set(const graph& g, const std::vector<vertex>& set);

inline constexpr std::size_t default_enumeration_cap = 20;

class cap_exceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

struct exact_stats {
  rational expected_sinks;
  rational prob_positive;
  big_int orientation_count;
  /// histogram[s]: number of orientations with exactly s sinks.
  std::vector<std::uint64_t> sink_histogram;
};

/// Exhaustive over all 2^m orientations (OpenMP over the index space).
/// Throws cap_exceeded when m > cap.
exact_stats enumerate_exact(const graph& g,
                            std::size_t cap = default_enumeration_cap);

/// Serial reference for enumerate_exact.
exact_stats enumerate_exact_serial(const graph& g,
                                   std::size_t cap = default_enumeration_cap);

/// All maximal independent sets, sorted, each checked to be the sink set of
/// orient_toward(g, set). Throws cap_exceeded when n > cap.
std::vector<std::vector<vertex>> maximal_independent_sets(
    const graph& g, std::size_t cap = default_enumeration_cap);

/// Edge-list text followed by one line "a>b" per edge, in edge order.
void write_orientation(std::ostream& out, const orientation& o);
orientation read_orientation(std::istream& in);

}  // namespace sinklock
