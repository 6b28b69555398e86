#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sinklock/graph.hpp"

namespace sinklock {

enum class graph_class {
  path,
  star,
  tree,
  cycle,
  complete,
  bounded_degree,
  gnp,
  power_law,
};

std::string_view to_string(graph_class c) noexcept;
std::optional<graph_class> parse_graph_class(std::string_view name) noexcept;

/// Raised when a generator or closed form is asked for parameters outside
/// its domain. The message names the violated constraint.
class invalid_parameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct graph_class_spec {
  graph_class kind = graph_class::path;
  std::size_t n = 1;
  std::size_t k = 1;   // bounded_degree only
  double p = 0.0;      // gnp only
  double a = 2.0;      // power_law only
  std::uint64_t seed = 0;
};

void validate(const graph_class_spec& spec);

/// Deterministic in spec. Star centre is vertex 0; path and cycle follow
/// vertex order.
graph generate(const graph_class_spec& spec);

/// The degree sequence the power-law generator wires: i.i.d. draws from
/// d^-a / delta(a) over 1..n-1, with one vertex incremented when the sum is
/// odd.
std::vector<std::size_t> power_law_degree_sequence(const graph_class_spec& spec);

/// Erased configuration model over the given degree sequence: stubs are
/// shuffled and paired, self-loops and repeated pairs are dropped.
graph configuration_model(const std::vector<std::size_t>& degrees,
                          std::uint64_t seed);

/// Labelled tree from a Pruefer sequence over 0..n-1 (length n-2).
graph tree_from_pruefer(std::size_t n, const std::vector<vertex>& code);

}  // namespace sinklock
