#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sinklock/order.hpp"
#include "sinklock/orientation.hpp"
#include "sinklock/resource_model.hpp"
#include "sinklock/trace.hpp"

namespace sinklock {

/// Union over classes of the covering pairs, i -> j meaning i < j in some
/// class. Vertices are the union of the ground sets.
struct priority_digraph {
  std::vector<process_id> vertices;
  std::vector<process_pair> arcs;
};

priority_digraph build_priority_digraph(const order_family& family);

struct acyclicity_result {
  bool acyclic = true;
  /// A directed cycle a0 -> a1 -> ... -> a0 when not acyclic.
  std::optional<std::vector<process_id>> cycle;
};

acyclicity_result check_acyclic(const priority_digraph& d);

inline constexpr std::size_t default_down_set_cap = 20;

/// Every down-set (order ideal) of the order, each sorted ascending,
/// including the empty set and the whole ground set. Throws cap_exceeded
/// when the ground set is larger than cap.
std::vector<std::vector<process_id>> down_sets(
    const strict_order& order, std::size_t cap = default_down_set_cap);

struct grant_violation {
  std::size_t event_index = 0;
  process_id process = 0;
  class_id resource_class = 0;
  std::string reason;
};

struct capacity_violation {
  class_id resource_class = 0;
  std::vector<process_id> down_set;
  std::vector<process_id> maxima;
  std::uint64_t demand = 0;
  units capacity = 0;
};

struct driven_by_report {
  bool condition1_ok = true;
  std::vector<grant_violation> condition1_violations;
  bool condition2_ok = true;
  std::optional<capacity_violation> condition2_violation;
  bool acyclic = true;
  std::optional<std::vector<process_id>> cycle;

  bool ok() const noexcept { return condition1_ok && condition2_ok && acyclic; }
};

/// Checks the grant discipline of one step against its order family.
///
/// Condition 1 walks the events: a release removes the process from every
/// class's outstanding set; a grant must go to a maximal element of the
/// outstanding requesters, in the event's class or, for a whole-process
/// grant, in every class the process requests. Condition 2 requires, for
/// every down-set of every class order, that the requests of its maxima
/// fit the class capacity. The report also carries the acyclicity of the
/// family's priority digraph. Event indices in violations are offset by
/// first_event_index.
///
/// Throws order_error when the family does not match the model and
/// cap_exceeded when a class order has more than cap elements.
driven_by_report check_driven_by(const resource_model& model,
                                 const order_family& family,
                                 std::span<const trace_event> events,
                                 std::size_t cap = default_down_set_cap,
                                 std::size_t first_event_index = 0);

/// For a model built by workload_from_graph over o.base(): edge class
/// {u, v} oriented tail -> head becomes the order tail < head.
order_family orientation_as_order_family(const orientation& o,
                                         const resource_model& model);

}  // namespace sinklock
