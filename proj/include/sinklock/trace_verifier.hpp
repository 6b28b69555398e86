#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sinklock/graph.hpp"
#include "sinklock/order.hpp"
#include "sinklock/priority_verifier.hpp"
#include "sinklock/resource_model.hpp"
#include "sinklock/trace.hpp"

namespace sinklock {

struct trace_violation {
  std::optional<std::size_t> event_index;
  std::string message;
};

/// The order family a completed random-orientation run admits at the start
/// of one round: for each edge class the endpoint granted earlier ranks
/// higher; endpoints granted in the same round are left incomparable.
struct round_family {
  std::uint64_t round = 0;
  resource_model model;
  order_family family;
  std::vector<std::size_t> event_indices;  // granted/released events of the round
};

struct trace_report {
  bool complete = false;
  std::uint64_t rounds = 0;
  std::vector<std::vector<vertex>> granted;  // per round, ascending
  std::vector<trace_violation> violations;
  /// One entry per round when the run completed; empty otherwise.
  std::vector<driven_by_report> round_reports;

  bool ok() const noexcept { return violations.empty(); }
};

struct verify_options {
  /// Centralized traces are round-ordered; distributed ones interleave.
  bool require_monotone_rounds = true;
  std::size_t cap = default_down_set_cap;
};

/// Checks a random-orientation trace against the graph it ran on: event
/// well-formedness, each round's orientation covering exactly the live
/// edges, grants going to exactly the sinks of that orientation, and, for
/// completed runs, the driven-by conditions and acyclicity of every round's
/// family from round_families.
trace_report verify_rgm_trace(const graph& g, const trace& t,
                              verify_options opts = {});

/// Forward construction over a trace in which every process was granted.
/// Throws std::invalid_argument otherwise.
std::vector<round_family> round_families(const graph& g, const trace& t);

}  // namespace sinklock
