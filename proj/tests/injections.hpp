#pragma once

// Corruptions of valid traces, one per violation kind the verifiers must
// reject.

#include <algorithm>
#include <optional>

#include "sinklock/classical_rgm.hpp"
#include "sinklock/graph.hpp"
#include "sinklock/priority_verifier.hpp"
#include "sinklock/trace.hpp"

namespace inject {

using namespace sinklock;

struct sink_and_neighbor {
  std::uint64_t round;
  vertex sink;
  vertex neighbor;  // live in that round, so it has an arc into the sink
};

inline std::optional<sink_and_neighbor> find_pair(const graph& g,
                                                  const std::vector<std::vector<vertex>>& granted) {
  std::vector<bool> alive(g.vertex_count(), true);
  for (std::size_t r = 0; r < granted.size(); ++r) {
    for (auto s : granted[r])
      for (const auto& inc : g.incident(s))
        if (alive[inc.neighbor]) return sink_and_neighbor{r + 1, s, inc.neighbor};
    for (auto s : granted[r]) alive[s] = false;
  }
  return std::nullopt;
}

/// Swaps the identities of a sink and a neighbor in their granted,
/// released and terminated events, so the neighbor is granted while it
/// still has an outgoing arc.
inline trace grant_to_non_sink(const trace& t, const sink_and_neighbor& p) {
  trace out = t;
  for (auto& e : out.events) {
    if (!e.process || e.type == event_type::message) continue;
    if (e.type != event_type::granted && e.type != event_type::released &&
        e.type != event_type::terminated)
      continue;
    if (*e.process == p.sink) e.process = p.neighbor;
    else if (*e.process == p.neighbor) e.process = p.sink;
  }
  return out;
}

/// Also grants the neighbor in the sink's round, right after the sink.
inline trace adjacent_grants(const trace& t, const sink_and_neighbor& p) {
  trace out;
  for (const auto& e : t.events) {
    const bool of_neighbor = e.process && *e.process == p.neighbor &&
                             (e.type == event_type::granted ||
                              e.type == event_type::released ||
                              e.type == event_type::terminated);
    if (of_neighbor) continue;
    out.push(e);
    if (e.type == event_type::granted && e.process == p.sink) {
      out.push(trace_event::granted(p.round, p.neighbor));
      out.push(trace_event::released(p.round, p.neighbor));
      out.push(trace_event::terminated(p.round, p.neighbor));
    }
  }
  return out;
}

/// A grant of some class to a requester that is not maximal in that
/// class's order at the start of the step.
inline std::optional<std::vector<trace_event>> non_maximal_grant(const classical_step& s) {
  for (const auto& co : s.family.orders()) {
    const auto maxima = co.order.maximal();
    for (auto i : co.order.ground()) {
      if (std::find(maxima.begin(), maxima.end(), i) != maxima.end()) continue;
      if (s.model.granted(i, co.resource_class) > 0) continue;
      return std::vector<trace_event>{trace_event::granted_class(s.step, i, co.resource_class)};
    }
  }
  return std::nullopt;
}

/// The step's family with one class order reversed, chosen so that the
/// priority digraph becomes cyclic.
inline std::optional<order_family> cyclic_family(const classical_step& s) {
  for (const auto& target : s.family.orders()) {
    if (target.order.size() < 2) continue;
    order_family f;
    for (const auto& co : s.family.orders()) {
      if (co.resource_class != target.resource_class) {
        f.set(co.resource_class, co.order);
        continue;
      }
      std::vector<process_id> ground = co.order.ground();
      std::sort(ground.begin(), ground.end(), [&](process_id a, process_id b) {
        return co.order.less(b, a);
      });
      f.set(co.resource_class, strict_order::chain(ground));
    }
    if (!check_acyclic(build_priority_digraph(f)).acyclic) return f;
  }
  return std::nullopt;
}

}  // namespace inject
