#include "sinklock/trace_verifier.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace sinklock {

namespace {

struct grant_record {
  std::uint64_t round = 0;
  std::size_t index = 0;
};

std::string describe(const trace_event& e) { return to_json_line(e); }

std::map<process_id, std::uint64_t> grant_rounds(const graph& g,
                                                 const trace& t) {
  std::map<process_id, std::uint64_t> rounds;
  for (const auto& e : t.events) {
    if (e.type == event_type::granted && e.process && !rounds.count(*e.process)) {
      rounds[*e.process] = e.round;
    }
  }
  if (rounds.size() != g.vertex_count()) {
    throw std::invalid_argument(
        "forward construction needs a run in which every process was granted");
  }
  return rounds;
}

}  // namespace

std::vector<round_family> round_families(const graph& g, const trace& t) {
  const auto granted_in = grant_rounds(g, t);
  std::uint64_t last_round = 0;
  for (const auto& [p, r] : granted_in) last_round = std::max(last_round, r);

  std::vector<round_family> out;
  const auto edges = g.edges();
  for (std::uint64_t round = 1; round <= last_round; ++round) {
    round_family rf;
    rf.round = round;
    auto live = [&](vertex v) { return granted_in.at(v) >= round; };
    for (vertex v = 0; v < g.vertex_count(); ++v)
      if (live(v)) rf.model.add_process(v);
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const auto [u, v] = edges[i];
      if (!live(u) && !live(v)) continue;
      const auto r = static_cast<class_id>(i);
      rf.model.add_class(r, 1);
      std::vector<process_id> ground;
      for (auto w : {u, v}) {
        if (!live(w)) continue;
        rf.model.set_request(w, r, 1);
        ground.push_back(w);
      }
      if (ground.size() == 1) {
        rf.family.set(r, strict_order::chain(ground));
      } else if (granted_in.at(u) < granted_in.at(v)) {
        rf.family.set(r, strict_order::chain({v, u}));
      } else if (granted_in.at(v) < granted_in.at(u)) {
        rf.family.set(r, strict_order::chain({u, v}));
      } else {
        rf.family.set(r, strict_order::from_relation(ground, {}));
      }
    }
    for (std::size_t k = 0; k < t.events.size(); ++k) {
      const auto& e = t.events[k];
      if (e.round == round &&
          (e.type == event_type::granted || e.type == event_type::released)) {
        rf.event_indices.push_back(k);
      }
    }
    out.push_back(std::move(rf));
  }
  return out;
}

trace_report verify_rgm_trace(const graph& g, const trace& t,
                              verify_options opts) {
  trace_report report;
  auto fail = [&](std::optional<std::size_t> index, std::string message) {
    report.violations.push_back({index, std::move(message)});
  };
  const std::size_t n = g.vertex_count();

  std::map<process_id, grant_record> granted;
  std::set<process_id> released;
  std::set<process_id> terminated;
  // round -> edge index -> (tail, event index)
  std::map<std::uint64_t, std::map<std::size_t, std::pair<vertex, std::size_t>>>
      oriented;
  std::map<std::uint64_t, std::vector<std::size_t>> grants_by_round;
  std::uint64_t last_round = 0;
  std::uint64_t max_round = 0;

  for (std::size_t k = 0; k < t.events.size(); ++k) {
    const auto& e = t.events[k];
    if (e.round < 1) {
      fail(k, "round numbers start at 1: " + describe(e));
      continue;
    }
    if (e.type == event_type::message) continue;
    if (opts.require_monotone_rounds && e.round < last_round) {
      fail(k, "round number decreases: " + describe(e));
    }
    last_round = std::max(last_round, e.round);
    max_round = std::max(max_round, e.round);

    const bool needs_process = e.type == event_type::granted ||
                               e.type == event_type::released ||
                               e.type == event_type::terminated;
    if (needs_process && (!e.process || *e.process >= n)) {
      fail(k, "event names no valid process: " + describe(e));
      continue;
    }
    switch (e.type) {
      case event_type::round_start:
      case event_type::message:
        break;
      case event_type::orientation_fixed: {
        if (!e.on_edge || !e.direction) {
          fail(k, "orientation event without edge or direction: " + describe(e));
          break;
        }
        const auto idx = g.edge_index(e.on_edge->u, e.on_edge->v);
        const auto [tail, head] = *e.direction;
        if (!idx || std::minmax(tail, head) != std::minmax(e.on_edge->u, e.on_edge->v)) {
          fail(k, "orientation of a non-edge: " + describe(e));
          break;
        }
        if (!oriented[e.round].emplace(*idx, std::make_pair(tail, k)).second) {
          fail(k, "edge oriented twice in one round: " + describe(e));
        }
        break;
      }
      case event_type::granted:
        if (granted.count(*e.process)) {
          fail(k, "process granted twice: " + describe(e));
        } else {
          granted[*e.process] = {e.round, k};
          grants_by_round[e.round].push_back(k);
        }
        break;
      case event_type::released: {
        auto it = granted.find(*e.process);
        if (it == granted.end() || it->second.round != e.round) {
          fail(k, "release without a grant in the same round: " + describe(e));
        } else if (!released.insert(*e.process).second) {
          fail(k, "process released twice: " + describe(e));
        }
        break;
      }
      case event_type::terminated:
        if (!released.count(*e.process)) {
          fail(k, "termination before release: " + describe(e));
        }
        terminated.insert(*e.process);
        break;
    }
  }
  for (const auto& [p, rec] : granted) {
    if (!released.count(p)) fail(rec.index, "granted process never released");
  }

  // Replay liveness round by round.
  std::vector<bool> live(n, true);
  const auto edges = g.edges();
  report.rounds = max_round;
  for (std::uint64_t round = 1; round <= max_round; ++round) {
    const auto& arcs = oriented[round];
    std::vector<bool> has_out(n, false);
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const bool edge_live = live[edges[i].u] && live[edges[i].v];
      auto it = arcs.find(i);
      if (edge_live && it == arcs.end()) {
        fail(std::nullopt, "round " + std::to_string(round) + ": live edge " +
                               std::to_string(edges[i].u) + " " +
                               std::to_string(edges[i].v) + " was not oriented");
      } else if (!edge_live && it != arcs.end()) {
        fail(it->second.second, "round " + std::to_string(round) +
                                    ": oriented an edge to a retired process");
      }
      if (edge_live && it != arcs.end()) has_out[it->second.first] = true;
    }

    std::vector<vertex> round_grants;
    for (auto k : grants_by_round[round]) {
      const auto p = *t.events[k].process;
      if (!live[p]) {
        fail(k, "grant to a retired process: " + describe(t.events[k]));
        continue;
      }
      if (has_out[p]) {
        std::string arc;
        for (const auto& inc : g.incident(p)) {
          auto it = arcs.find(inc.edge_index);
          if (it != arcs.end() && it->second.first == p && live[inc.neighbor]) {
            arc = std::to_string(p) + ">" + std::to_string(inc.neighbor);
            break;
          }
        }
        fail(k, "grant to a non-sink (arc " + arc + "): " + describe(t.events[k]));
      }
      round_grants.push_back(p);
    }
    std::sort(round_grants.begin(), round_grants.end());
    for (std::size_t a = 0; a < round_grants.size(); ++a)
      for (std::size_t b = a + 1; b < round_grants.size(); ++b)
        if (g.has_edge(round_grants[a], round_grants[b])) {
          fail(granted[round_grants[b]].index,
               "adjacent processes " + std::to_string(round_grants[a]) +
                   " and " + std::to_string(round_grants[b]) +
                   " granted in round " + std::to_string(round));
        }
    for (vertex v = 0; v < n; ++v) {
      if (live[v] && !has_out[v] &&
          !std::binary_search(round_grants.begin(), round_grants.end(), v)) {
        fail(std::nullopt, "round " + std::to_string(round) + ": sink " +
                               std::to_string(v) + " was not granted");
      }
    }
    for (auto p : round_grants) live[p] = false;
    report.granted.push_back(std::move(round_grants));
  }

  report.complete = granted.size() == n && terminated.size() == n;
  if (!report.complete) return report;

  for (const auto& rf : round_families(g, t)) {
    std::vector<trace_event> step_events;
    for (auto k : rf.event_indices) step_events.push_back(t.events[k]);
    auto step = check_driven_by(rf.model, rf.family, step_events, opts.cap);
    for (const auto& v : step.condition1_violations) {
      fail(rf.event_indices[v.event_index],
           "round " + std::to_string(rf.round) + ": condition 1: " + v.reason);
    }
    if (step.condition2_violation) {
      const auto& cv = *step.condition2_violation;
      fail(std::nullopt, "round " + std::to_string(rf.round) +
                             ": condition 2: class " +
                             std::to_string(cv.resource_class) + " maxima demand " +
                             std::to_string(cv.demand) + " > capacity " +
                             std::to_string(cv.capacity));
    }
    if (!step.acyclic) {
      fail(std::nullopt,
           "round " + std::to_string(rf.round) + ": cyclic priority digraph");
    }
    report.round_reports.push_back(std::move(step));
  }
  return report;
}

}  // namespace sinklock
