#include "sinklock/rgm_engine.hpp"

#include <stdexcept>

#include "sinklock/random.hpp"

namespace sinklock {

std::string_view to_string(run_status s) noexcept {
  return s == run_status::complete ? "complete" : "incomplete";
}

resource_model workload_from_graph(const graph& g) {
  resource_model model;
  for (vertex v = 0; v < g.vertex_count(); ++v) model.add_process(v);
  const auto edges = g.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto r = static_cast<class_id>(i);
    model.add_class(r, 1);
    model.set_request(edges[i].u, r, 1);
    model.set_request(edges[i].v, r, 1);
  }
  return model;
}

rgm_run simulate_random_orientation_rgm(const graph& g, std::uint64_t seed,
                                        std::uint64_t max_rounds) {
  if (g.vertex_count() == 0) {
    throw std::invalid_argument("simulation needs at least one process");
  }
  if (max_rounds < 1) throw std::invalid_argument("max_rounds must be >= 1");

  const std::size_t n = g.vertex_count();
  resource_model model = workload_from_graph(g);
  std::vector<bool> alive(n, true);
  std::size_t remaining = n;
  std::vector<bool> has_out(n);
  rgm_run run;

  for (std::uint64_t round = 1; round <= max_rounds && remaining > 0; ++round) {
    run.rounds = round;
    run.events.push(trace_event::round_start(round));
    has_out.assign(n, false);
    for (const auto& e : g.edges()) {
      if (!alive[e.u] || !alive[e.v]) continue;
      const bool reversed = edge_coin(seed, round, e.u, e.v);
      const vertex tail = reversed ? e.v : e.u;
      const vertex head = reversed ? e.u : e.v;
      has_out[tail] = true;
      run.events.push(trace_event::orientation_fixed(round, e, tail, head));
    }

    std::vector<vertex> sinks;
    for (vertex v = 0; v < n; ++v)
      if (alive[v] && !has_out[v]) sinks.push_back(v);

    // Sinks are independent, so no edge class can be granted twice; the
    // model throws if that ever fails.
    for (auto v : sinks) {
      model.grant_all(v);
      run.events.push(trace_event::granted(round, v));
    }
    model.check_invariants();
    for (auto v : sinks) {
      model.release_all(v);
      run.events.push(trace_event::released(round, v));
      run.events.push(trace_event::terminated(round, v));
      alive[v] = false;
      --remaining;
    }
    run.granted.push_back(std::move(sinks));
  }
  run.status = remaining == 0 ? run_status::complete : run_status::incomplete;
  return run;
}

}  // namespace sinklock
