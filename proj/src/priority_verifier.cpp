#include "sinklock/priority_verifier.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "sinklock/digraph.hpp"

namespace sinklock {

priority_digraph build_priority_digraph(const order_family& family) {
  priority_digraph d;
  for (const auto& co : family.orders()) {
    d.vertices.insert(d.vertices.end(), co.order.ground().begin(),
                      co.order.ground().end());
    d.arcs.insert(d.arcs.end(), co.order.covers().begin(),
                  co.order.covers().end());
  }
  std::sort(d.vertices.begin(), d.vertices.end());
  d.vertices.erase(std::unique(d.vertices.begin(), d.vertices.end()),
                   d.vertices.end());
  std::sort(d.arcs.begin(), d.arcs.end());
  d.arcs.erase(std::unique(d.arcs.begin(), d.arcs.end()), d.arcs.end());
  return d;
}

acyclicity_result check_acyclic(const priority_digraph& d) {
  auto index = [&](process_id p) {
    return static_cast<std::size_t>(
        std::lower_bound(d.vertices.begin(), d.vertices.end(), p) -
        d.vertices.begin());
  };
  adjacency_list out(d.vertices.size());
  for (const auto& [a, b] : d.arcs) out[index(a)].push_back(index(b));
  acyclicity_result result;
  if (auto cycle = find_directed_cycle(out)) {
    result.acyclic = false;
    std::vector<process_id> ids;
    for (auto i : *cycle) ids.push_back(d.vertices[i]);
    result.cycle = std::move(ids);
  }
  return result;
}

std::vector<std::vector<process_id>> down_sets(const strict_order& order,
                                               std::size_t cap) {
  const std::size_t n = order.size();
  if (n > cap) {
    throw cap_exceeded("down-set enumeration over " + std::to_string(n) +
                       " elements exceeds the cap of " + std::to_string(cap));
  }
  // Visit elements bottom-up along a linear extension; an element may join
  // once all of its lower covers have joined.
  const auto& ground = order.ground();
  std::vector<std::vector<std::size_t>> lower(n);
  adjacency_list up(n);
  for (const auto& [lo, hi] : order.covers()) {
    lower[order.index_of(hi)].push_back(order.index_of(lo));
    up[order.index_of(lo)].push_back(order.index_of(hi));
  }
  const auto extension = topological_order(up);
  if (!extension) throw order_error("order is cyclic");

  std::vector<std::vector<process_id>> out;
  std::vector<bool> chosen(n, false);
  auto recurse = [&](auto&& self, std::size_t pos) -> void {
    if (pos == n) {
      std::vector<process_id> members;
      for (std::size_t i = 0; i < n; ++i)
        if (chosen[i]) members.push_back(ground[i]);
      out.push_back(std::move(members));
      return;
    }
    const auto v = (*extension)[pos];
    self(self, pos + 1);
    if (std::all_of(lower[v].begin(), lower[v].end(),
                    [&](std::size_t w) { return chosen[w]; })) {
      chosen[v] = true;
      self(self, pos + 1);
      chosen[v] = false;
    }
  };
  recurse(recurse, 0);
  std::sort(out.begin(), out.end());
  return out;
}

driven_by_report check_driven_by(const resource_model& model,
                                 const order_family& family,
                                 std::span<const trace_event> events,
                                 std::size_t cap,
                                 std::size_t first_event_index) {
  family.check_against(model);
  driven_by_report report;

  std::map<class_id, std::vector<process_id>> outstanding;
  for (const auto& co : family.orders()) {
    outstanding[co.resource_class] = co.order.ground();
  }

  auto check_grant = [&](std::size_t index, process_id p, class_id r) {
    const auto* order = family.find(r);
    if (!order || !order->contains(p)) {
      report.condition1_violations.push_back(
          {index, p, r, "process does not request this class"});
      return;
    }
    const auto& live = outstanding[r];
    if (std::find(live.begin(), live.end(), p) == live.end()) {
      report.condition1_violations.push_back(
          {index, p, r, "process already left the class"});
      return;
    }
    const auto maxima = order->maximal(live);
    if (std::find(maxima.begin(), maxima.end(), p) == maxima.end()) {
      report.condition1_violations.push_back(
          {index, p, r, "process is not maximal among outstanding requesters"});
    }
  };

  for (std::size_t k = 0; k < events.size(); ++k) {
    const auto& e = events[k];
    const std::size_t index = first_event_index + k;
    if (e.type == event_type::released && e.process) {
      for (auto& [r, live] : outstanding) std::erase(live, *e.process);
    } else if (e.type == event_type::granted && e.process) {
      if (e.resource_class) {
        check_grant(index, *e.process, *e.resource_class);
      } else {
        for (auto r : model.requests_of(*e.process)) check_grant(index, *e.process, r);
      }
    }
  }
  report.condition1_ok = report.condition1_violations.empty();

  for (const auto& co : family.orders()) {
    const auto capacity = model.capacity(co.resource_class);
    for (const auto& ideal : down_sets(co.order, cap)) {
      const auto maxima = co.order.maximal(ideal);
      std::uint64_t demand = 0;
      for (auto i : maxima) demand += model.requested(i, co.resource_class);
      if (demand > capacity) {
        report.condition2_ok = false;
        report.condition2_violation =
            capacity_violation{co.resource_class, ideal, maxima, demand, capacity};
        break;
      }
    }
    if (!report.condition2_ok) break;
  }

  const auto acyclic = check_acyclic(build_priority_digraph(family));
  report.acyclic = acyclic.acyclic;
  report.cycle = acyclic.cycle;
  return report;
}

order_family orientation_as_order_family(const orientation& o,
                                         const resource_model& model) {
  const auto& g = o.base();
  if (model.classes().size() != g.edge_count()) {
    throw order_error("model has " + std::to_string(model.classes().size()) +
                      " classes but the orientation has " +
                      std::to_string(g.edge_count()) + " edges");
  }
  order_family family;
  const auto edges = g.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto r = static_cast<class_id>(i);
    const auto requesters = model.requesters(r);
    if (requesters != std::vector<process_id>{edges[i].u, edges[i].v}) {
      throw order_error("class " + std::to_string(r) +
                        " does not match edge " + std::to_string(edges[i].u) +
                        " " + std::to_string(edges[i].v));
    }
    family.set(r, strict_order::chain({o.tail(i), o.head(i)}));
  }
  return family;
}

}  // namespace sinklock
