#include "sinklock/orientation.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "sinklock/digraph.hpp"
#include "sinklock/kernels.hpp"
#include "sinklock/random.hpp"

namespace sinklock {

orientation::orientation(graph base, std::vector<bool> reversed)
    : base_(std::move(base)), reversed_(std::move(reversed)) {
  if (reversed_.size() != base_.edge_count()) {
    throw graph_error("orientation needs one direction per edge: got " +
                      std::to_string(reversed_.size()) + " for " +
                      std::to_string(base_.edge_count()) + " edges");
  }
}

vertex orientation::tail(std::size_t i) const {
  const auto& e = base_.edges()[i];
  return reversed_.at(i) ? e.v : e.u;
}

vertex orientation::head(std::size_t i) const {
  const auto& e = base_.edges()[i];
  return reversed_.at(i) ? e.u : e.v;
}

std::vector<std::pair<vertex, vertex>> orientation::arcs() const {
  std::vector<std::pair<vertex, vertex>> out;
  out.reserve(reversed_.size());
  for (std::size_t i = 0; i < reversed_.size(); ++i) {
    out.emplace_back(tail(i), head(i));
  }
  return out;
}

std::size_t orientation::out_degree(vertex v) const {
  std::size_t d = 0;
  for (const auto& inc : base_.incident(v)) d += tail(inc.edge_index) == v;
  return d;
}

orientation random_orientation(const graph& g, std::uint64_t seed,
                               std::uint64_t round) {
  std::vector<bool> reversed(g.edge_count());
  const auto edges = g.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    reversed[i] = edge_coin(seed, round, edges[i].u, edges[i].v);
  }
  return orientation(g, std::move(reversed));
}

orientation orient_toward(const graph& g, const std::vector<vertex>& targets) {
  std::vector<bool> in_target(g.vertex_count(), false);
  for (auto v : targets) in_target.at(v) = true;
  std::vector<bool> reversed(g.edge_count(), false);
  const auto edges = g.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (in_target[edges[i].u] && in_target[edges[i].v]) {
      throw graph_error("orient_toward: targets are not independent");
    }
    reversed[i] = in_target[edges[i].u];
  }
  return orientation(g, std::move(reversed));
}

sink_set sinks(const orientation& o) {
  const auto& g = o.base();
  std::vector<bool> has_out(g.vertex_count(), false);
  for (std::size_t i = 0; i < g.edge_count(); ++i) has_out[o.tail(i)] = true;
  sink_set out;
  for (vertex v = 0; v < g.vertex_count(); ++v)
    if (!has_out[v]) out.push_back(v);
  return out;
}

namespace {

adjacency_list arc_lists(const orientation& o) {
  adjacency_list out(o.base().vertex_count());
  for (const auto& [t, h] : o.arcs()) out[t].push_back(h);
  for (auto& succ : out) std::sort(succ.begin(), succ.end());
  return out;
}

exact_stats to_exact(const kernels::enumeration_counts& c) {
  exact_stats s;
  s.orientation_count = big_int(c.orientations);
  s.expected_sinks = rational(big_int(c.total_sinks), s.orientation_count);
  s.prob_positive = rational(big_int(c.with_sink), s.orientation_count);
  s.sink_histogram = c.histogram;
  return s;
}

void check_cap(const graph& g, std::size_t cap) {
  const std::size_t limit = std::min(cap, kernels::max_mask_edges);
  if (g.edge_count() > limit) {
    throw cap_exceeded("enumeration over 2^" + std::to_string(g.edge_count()) +
                       " orientations exceeds the cap of m <= " +
                       std::to_string(limit));
  }
}

}  // namespace

std::optional<std::vector<vertex>> directed_cycle(const orientation& o) {
  auto cycle = find_directed_cycle(arc_lists(o));
  if (!cycle) return std::nullopt;
  return std::vector<vertex>(cycle->begin(), cycle->end());
}

bool is_acyclic(const orientation& o) {
  return topological_order(arc_lists(o)).has_value();
}

bool is_independent_set(const graph& g, const std::vector<vertex>& set) {
  for (std::size_t i = 0; i < set.size(); ++i)
    for (std::size_t j = i + 1; j < set.size(); ++j)
      if (g.has_edge(set[i], set[j])) return false;
  return true;
}

exact_stats enumerate_exact(const graph& g, std::size_t cap) {
  check_cap(g, cap);
  return to_exact(kernels::enumerate_parallel(g));
}

exact_stats enumerate_exact_serial(const graph& g, std::size_t cap) {
  check_cap(g, cap);
  return to_exact(kernels::enumerate_serial(g));
}

std::vector<std::vector<vertex>> maximal_independent_sets(const graph& g,
                                                          std::size_t cap) {
  const std::size_t n = g.vertex_count();
  if (n > cap || n > 30) {
    throw cap_exceeded("maximal independent set enumeration over n=" +
                       std::to_string(n) + " exceeds the cap of " +
                       std::to_string(std::min<std::size_t>(cap, 30)));
  }
  std::vector<std::uint32_t> closed(n);
  for (vertex v = 0; v < n; ++v) {
    closed[v] = std::uint32_t{1} << v;
    for (const auto& inc : g.incident(v))
      closed[v] |= std::uint32_t{1} << inc.neighbor;
  }
  std::vector<std::vector<vertex>> out;
  const std::uint64_t subsets = std::uint64_t{1} << n;
  for (std::uint64_t s = 0; s < subsets; ++s) {
    const auto set = static_cast<std::uint32_t>(s);
    bool independent = true;
    std::uint32_t dominated = 0;
    for (vertex v = 0; v < n && independent; ++v) {
      if (!(set >> v & 1)) continue;
      if ((closed[v] & set) != (std::uint32_t{1} << v)) independent = false;
      dominated |= closed[v];
    }
    if (!independent) continue;
    const std::uint32_t all =
        n == 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << n) - 1;
    if (dominated != all) continue;
    std::vector<vertex> members;
    for (vertex v = 0; v < n; ++v)
      if (set >> v & 1) members.push_back(v);
    if (sinks(orient_toward(g, members)) != members) {
      throw std::logic_error("maximal independent set is not a sink set");
    }
    out.push_back(std::move(members));
  }
  std::sort(out.begin(), out.end());
  return out;
}

void write_orientation(std::ostream& out, const orientation& o) {
  write_edge_list(out, o.base());
  for (const auto& [t, h] : o.arcs()) out << t << '>' << h << '\n';
}

orientation read_orientation(std::istream& in) {
  graph g = read_edge_list(in, true);
  std::vector<bool> reversed(g.edge_count());
  std::string line;
  const auto edges = g.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (!std::getline(in, line)) {
      throw graph_error("missing direction line for edge " +
                        std::to_string(i));
    }
    std::istringstream fields(line);
    std::uint64_t t = 0, h = 0;
    char sep = 0;
    if (!(fields >> t >> sep >> h) || sep != '>') {
      throw graph_error("malformed direction line '" + line + "'");
    }
    if (t == edges[i].u && h == edges[i].v) {
      reversed[i] = false;
    } else if (t == edges[i].v && h == edges[i].u) {
      reversed[i] = true;
    } else {
      throw graph_error("direction line '" + line + "' does not match edge " +
                        std::to_string(edges[i].u) + " " +
                        std::to_string(edges[i].v));
    }
  }
  return orientation(std::move(g), std::move(reversed));
}

}  // namespace sinklock
