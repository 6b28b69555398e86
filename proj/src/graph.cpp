#include "sinklock/graph.hpp"

#include <algorithm>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace sinklock {

graph::graph(std::size_t n, std::vector<edge> edges) : n_(n) {
  if (n > std::numeric_limits<vertex>::max()) {
    throw graph_error("vertex count too large: " + std::to_string(n));
  }
  for (auto& e : edges) {
    if (e.u == e.v) {
      throw graph_error("self-loop at vertex " + std::to_string(e.u));
    }
    if (e.u > e.v) std::swap(e.u, e.v);
    if (e.v >= n) {
      throw graph_error("edge " + std::to_string(e.u) + " " +
                        std::to_string(e.v) + " out of range for n=" +
                        std::to_string(n));
    }
  }
  std::sort(edges.begin(), edges.end());
  auto dup = std::adjacent_find(edges.begin(), edges.end());
  if (dup != edges.end()) {
    throw graph_error("duplicate edge " + std::to_string(dup->u) + " " +
                      std::to_string(dup->v));
  }
  edges_ = std::move(edges);

  std::vector<std::size_t> deg(n, 0);
  for (const auto& e : edges_) {
    ++deg[e.u];
    ++deg[e.v];
  }
  offsets_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) offsets_[v + 1] = offsets_[v] + deg[v];
  adjacency_.resize(offsets_[n]);
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const auto& e = edges_[i];
    adjacency_[fill[e.u]++] = {e.v, static_cast<std::uint32_t>(i)};
    adjacency_[fill[e.v]++] = {e.u, static_cast<std::uint32_t>(i)};
  }
  for (std::size_t v = 0; v < n; ++v) {
    std::sort(adjacency_.begin() + offsets_[v],
              adjacency_.begin() + offsets_[v + 1],
              [](const incidence& a, const incidence& b) {
                return a.neighbor < b.neighbor;
              });
  }
}

void graph::check_vertex(vertex v) const {
  if (v >= n_) {
    throw std::out_of_range("vertex " + std::to_string(v) +
                            " out of range for n=" + std::to_string(n_));
  }
}

std::span<const incidence> graph::incident(vertex v) const {
  check_vertex(v);
  return {adjacency_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
}

std::size_t graph::degree(vertex v) const {
  check_vertex(v);
  return offsets_[v + 1] - offsets_[v];
}

std::size_t graph::max_degree() const noexcept {
  std::size_t best = 0;
  for (std::size_t v = 0; v < n_; ++v) {
    best = std::max(best, offsets_[v + 1] - offsets_[v]);
  }
  return best;
}

std::optional<std::size_t> graph::edge_index(vertex a, vertex b) const {
  if (a == b || a >= n_ || b >= n_) return std::nullopt;
  if (a > b) std::swap(a, b);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), edge{a, b});
  if (it == edges_.end() || *it != edge{a, b}) return std::nullopt;
  return static_cast<std::size_t>(it - edges_.begin());
}

bool graph::has_edge(vertex a, vertex b) const {
  return edge_index(a, b).has_value();
}

graph graph::induced(const std::vector<bool>& alive) const {
  if (alive.size() != n_) {
    throw graph_error("alive mask size does not match vertex count");
  }
  std::vector<edge> kept;
  for (const auto& e : edges_) {
    if (alive[e.u] && alive[e.v]) kept.push_back(e);
  }
  return graph(n_, std::move(kept));
}

void write_edge_list(std::ostream& out, const graph& g) {
  out << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const auto& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

std::string to_edge_list(const graph& g) {
  std::ostringstream out;
  write_edge_list(out, g);
  return out.str();
}

namespace {

std::uint64_t parse_count(const std::string& token, const char* what,
                          std::size_t line) {
  if (token.empty() ||
      token.find_first_not_of("0123456789") != std::string::npos) {
    throw graph_error(std::string("line ") + std::to_string(line) +
                      ": expected " + what + ", got '" + token + "'");
  }
  return std::stoull(token);
}

}  // namespace

graph read_edge_list(std::istream& in, bool allow_trailing) {
  std::string line;
  std::size_t line_no = 0;
  auto next_tokens = [&](std::string& a, std::string& b) {
    if (!std::getline(in, line)) return false;
    ++line_no;
    std::istringstream fields(line);
    std::string extra;
    if (!(fields >> a >> b) || (fields >> extra)) {
      throw graph_error("line " + std::to_string(line_no) +
                        ": expected two fields, got '" + line + "'");
    }
    return true;
  };

  std::string a, b;
  if (!next_tokens(a, b)) throw graph_error("empty edge list");
  const auto n = parse_count(a, "vertex count", line_no);
  const auto m = parse_count(b, "edge count", line_no);

  std::vector<edge> edges;
  edges.reserve(m);
  for (std::uint64_t i = 0; i < m; ++i) {
    if (!next_tokens(a, b)) {
      throw graph_error("expected " + std::to_string(m) + " edges, got " +
                        std::to_string(i));
    }
    const auto u = parse_count(a, "vertex", line_no);
    const auto v = parse_count(b, "vertex", line_no);
    if (u >= v) {
      throw graph_error("line " + std::to_string(line_no) +
                        ": edge endpoints must satisfy u < v");
    }
    if (v >= n) {
      throw graph_error("line " + std::to_string(line_no) + ": vertex " +
                        std::to_string(v) + " out of range for n=" +
                        std::to_string(n));
    }
    edges.push_back({static_cast<vertex>(u), static_cast<vertex>(v)});
  }
  while (!allow_trailing && std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") != std::string::npos) {
      throw graph_error("trailing content after " + std::to_string(m) +
                        " edges");
    }
  }
  return graph(n, std::move(edges));
}

graph parse_edge_list(const std::string& text) {
  std::istringstream in(text);
  return read_edge_list(in);
}

}  // namespace sinklock
