#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sinklock {

using vertex = std::uint32_t;

/// Undirected edge, stored with u < v.
struct edge {
  vertex u = 0;
  vertex v = 0;
  auto operator<=>(const edge&) const = default;
};

class graph_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct incidence {
  vertex neighbor;
  std::uint32_t edge_index;
};

/// Simple undirected graph on vertices 0..n-1. Immutable after
/// construction; edges are kept in lexicographic order and that order
/// defines edge indices everywhere else in the library.
class graph {
 public:
  graph() = default;

  /// Endpoints may be given in either order. Throws graph_error on a
  /// self-loop, a duplicate edge or an endpoint >= n.
  graph(std::size_t n, std::vector<edge> edges);

  static graph edgeless(std::size_t n) { return graph(n, {}); }

  std::size_t vertex_count() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::span<const edge> edges() const noexcept { return edges_; }

  /// Neighbors of v with the index of the connecting edge, by neighbor id.
  std::span<const incidence> incident(vertex v) const;

  std::size_t degree(vertex v) const;
  std::size_t max_degree() const noexcept;

  bool has_edge(vertex a, vertex b) const;
  std::optional<std::size_t> edge_index(vertex a, vertex b) const;

  /// Same vertex set; keeps only edges whose endpoints are both alive.
  graph induced(const std::vector<bool>& alive) const;

  bool operator==(const graph& other) const {
    return n_ == other.n_ && edges_ == other.edges_;
  }

 private:
  void check_vertex(vertex v) const;

  std::size_t n_ = 0;
  std::vector<edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<incidence> adjacency_;
};

/// Edge-list text format: "n m" then m lines "u v" with u < v.
void write_edge_list(std::ostream& out, const graph& g);
std::string to_edge_list(const graph& g);

/// Rejects malformed headers, duplicate edges, out-of-range endpoints,
/// self-loops and lines with u >= v. With allow_trailing the stream is left
/// positioned after the last edge line instead of requiring end of input.
graph read_edge_list(std::istream& in, bool allow_trailing = false);
graph parse_edge_list(const std::string& text);

}  // namespace sinklock
