#include "sinklock/digraph.hpp"

#include <algorithm>
#include <functional>
#include <queue>

namespace sinklock {

std::optional<std::vector<std::size_t>> find_directed_cycle(
    const adjacency_list& out) {
  enum class mark : unsigned char { fresh, active, finished };
  const std::size_t n = out.size();
  std::vector<mark> state(n, mark::fresh);
  std::vector<std::size_t> path;
  std::vector<std::size_t> cursor;

  for (std::size_t root = 0; root < n; ++root) {
    if (state[root] != mark::fresh) continue;
    path.assign(1, root);
    cursor.assign(1, 0);
    state[root] = mark::active;
    while (!path.empty()) {
      const std::size_t v = path.back();
      if (cursor.back() < out[v].size()) {
        const std::size_t w = out[v][cursor.back()++];
        if (state[w] == mark::active) {
          auto start = std::find(path.begin(), path.end(), w);
          return std::vector<std::size_t>(start, path.end());
        }
        if (state[w] == mark::fresh) {
          state[w] = mark::active;
          path.push_back(w);
          cursor.push_back(0);
        }
      } else {
        state[v] = mark::finished;
        path.pop_back();
        cursor.pop_back();
      }
    }
  }
  return std::nullopt;
}

std::optional<std::vector<std::size_t>> topological_order(
    const adjacency_list& out) {
  const std::size_t n = out.size();
  std::vector<std::size_t> indegree(n, 0);
  for (const auto& succ : out)
    for (auto w : succ) ++indegree[w];
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>>
      ready;
  for (std::size_t v = 0; v < n; ++v)
    if (indegree[v] == 0) ready.push(v);
  std::vector<std::size_t> order;
  order.reserve(n);
  while (!ready.empty()) {
    const auto v = ready.top();
    ready.pop();
    order.push_back(v);
    for (auto w : out[v])
      if (--indegree[w] == 0) ready.push(w);
  }
  if (order.size() != n) return std::nullopt;
  return order;
}

}  // namespace sinklock
