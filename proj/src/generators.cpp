#include "sinklock/generators.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>
#include <unordered_set>

#include "sinklock/random.hpp"

namespace sinklock {

namespace {

constexpr std::string_view class_names[] = {
    "path", "star", "tree", "cycle", "complete", "bounded_degree", "gnp",
    "power_law"};

std::uint64_t pair_key(vertex u, vertex v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

std::vector<std::size_t> draw_power_law_degrees(std::size_t n, double a,
                                                stream_rng& rng) {
  std::vector<double> cumulative(n - 1);
  double total = 0.0;
  for (std::size_t d = 1; d < n; ++d) {
    total += std::pow(static_cast<double>(d), -a);
    cumulative[d - 1] = total;
  }
  std::vector<std::size_t> degrees(n);
  for (auto& d : degrees) {
    const double target = rng.unit() * total;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), target);
    if (it == cumulative.end()) --it;
    d = static_cast<std::size_t>(it - cumulative.begin()) + 1;
  }
  std::size_t sum = 0;
  for (auto d : degrees) sum += d;
  if (sum % 2 == 1) {
    auto it = std::find_if(degrees.begin(), degrees.end(),
                           [n](std::size_t d) { return d < n - 1; });
    if (it == degrees.end()) it = degrees.begin();
    ++*it;
  }
  return degrees;
}

graph wire_stubs(const std::vector<std::size_t>& degrees, stream_rng& rng) {
  std::vector<vertex> stubs;
  for (std::size_t v = 0; v < degrees.size(); ++v) {
    stubs.insert(stubs.end(), degrees[v], static_cast<vertex>(v));
  }
  for (std::size_t i = stubs.size(); i > 1; --i) {
    std::swap(stubs[i - 1], stubs[rng.below(i)]);
  }
  std::unordered_set<std::uint64_t> seen;
  std::vector<edge> edges;
  for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
    const vertex u = stubs[i];
    const vertex v = stubs[i + 1];
    if (u == v) continue;
    if (!seen.insert(pair_key(u, v)).second) continue;
    edges.push_back({std::min(u, v), std::max(u, v)});
  }
  return graph(degrees.size(), std::move(edges));
}

graph make_gnp(std::size_t n, double p, stream_rng& rng) {
  std::vector<edge> edges;
  if (p <= 0.0 || n < 2) return graph(n, {});
  if (p >= 1.0) {
    for (vertex u = 0; u < n; ++u)
      for (vertex v = u + 1; v < n; ++v) edges.push_back({u, v});
    return graph(n, std::move(edges));
  }
  // Geometric skipping over the pairs (u, v), u < v, in row order.
  const double log_q = std::log1p(-p);
  std::int64_t v = 1;
  std::int64_t w = -1;
  const auto nn = static_cast<std::int64_t>(n);
  while (v < nn) {
    const double r = rng.unit();
    w += 1 + static_cast<std::int64_t>(std::floor(std::log1p(-r) / log_q));
    while (w >= v && v < nn) {
      w -= v;
      ++v;
    }
    if (v < nn) {
      edges.push_back({static_cast<vertex>(w), static_cast<vertex>(v)});
    }
  }
  return graph(n, std::move(edges));
}

graph make_bounded_degree(std::size_t n, std::size_t k, stream_rng& rng) {
  std::vector<edge> edges;
  if (n < 2) return graph(n, {});
  const std::size_t target = std::min(n * k / 2, n * (n - 1) / 2);
  const std::size_t budget = 50 * n * k + 1000;
  std::vector<std::size_t> deg(n, 0);
  std::unordered_set<std::uint64_t> seen;
  for (std::size_t proposal = 0; proposal < budget && edges.size() < target;
       ++proposal) {
    const auto u = static_cast<vertex>(rng.below(n));
    const auto v = static_cast<vertex>(rng.below(n));
    if (u == v || deg[u] >= k || deg[v] >= k) continue;
    if (!seen.insert(pair_key(u, v)).second) continue;
    ++deg[u];
    ++deg[v];
    edges.push_back({std::min(u, v), std::max(u, v)});
  }
  return graph(n, std::move(edges));
}

}  // namespace

std::string_view to_string(graph_class c) noexcept {
  return class_names[static_cast<int>(c)];
}

std::optional<graph_class> parse_graph_class(std::string_view name) noexcept {
  for (std::size_t i = 0; i < std::size(class_names); ++i) {
    if (class_names[i] == name) return static_cast<graph_class>(i);
  }
  return std::nullopt;
}

void validate(const graph_class_spec& spec) {
  if (spec.n < 1) throw invalid_parameter("n must be >= 1");
  switch (spec.kind) {
    case graph_class::cycle:
      if (spec.n < 3) {
        throw invalid_parameter("cycle requires n >= 3, got n=" +
                                std::to_string(spec.n));
      }
      break;
    case graph_class::bounded_degree:
      if (spec.k < 1) throw invalid_parameter("bounded_degree requires k >= 1");
      break;
    case graph_class::gnp:
      if (!(spec.p >= 0.0 && spec.p <= 1.0)) {
        throw invalid_parameter("gnp requires 0 <= p <= 1, got p=" +
                                std::to_string(spec.p));
      }
      break;
    case graph_class::power_law:
      if (!(spec.a >= 2.0)) {
        throw invalid_parameter("power_law requires a >= 2, got a=" +
                                std::to_string(spec.a));
      }
      if (spec.n < 2) throw invalid_parameter("power_law requires n >= 2");
      break;
    default:
      break;
  }
}

graph tree_from_pruefer(std::size_t n, const std::vector<vertex>& code) {
  if (n < 2) return graph(n, {});
  if (code.size() != n - 2) {
    throw invalid_parameter("Pruefer code must have length n-2");
  }
  std::vector<std::size_t> deg(n, 1);
  for (auto c : code) {
    if (c >= n) throw invalid_parameter("Pruefer code entry out of range");
    ++deg[c];
  }
  std::priority_queue<vertex, std::vector<vertex>, std::greater<>> leaves;
  for (vertex v = 0; v < n; ++v)
    if (deg[v] == 1) leaves.push(v);
  std::vector<edge> edges;
  edges.reserve(n - 1);
  for (auto c : code) {
    const vertex leaf = leaves.top();
    leaves.pop();
    edges.push_back({std::min(leaf, c), std::max(leaf, c)});
    if (--deg[c] == 1) leaves.push(c);
  }
  const vertex a = leaves.top();
  leaves.pop();
  const vertex b = leaves.top();
  edges.push_back({std::min(a, b), std::max(a, b)});
  return graph(n, std::move(edges));
}

std::vector<std::size_t> power_law_degree_sequence(
    const graph_class_spec& spec) {
  validate(spec);
  if (spec.kind != graph_class::power_law) {
    throw invalid_parameter("degree sequence requested for non-power-law class");
  }
  stream_rng rng(spec.seed);
  return draw_power_law_degrees(spec.n, spec.a, rng);
}

graph configuration_model(const std::vector<std::size_t>& degrees,
                          std::uint64_t seed) {
  std::size_t total = 0;
  for (auto d : degrees) {
    if (d >= degrees.size()) throw invalid_parameter("degree exceeds n-1");
    total += d;
  }
  if (total % 2 != 0) throw invalid_parameter("degree sum must be even");
  stream_rng rng(seed);
  return wire_stubs(degrees, rng);
}

graph generate(const graph_class_spec& spec) {
  validate(spec);
  const std::size_t n = spec.n;
  std::vector<edge> edges;
  switch (spec.kind) {
    case graph_class::path:
      for (vertex v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1});
      return graph(n, std::move(edges));
    case graph_class::star:
      for (vertex v = 1; v < n; ++v) edges.push_back({0, v});
      return graph(n, std::move(edges));
    case graph_class::cycle:
      for (vertex v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1});
      edges.push_back({0, static_cast<vertex>(n - 1)});
      return graph(n, std::move(edges));
    case graph_class::complete:
      for (vertex u = 0; u < n; ++u)
        for (vertex v = u + 1; v < n; ++v) edges.push_back({u, v});
      return graph(n, std::move(edges));
    case graph_class::tree: {
      stream_rng rng(spec.seed);
      std::vector<vertex> code(n >= 2 ? n - 2 : 0);
      for (auto& c : code) c = static_cast<vertex>(rng.below(n));
      return tree_from_pruefer(n, code);
    }
    case graph_class::bounded_degree: {
      stream_rng rng(spec.seed);
      return make_bounded_degree(n, spec.k, rng);
    }
    case graph_class::gnp: {
      stream_rng rng(spec.seed);
      return make_gnp(n, spec.p, rng);
    }
    case graph_class::power_law: {
      stream_rng rng(spec.seed);
      auto degrees = draw_power_law_degrees(n, spec.a, rng);
      return wire_stubs(degrees, rng);
    }
  }
  throw invalid_parameter("unknown graph class");
}

}  // namespace sinklock
