#include <doctest.h>

#include <cmath>
#include <numeric>
#include <queue>
#include <sstream>

#include "sinklock/generators.hpp"
#include "sinklock/graph.hpp"

using namespace sinklock;

namespace {

bool connected(const graph& g) {
  if (g.vertex_count() == 0) return true;
  std::vector<bool> seen(g.vertex_count(), false);
  std::queue<vertex> q;
  q.push(0);
  seen[0] = true;
  std::size_t count = 1;
  while (!q.empty()) {
    auto v = q.front();
    q.pop();
    for (const auto& inc : g.incident(v)) {
      if (!seen[inc.neighbor]) {
        seen[inc.neighbor] = true;
        ++count;
        q.push(inc.neighbor);
      }
    }
  }
  return count == g.vertex_count();
}

}  // namespace

TEST_SUITE("graph") {

TEST_CASE("construction normalizes and sorts edges") {
  graph g(4, {{2, 1}, {0, 3}, {0, 1}});
  REQUIRE(g.edge_count() == 3);
  CHECK(g.edges()[0] == edge{0, 1});
  CHECK(g.edges()[1] == edge{0, 3});
  CHECK(g.edges()[2] == edge{1, 2});
  CHECK(g.degree(0) == 2);
  CHECK(g.degree(2) == 1);
  CHECK(g.has_edge(2, 1));
  CHECK_FALSE(g.has_edge(2, 3));
  CHECK(g.edge_index(3, 0) == 1);
  CHECK_FALSE(g.edge_index(2, 3).has_value());
  CHECK(g.max_degree() == 2);
}

TEST_CASE("construction rejects bad edges") {
  CHECK_THROWS_AS(graph(3, {{1, 1}}), graph_error);
  CHECK_THROWS_AS(graph(3, {{0, 1}, {1, 0}}), graph_error);
  CHECK_THROWS_AS(graph(3, {{0, 3}}), graph_error);
  CHECK_THROWS_AS(graph(3, {}).degree(3), std::out_of_range);
}

TEST_CASE("induced subgraph drops edges touching removed vertices") {
  const auto g = generate({graph_class::cycle, 5});
  auto h = g.induced({true, false, true, true, true});
  CHECK(h.vertex_count() == 5);
  CHECK(h.edge_count() == 3);
  CHECK_FALSE(h.has_edge(0, 1));
  CHECK(h.has_edge(0, 4));
  CHECK(h.degree(1) == 0);
}

TEST_CASE("edge list round trip and format") {
  const auto g = generate({graph_class::path, 3});
  CHECK(to_edge_list(g) == "3 2\n0 1\n1 2\n");
  CHECK(parse_edge_list(to_edge_list(g)) == g);
  const auto k = generate({graph_class::complete, 5});
  CHECK(parse_edge_list(to_edge_list(k)) == k);
}

TEST_CASE("edge list reader rejects malformed input") {
  CHECK_THROWS(parse_edge_list("3 1\n1 0\n"));          // u > v
  CHECK_THROWS(parse_edge_list("3 2\n0 1\n0 1\n"));     // duplicate
  CHECK_THROWS(parse_edge_list("3 1\n0 3\n"));          // out of range
  CHECK_THROWS(parse_edge_list("3 2\n0 1\n"));          // truncated
  CHECK_THROWS(parse_edge_list("3 1\n0 1\n1 2\n"));     // trailing content
  CHECK_THROWS(parse_edge_list("x\n"));
  CHECK_NOTHROW(parse_edge_list("1 0\n"));
}

TEST_CASE("named classes") {
  const auto p = generate({graph_class::path, 3});
  CHECK(p.edge_count() == 2);
  CHECK(p.has_edge(0, 1));
  CHECK(p.has_edge(1, 2));

  const auto s = generate({graph_class::star, 5});
  CHECK(s.degree(0) == 4);
  for (vertex v = 1; v < 5; ++v) CHECK(s.degree(v) == 1);

  const auto k = generate({graph_class::complete, 4});
  for (vertex v = 0; v < 4; ++v) CHECK(k.degree(v) == 3);
  CHECK(generate({graph_class::complete, 7}).edge_count() == 21);

  for (std::size_t n : {3, 4, 9}) {
    const auto c = generate({graph_class::cycle, n});
    CHECK(c.edge_count() == n);
    for (vertex v = 0; v < n; ++v) CHECK(c.degree(v) == 2);
  }
}

TEST_CASE("gnp with p = 1 is complete and p = 0 is edgeless") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    graph_class_spec spec{graph_class::gnp, 5};
    spec.p = 1.0;
    spec.seed = seed;
    CHECK(generate(spec) == generate({graph_class::complete, 5}));
    spec.p = 0.0;
    const auto g = generate(spec);
    CHECK(g.edge_count() == 0);
    CHECK(g.degree(3) == 0);
  }
}

TEST_CASE("gnp edge frequency matches p") {
  const std::size_t n = 30;
  const double p = 0.15;
  const double pairs = n * (n - 1) / 2.0;
  double edges = 0;
  const int samples = 400;
  for (int s = 0; s < samples; ++s) {
    graph_class_spec spec{graph_class::gnp, n};
    spec.p = p;
    spec.seed = 1000 + s;
    edges += generate(spec).edge_count();
  }
  const double freq = edges / (pairs * samples);
  const double se = std::sqrt(p * (1 - p) / (pairs * samples));
  CHECK(std::abs(freq - p) <= 4 * se);
}

TEST_CASE("trees are connected with n - 1 edges") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    for (std::size_t n : {1, 2, 3, 7, 20}) {
      graph_class_spec spec{graph_class::tree, n};
      spec.seed = seed;
      const auto t = generate(spec);
      CHECK(t.edge_count() == n - 1);
      CHECK(connected(t));
    }
  }
}

TEST_CASE("Pruefer decoding") {
  // Code (3, 3, 3) on 5 vertices: leaves 0, 1, 2 attach to 3, then 3-4.
  const auto t = tree_from_pruefer(5, {3, 3, 3});
  CHECK(t == graph(5, {{0, 3}, {1, 3}, {2, 3}, {3, 4}}));
  const auto p = tree_from_pruefer(4, {1, 2});
  CHECK(p == graph(4, {{0, 1}, {1, 2}, {2, 3}}));
}

TEST_CASE("bounded degree respects the bound") {
  for (std::size_t k : {1, 2, 3, 4}) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      graph_class_spec spec{graph_class::bounded_degree, 40};
      spec.k = k;
      spec.seed = seed;
      const auto g = generate(spec);
      CHECK(g.max_degree() <= k);
      CHECK(g.edge_count() > 0);
    }
  }
}

TEST_CASE("power-law degree sequence and wiring") {
  graph_class_spec spec{graph_class::power_law, 500};
  spec.a = 2.5;
  spec.seed = 7;
  const auto degrees = power_law_degree_sequence(spec);
  REQUIRE(degrees.size() == 500);
  CHECK(std::accumulate(degrees.begin(), degrees.end(), std::size_t{0}) % 2 == 0);
  for (auto d : degrees) {
    CHECK(d >= 1);
    CHECK(d <= 499);
  }
  const auto g = generate(spec);
  for (vertex v = 0; v < 500; ++v) CHECK(g.degree(v) <= degrees[v]);

  // Mostly degree one: the law puts 1/zeta(2.5) ~ 0.75 of the mass there.
  const auto ones = std::count(degrees.begin(), degrees.end(), 1u);
  CHECK(ones > 300);
}

TEST_CASE("configuration model erases loops and repeats") {
  const auto g = configuration_model({4, 4, 2, 2, 2}, 3);
  for (vertex v = 0; v < 5; ++v) CHECK(g.degree(v) <= 4);
  CHECK_THROWS(configuration_model({1, 2}, 0));
}

TEST_CASE("generation is deterministic in its parameters") {
  for (auto cls : {graph_class::tree, graph_class::bounded_degree,
                   graph_class::gnp, graph_class::power_law}) {
    graph_class_spec spec{cls, 25, 3, 0.2, 2.0, 99};
    CHECK(generate(spec) == generate(spec));
    auto other = spec;
    other.seed = 100;
    CHECK_FALSE(generate(spec) == generate(other));
  }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(generate({graph_class::cycle, 2}), invalid_parameter);
  CHECK_THROWS_AS(generate({graph_class::gnp, 5, 1, 1.5}), invalid_parameter);
  CHECK_THROWS_AS(generate({graph_class::power_law, 10, 1, 0, 1.5}), invalid_parameter);
  CHECK_THROWS_AS(generate({graph_class::bounded_degree, 10, 0}), invalid_parameter);
  CHECK(parse_graph_class("bounded_degree") == graph_class::bounded_degree);
  CHECK_FALSE(parse_graph_class("grid").has_value());
}

}
