#include <doctest.h>

#include <random>
#include <span>

#include "oracles.hpp"
#include "sinklock/classical_rgm.hpp"
#include "sinklock/generators.hpp"
#include "sinklock/orientation.hpp"
#include "sinklock/priority_verifier.hpp"
#include "sinklock/rgm_engine.hpp"

using namespace sinklock;

namespace {

resource_model singleton_model(std::mt19937_64& rng, std::size_t procs,
                               std::size_t classes, double p = 0.5) {
  resource_model m;
  for (class_id r = 0; r < classes; ++r) m.add_class(r, 1);
  std::bernoulli_distribution want(p);
  for (process_id i = 0; i < procs; ++i) {
    m.add_process(i);
    for (class_id r = 0; r < classes; ++r)
      if (want(rng)) m.set_request(i, r, 1);
  }
  return m;
}

std::vector<class_id> identity_order(std::size_t classes) {
  std::vector<class_id> order(classes);
  for (std::size_t r = 0; r < classes; ++r) order[r] = static_cast<class_id>(r);
  return order;
}

driven_by_report check_step(const classical_run& run, const classical_step& s) {
  std::span<const trace_event> events(run.events.events);
  return check_driven_by(s.model, s.family,
                         events.subspan(s.first_event, s.end_event - s.first_event),
                         default_down_set_cap, s.first_event);
}

}  // namespace

TEST_SUITE("priority") {

TEST_CASE("strict orders") {
  auto chain = strict_order::chain({1, 2, 3});
  CHECK(chain.less(1, 3));
  CHECK_FALSE(chain.less(3, 1));
  CHECK(chain.covers() == std::vector<process_pair>{{1, 2}, {2, 3}});
  CHECK(chain.maximal() == std::vector<process_id>{3});
  CHECK(chain.maximal({1, 2}) == std::vector<process_id>{2});

  auto closed = strict_order::from_relation({1, 2, 3}, {{1, 2}, {2, 3}});
  CHECK(closed == chain);
  CHECK_THROWS_AS(strict_order::from_relation({1, 2}, {{1, 2}, {2, 1}}), order_error);
  CHECK_THROWS_AS(strict_order::from_relation({1, 2}, {{1, 1}}), order_error);
  CHECK_THROWS_AS(strict_order::from_covers({1, 2, 3}, {{1, 2}, {2, 3}, {1, 3}}),
                  order_error);
  CHECK_THROWS_AS(strict_order::from_relation({1, 2}, {{1, 5}}), order_error);
}

TEST_CASE("priority digraph examples") {
  order_family single;
  single.set(0, strict_order::chain({1, 2, 3}));
  auto d = build_priority_digraph(single);
  CHECK(d.arcs == std::vector<process_pair>{{1, 2}, {2, 3}});
  CHECK(check_acyclic(d).acyclic);

  order_family crossed;
  crossed.set(0, strict_order::chain({1, 2}));
  crossed.set(1, strict_order::chain({2, 1}));
  auto c = check_acyclic(build_priority_digraph(crossed));
  CHECK_FALSE(c.acyclic);
  REQUIRE(c.cycle.has_value());
  auto cyc = *c.cycle;
  std::sort(cyc.begin(), cyc.end());
  CHECK(cyc == std::vector<process_id>{1, 2});

  auto empty = build_priority_digraph(order_family{});
  CHECK(empty.vertices.empty());
  CHECK(check_acyclic(empty).acyclic);
}

TEST_CASE("cycle witnesses are cycles of the digraph") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 200; ++t) {
    order_family fam;
    for (class_id r = 0; r < 4; ++r) {
      std::vector<process_id> members{0, 1, 2, 3, 4};
      std::shuffle(members.begin(), members.end(), rng);
      members.resize(2 + rng() % 3);
      fam.set(r, strict_order::chain(members));
    }
    const auto d = build_priority_digraph(fam);
    const auto res = check_acyclic(d);
    if (res.acyclic) continue;
    const auto& w = *res.cycle;
    for (std::size_t i = 0; i < w.size(); ++i) {
      const process_pair arc{w[i], w[(i + 1) % w.size()]};
      CHECK(std::find(d.arcs.begin(), d.arcs.end(), arc) != d.arcs.end());
    }
  }
}

TEST_CASE("condition two on a single class") {
  resource_model m;
  m.add_class(0, 1);
  m.add_process(1);
  m.add_process(2);
  m.set_request(1, 0, 1);
  m.set_request(2, 0, 1);

  order_family chain;
  chain.set(0, strict_order::chain({1, 2}));
  auto ok = check_driven_by(m, chain, {});
  CHECK(ok.condition2_ok);
  CHECK(ok.ok());

  order_family anti;
  anti.set(0, strict_order::from_relation({1, 2}, {}));
  auto bad = check_driven_by(m, anti, {});
  CHECK_FALSE(bad.condition2_ok);
  REQUIRE(bad.condition2_violation.has_value());
  CHECK(bad.condition2_violation->demand == 2);
  CHECK(bad.condition2_violation->capacity == 1);

  // Two units make room for both maxima.
  resource_model wide;
  wide.add_class(0, 2);
  wide.add_process(1);
  wide.add_process(2);
  wide.set_request(1, 0, 1);
  wide.set_request(2, 0, 1);
  CHECK(check_driven_by(wide, anti, {}).ok());
}

TEST_CASE("condition one") {
  resource_model m;
  m.add_class(0, 1);
  m.add_process(1);
  m.add_process(2);
  m.set_request(1, 0, 1);
  m.set_request(2, 0, 1);
  order_family fam;
  fam.set(0, strict_order::chain({1, 2}));

  std::vector<trace_event> good{trace_event::granted_class(1, 2, 0),
                                trace_event::released(1, 2),
                                trace_event::granted_class(1, 1, 0)};
  CHECK(check_driven_by(m, fam, good).condition1_ok);

  std::vector<trace_event> bad{trace_event::granted_class(1, 1, 0)};
  auto r = check_driven_by(m, fam, bad, default_down_set_cap, 7);
  CHECK_FALSE(r.condition1_ok);
  REQUIRE(r.condition1_violations.size() == 1);
  CHECK(r.condition1_violations[0].event_index == 7);
  CHECK(r.condition1_violations[0].process == 1);
}

TEST_CASE("family must match the model") {
  resource_model m;
  m.add_class(0, 1);
  m.add_process(1);
  m.add_process(2);
  m.set_request(1, 0, 1);
  m.set_request(2, 0, 1);
  order_family fam;
  fam.set(0, strict_order::chain({1}));
  CHECK_THROWS_AS(check_driven_by(m, fam, {}), order_error);
}

TEST_CASE("down-sets equal peel-reachable sets") {
  std::mt19937_64 rng(32);
  for (int t = 0; t < 150; ++t) {
    const std::size_t size = 1 + rng() % 10;
    std::vector<process_id> ground(size);
    for (std::size_t i = 0; i < size; ++i) ground[i] = static_cast<process_id>(i * 3);
    std::vector<process_pair> rel;
    std::bernoulli_distribution coin(0.3);
    for (std::size_t a = 0; a < size; ++a)
      for (std::size_t b = a + 1; b < size; ++b)
        if (coin(rng)) rel.push_back({ground[a], ground[b]});
    auto o = strict_order::from_relation(ground, rel);
    auto ideals = down_sets(o);
    std::set<std::vector<process_id>> got(ideals.begin(), ideals.end());
    CHECK(got.size() == ideals.size());
    CHECK(got == oracle::down_sets_by_subsets(o));
    CHECK(got == oracle::peel_reachable(o));
  }
  auto chain = strict_order::chain({5, 6, 7});
  CHECK(down_sets(chain).size() == 4);
  CHECK_THROWS_AS(down_sets(strict_order::chain({1, 2, 3}), 2), cap_exceeded);
}

TEST_CASE("orientations as order families") {
  const auto k2 = generate({graph_class::complete, 2});
  const auto model = workload_from_graph(k2);
  const orientation forward(k2, {false});
  auto fam = orientation_as_order_family(forward, model);
  REQUIRE(fam.orders().size() == 1);
  CHECK(fam.orders()[0].order.less(0, 1));
  CHECK(build_priority_digraph(fam).arcs == std::vector<process_pair>{{0, 1}});

  const auto k3 = generate({graph_class::complete, 3});
  std::vector<bool> rev(3);
  // 0 -> 1, 1 -> 2, 2 -> 0 (edge {0, 2} reversed)
  rev[*k3.edge_index(0, 2)] = true;
  const orientation cyclic(k3, rev);
  auto res = check_acyclic(
      build_priority_digraph(orientation_as_order_family(cyclic, workload_from_graph(k3))));
  CHECK_FALSE(res.acyclic);
  CHECK(res.cycle.has_value());

  std::mt19937_64 rng(33);
  for (int t = 0; t < 200; ++t) {
    const auto g = oracle::random_small_graph(rng, 8, 14);
    const auto o = random_orientation(g, rng(), 1);
    const auto f = orientation_as_order_family(o, workload_from_graph(g));
    CHECK(check_acyclic(build_priority_digraph(f)).acyclic == is_acyclic(o));
  }
}

TEST_CASE("order family JSON") {
  order_family fam;
  fam.set(3, strict_order::chain({4, 1, 9}));
  fam.set(0, strict_order::from_relation({1, 2, 5}, {{1, 5}}));
  const auto j = to_json(fam);
  CHECK(j[0].contains("class_id"));
  CHECK(j[0].contains("ground"));
  CHECK(j[0].contains("covers"));
  CHECK(order_family_from_json(nlohmann::json::parse(j.dump())) == fam);
}

TEST_CASE("classical waiting sets") {
  resource_model m;
  m.add_class(0, 1);
  m.add_class(1, 1);
  m.add_process(1);
  m.add_process(2);
  for (process_id i : {1, 2})
    for (class_id r : {0, 1}) m.set_request(i, r, 1);
  const std::vector<class_id> order{0, 1};
  auto c = waiting_sets(m, order);
  CHECK(c[1] == std::vector<process_id>{1, 2});
  CHECK(c[0].empty());
  m.grant(2, 1, 1);
  c = waiting_sets(m, order);
  CHECK(c[1] == std::vector<process_id>{1});
  CHECK(c[0] == std::vector<process_id>{2});
  // 2 waits lower, so it ranks above 1 in both classes.
  auto fam = classical_order_family(m, order);
  CHECK(fam.find(1)->less(1, 2));
  CHECK(fam.find(0)->less(1, 2));
}

TEST_CASE("classical strategy: two processes, two classes") {
  resource_model m;
  m.add_class(0, 1);
  m.add_class(1, 1);
  m.add_process(1);
  m.add_process(2);
  for (process_id i : {1, 2})
    for (class_id r : {0, 1}) m.set_request(i, r, 1);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto run = classical_linear_order_rgm(m, {0, 1}, seed);
    CHECK(run.status == run_status::complete);
    for (const auto& s : run.steps) CHECK(check_step(run, s).ok());
  }
}

TEST_CASE("classical strategy: one process completes in one pass") {
  resource_model m;
  for (class_id r = 0; r < 3; ++r) m.add_class(r, 2);
  m.add_process(4);
  m.set_request(4, 0, 2);
  m.set_request(4, 2, 1);
  auto run = classical_linear_order_rgm(m, {0, 1, 2}, 1);
  CHECK(run.status == run_status::complete);
  std::size_t grants = 0;
  for (const auto& e : run.events.events) grants += e.type == event_type::granted;
  CHECK(grants == 2);
}

TEST_CASE("classical strategy: ten processes, five classes") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    std::mt19937_64 rng(seed);
    auto m = singleton_model(rng, 10, 5);
    auto run = classical_linear_order_rgm(m, identity_order(5), seed);
    CHECK(run.status == run_status::complete);
    for (const auto& s : run.steps) {
      auto rep = check_step(run, s);
      CHECK(rep.condition1_ok);
      CHECK(rep.condition2_ok);
      CHECK(rep.acyclic);
    }
  }
}

TEST_CASE("classical strategy with multi-unit classes") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    std::mt19937_64 rng(seed + 500);
    resource_model m;
    for (class_id r = 0; r < 4; ++r) m.add_class(r, 3);
    for (process_id i = 0; i < 6; ++i) {
      m.add_process(i);
      for (class_id r = 0; r < 4; ++r)
        if (rng() % 2) m.set_request(i, r, 1 + rng() % 3);
    }
    auto run = classical_linear_order_rgm(m, {2, 0, 3, 1}, seed);
    CHECK(run.status == run_status::complete);
    for (const auto& s : run.steps) CHECK(check_step(run, s).ok());
  }
}

TEST_CASE("schedule oracle finds the crossed-order deadlock") {
  resource_model m;
  m.add_class(0, 1);
  m.add_class(1, 1);
  m.add_process(1);
  m.add_process(2);
  for (process_id i : {1, 2})
    for (class_id r : {0, 1}) m.set_request(i, r, 1);
  order_family crossed;
  crossed.set(0, strict_order::chain({1, 2}));
  crossed.set(1, strict_order::chain({2, 1}));
  auto rep = check_driven_by(m, crossed, {});
  CHECK(rep.condition2_ok);
  CHECK_FALSE(rep.acyclic);
  CHECK(oracle::explore_schedules(m, crossed).stuck_reachable);

  order_family aligned;
  aligned.set(0, strict_order::chain({1, 2}));
  aligned.set(1, strict_order::chain({1, 2}));
  CHECK(check_driven_by(m, aligned, {}).ok());
  CHECK_FALSE(oracle::explore_schedules(m, aligned).stuck_reachable);
}

TEST_CASE("acyclic driven families never get stuck") {
  std::mt19937_64 rng(34);
  std::size_t checked = 0;
  for (int t = 0; t < 150; ++t) {
    auto m = singleton_model(rng, 2 + rng() % 4, 1 + rng() % 4);
    std::vector<process_id> rank(m.processes());
    std::shuffle(rank.begin(), rank.end(), rng);
    const bool global = rng() % 2;
    order_family fam;
    for (auto r : m.classes()) {
      auto members = m.requesters(r);
      if (members.empty()) continue;
      if (global) {
        std::sort(members.begin(), members.end(), [&](process_id a, process_id b) {
          return std::find(rank.begin(), rank.end(), a) <
                 std::find(rank.begin(), rank.end(), b);
        });
      } else {
        std::shuffle(members.begin(), members.end(), rng);
      }
      fam.set(r, strict_order::chain(members));
    }
    auto rep = check_driven_by(m, fam, {});
    if (!rep.ok()) continue;
    ++checked;
    CHECK_FALSE(oracle::explore_schedules(m, fam).stuck_reachable);
  }
  CHECK(checked > 50);
}

}
