// Acceptance run: one line per criterion, non-zero exit when any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <span>
#include <sstream>
#include <string>

#include "injections.hpp"
#include "oracles.hpp"
#include "sinklock/analytics.hpp"
#include "sinklock/classical_rgm.hpp"
#include "sinklock/dist_sim.hpp"
#include "sinklock/generators.hpp"
#include "sinklock/orientation.hpp"
#include "sinklock/priority_verifier.hpp"
#include "sinklock/rgm_engine.hpp"
#include "sinklock/trace_verifier.hpp"

using namespace sinklock;

namespace {

struct outcome {
  bool pass = false;
  std::string detail;
};

rational pow2_inv(std::size_t e) { return inverse_power_of_two(static_cast<unsigned>(e)); }

rational degree_sum(const graph& g) {
  rational s = 0;
  for (vertex v = 0; v < g.vertex_count(); ++v) s += pow2_inv(g.degree(v));
  return s;
}

// 1. Enumeration equals the closed forms exactly.
outcome exact_closed_forms() {
  std::size_t compared = 0, wrong = 0;
  std::ostringstream bad;
  auto expect = [&](const std::string& what, const rational& got, const rational& want) {
    ++compared;
    if (got != want) {
      ++wrong;
      bad << ' ' << what << " got " << got << " want " << want;
    }
  };
  for (std::size_t n = 3; n <= 10; ++n) {
    const rational N(static_cast<long>(n));
    struct row {
      graph_class cls;
      rational e, pr;
    };
    std::vector<row> rows{
        {graph_class::path, (N + 2) / 4, 1},
        {graph_class::star, (N - 1) / 2 + pow2_inv(n - 1), 1},
        {graph_class::cycle, N / 4, 1 - pow2_inv(n - 1)},
    };
    if (n <= 6) rows.push_back({graph_class::complete, N * pow2_inv(n - 1), N * pow2_inv(n - 1)});
    for (const auto& r : rows) {
      const graph_class_spec spec{r.cls, n};
      const auto stats = enumerate_exact(generate(spec));
      const std::string tag = std::string(to_string(r.cls)) + std::to_string(n);
      expect(tag + ".E", stats.expected_sinks, r.e);
      expect(tag + ".Pr", stats.prob_positive, r.pr);
      expect(tag + ".E(cf)", *expected_sinks_closed_form(spec).exact, r.e);
      expect(tag + ".Pr(cf)", *prob_positive_closed_form(spec).exact, r.pr);
    }
  }
  return {wrong == 0, std::to_string(compared) + " rational comparisons, " +
                          std::to_string(wrong) + " mismatches" + bad.str()};
}

// 2. Degree-sum identity on mixed random graphs.
outcome degree_sum_identity() {
  std::mt19937_64 rng(2024);
  const graph_class kinds[] = {graph_class::path, graph_class::star, graph_class::tree,
                               graph_class::cycle, graph_class::complete,
                               graph_class::bounded_degree, graph_class::gnp,
                               graph_class::power_law};
  std::size_t checked = 0, wrong = 0, max_edges = 0;
  std::uint64_t seed = 0;
  while (checked < 200) {
    graph_class_spec spec;
    spec.kind = kinds[rng() % 8];
    spec.n = 2 + rng() % 15;
    spec.k = 1 + rng() % 4;
    spec.p = 0.1 + 0.5 * static_cast<double>(rng() % 100) / 100.0;
    spec.a = 2.0 + static_cast<double>(rng() % 20) / 10.0;
    spec.seed = seed++;
    if (spec.kind == graph_class::cycle && spec.n < 3) continue;
    const auto g = generate(spec);
    if (g.edge_count() > 16) continue;
    ++checked;
    max_edges = std::max(max_edges, g.edge_count());
    if (enumerate_exact(g).expected_sinks != degree_sum(g)) ++wrong;
  }
  return {wrong == 0, std::to_string(checked) + " graphs (up to " + std::to_string(max_edges) +
                          " edges), " + std::to_string(wrong) + " mismatches"};
}

// 3. Monte Carlo within 4 standard errors of the exact values.
outcome monte_carlo_consistency() {
  const std::vector<graph_class_spec> specs{{graph_class::path, 10}, {graph_class::star, 10},
                                            {graph_class::cycle, 10}, {graph_class::complete, 6}};
  std::size_t total = 0, outside = 0, fixed_outside = 0;
  for (const auto& spec : specs) {
    const auto g = generate(spec);
    const auto exact = enumerate_exact(g);
    const double e = to_double(exact.expected_sinks);
    const double pr = to_double(exact.prob_positive);
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
      const auto mc = monte_carlo(g, 100'000, seed);
      for (auto [report, target] : {std::pair{mc.expected_sinks, e}, std::pair{mc.prob_positive, pr}}) {
        ++total;
        const bool off = std::abs(report.estimate - target) > 4 * report.standard_error;
        outside += off;
        if (seed == 1) fixed_outside += off;
      }
    }
  }
  const double rate = static_cast<double>(outside) / total;
  std::ostringstream d;
  d << "fixed seed: " << fixed_outside << " of 8 outside; over 50 seeds: " << outside << " of "
    << total << " outside 4 SE (rate " << rate << ", limit 0.01)";
  return {fixed_outside == 0 && rate <= 0.01, d.str()};
}

// 4. Bounded-degree and power-law bounds.
outcome bound_validity() {
  std::size_t checked = 0, failed = 0;
  std::ostringstream bad;
  for (std::size_t k : {2, 3, 4}) {
    const std::size_t n = 50;
    const std::size_t ind = (n + k) / (k + 1);
    const double pr_bound = 1.0 - std::pow(1.0 - std::ldexp(1.0, -static_cast<int>(k)),
                                           static_cast<double>(ind));
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      graph_class_spec spec{graph_class::bounded_degree, n, k, 0, 2, seed};
      const auto g = generate(spec);
      ++checked;
      const bool e_ok = degree_sum(g) >= rational(static_cast<long>(n)) * pow2_inv(k);
      const auto mc = monte_carlo(g, 10'000, seed);
      const bool pr_ok =
          mc.prob_positive.estimate >= pr_bound - 4 * mc.prob_positive.standard_error;
      if (!e_ok || !pr_ok) {
        ++failed;
        bad << " B(50," << k << ") seed " << seed;
      }
    }
  }
  for (double a : {2.0, 3.0}) {
    const std::size_t n = 1000;
    const double bound = n / (2.0 * delta(a, n));
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      graph_class_spec spec{graph_class::power_law, n, 1, 0, a, seed};
      ++checked;
      if (to_double(degree_sum(generate(spec))) < bound) {
        ++failed;
        bad << " P(1000," << a << ") seed " << seed;
      }
    }
  }
  return {failed == 0, std::to_string(checked) + " instances, " + std::to_string(failed) +
                           " violations" + bad.str()};
}

// 5. G(n, p) approximation.
outcome gnp_approximation() {
  const std::size_t n = 200;
  const double p = 0.02;
  const double target = n / std::exp(mean_degree(n, p) / 2.0);
  double sum = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    graph_class_spec spec{graph_class::gnp, n, 1, p, 2, seed};
    sum += monte_carlo(generate(spec), 10'000, seed).expected_sinks.estimate;
  }
  const double mean = sum / 20;
  const double rel = std::abs(mean - target) / target;
  std::ostringstream d;
  d << "mean over 20 graphs " << mean << " vs n/e^(z/2) = " << target << " (relative error "
    << rel << ", limit 0.05)";
  return {rel <= 0.05, d.str()};
}

// 6. Driven-by conditions and acyclic priority digraphs on every step, and
// rejection of each injected violation.
outcome priority_pipeline() {
  std::size_t runs = 0, bad_runs = 0, steps = 0;
  for (auto spec : {graph_class_spec{graph_class::path, 8},
                    graph_class_spec{graph_class::cycle, 8},
                    graph_class_spec{graph_class::bounded_degree, 12, 3}}) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      spec.seed = seed;
      const auto g = generate(spec);
      const auto run = simulate_random_orientation_rgm(g, seed, default_max_rounds(g));
      const auto rep = verify_rgm_trace(g, run.events);
      ++runs;
      steps += rep.round_reports.size();
      if (!rep.ok() || !rep.complete || rep.round_reports.size() != run.rounds) ++bad_runs;
    }
  }
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    std::mt19937_64 rng(seed);
    resource_model m;
    for (class_id r = 0; r < 5; ++r) m.add_class(r, 1);
    for (process_id i = 0; i < 10; ++i) {
      m.add_process(i);
      for (class_id r = 0; r < 5; ++r)
        if (rng() % 2) m.set_request(i, r, 1);
    }
    const auto run = classical_linear_order_rgm(m, {0, 1, 2, 3, 4}, seed);
    ++runs;
    bool ok = run.status == run_status::complete;
    std::span<const trace_event> events(run.events.events);
    for (const auto& s : run.steps) {
      ++steps;
      ok = ok && check_driven_by(s.model, s.family,
                                 events.subspan(s.first_event, s.end_event - s.first_event))
                     .ok();
    }
    if (!ok) ++bad_runs;
  }

  // Injections.
  std::vector<std::string> missed;
  const auto c8 = generate({graph_class::cycle, 8});
  const auto base = simulate_random_orientation_rgm(c8, 1, 80);
  const auto pair = inject::find_pair(c8, base.granted);
  if (!pair || verify_rgm_trace(c8, inject::grant_to_non_sink(base.events, *pair)).ok())
    missed.push_back("grant to a non-sink");
  if (!pair || verify_rgm_trace(c8, inject::adjacent_grants(base.events, *pair)).ok())
    missed.push_back("adjacent grants");

  resource_model m;
  for (class_id r = 0; r < 3; ++r) m.add_class(r, 1);
  for (process_id i = 0; i < 4; ++i) {
    m.add_process(i);
    for (class_id r = 0; r < 3; ++r) m.set_request(i, r, 1);
  }
  const auto classical = classical_linear_order_rgm(m, {0, 1, 2}, 5);
  const auto& step = classical.steps.front();
  const auto grant = inject::non_maximal_grant(step);
  if (!grant || check_driven_by(step.model, step.family, *grant).condition1_ok)
    missed.push_back("non-maximal grant");
  const auto cyclic = inject::cyclic_family(step);
  if (!cyclic || check_driven_by(step.model, *cyclic, {}).acyclic)
    missed.push_back("cyclic family");

  std::ostringstream d;
  d << runs << " runs, " << steps << " steps checked, " << bad_runs << " failing; "
    << 4 - missed.size() << " of 4 injected violations rejected";
  for (const auto& m : missed) d << " [missed: " << m << "]";
  return {bad_runs == 0 && missed.empty(), d.str()};
}

// 7. Acyclic driven families never reach a stuck state.
outcome converse_check() {
  std::mt19937_64 rng(7);
  std::size_t eligible = 0, counterexamples = 0, stuck_when_failing = 0, failing = 0;
  for (int t = 0; t < 200; ++t) {
    resource_model m;
    const std::size_t procs = 1 + rng() % 5;
    const std::size_t classes = 1 + rng() % 4;
    for (class_id r = 0; r < classes; ++r) m.add_class(r, 1);
    for (process_id i = 0; i < procs; ++i) {
      m.add_process(i);
      for (class_id r = 0; r < classes; ++r)
        if (rng() % 2) m.set_request(i, r, 1);
    }
    std::vector<process_id> rank(m.processes());
    std::shuffle(rank.begin(), rank.end(), rng);
    const auto mode = rng() % 3;  // 0 ranked chains, 1 free chains, 2 some antichain
    order_family fam;
    for (auto r : m.classes()) {
      auto members = m.requesters(r);
      if (members.empty()) continue;
      if (mode == 0) {
        std::sort(members.begin(), members.end(), [&](process_id a, process_id b) {
          return std::find(rank.begin(), rank.end(), a) < std::find(rank.begin(), rank.end(), b);
        });
        fam.set(r, strict_order::chain(members));
      } else if (mode == 1 || members.size() < 2) {
        std::shuffle(members.begin(), members.end(), rng);
        fam.set(r, strict_order::chain(members));
      } else {
        fam.set(r, strict_order::from_relation(members, {}));
      }
    }
    const bool passes = check_driven_by(m, fam, {}).ok();
    const bool stuck = oracle::explore_schedules(m, fam).stuck_reachable;
    if (passes) {
      ++eligible;
      counterexamples += stuck;
    } else {
      ++failing;
      stuck_when_failing += stuck;
    }
  }
  std::ostringstream d;
  d << "200 instances, " << eligible << " pass both conditions with acyclic digraphs, "
    << counterexamples << " counterexamples (" << stuck_when_failing << " of " << failing
    << " failing instances can deadlock)";
  return {counterexamples == 0 && eligible > 0, d.str()};
}

// 8. Distributed runs match the centralized engine.
outcome distributed_equivalence() {
  const std::vector<graph_class_spec> graphs{
      {graph_class::path, 8},        {graph_class::cycle, 8},
      {graph_class::complete, 5},    {graph_class::star, 7},
      {graph_class::bounded_degree, 12, 3, 0, 2, 3},
      {graph_class::tree, 10, 1, 0, 2, 4},
      {graph_class::gnp, 12, 1, 0.3, 2, 5},
      {graph_class::power_law, 15, 1, 0, 2.5, 6},
      {graph_class::cycle, 16},      {graph_class::path, 16}};
  std::size_t cases = 0, mismatched = 0, runs = 0;
  for (const auto& spec : graphs) {
    const auto g = generate(spec);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      ++cases;
      const auto central = simulate_random_orientation_rgm(g, seed, default_max_rounds(g));
      // Expected counts from the centralized rounds.
      std::map<std::uint64_t, std::array<std::uint64_t, 3>> want;
      std::vector<bool> alive(g.vertex_count(), true);
      for (std::size_t r = 0; r < central.granted.size(); ++r) {
        std::array<std::uint64_t, 3> c{0, 0, 0};
        for (const auto& e : g.edges())
          if (alive[e.u] && alive[e.v]) ++c[0], ++c[1];
        for (auto s : central.granted[r])
          for (const auto& inc : g.incident(s)) c[2] += alive[inc.neighbor];
        for (auto s : central.granted[r]) alive[s] = false;
        if (c[0] + c[2] > 0) want[r + 1] = c;
      }
      bool ok = true;
      for (const auto* d : {"zero", "constant:1", "uniform:0:5", "uniform:0.1:0.2"}) {
        ++runs;
        const auto dist = dist_simulate(g, seed, delay_spec::parse(d, seed + 17),
                                        default_max_rounds(g));
        ok = ok && dist.status == central.status && dist.granted == central.granted;
        std::map<std::uint64_t, std::array<std::uint64_t, 3>> got;
        for (const auto& [r, c] : dist.stats.per_round) got[r] = {c.coin, c.ack, c.leave};
        ok = ok && got == want;
      }
      mismatched += !ok;
    }
  }
  return {mismatched == 0, std::to_string(cases) + " (graph, seed) cases x 4 delay models = " +
                               std::to_string(runs) + " runs, " + std::to_string(mismatched) +
                               " cases with differing sink sets or message counts"};
}

// 9. Expected-rounds model against simulated means.
std::string rounds_report() {
  std::ostringstream out;
  out << "class,n,model_rounds,empirical_mean_rounds,empirical_se,runs\n";
  for (const auto& spec : {graph_class_spec{graph_class::path, 16},
                           graph_class_spec{graph_class::cycle, 16},
                           graph_class_spec{graph_class::complete, 5}}) {
    std::string model;
    try {
      model = format_real(expected_rounds(spec));
    } catch (const divergence_error&) {
      model = "diverges";
    }
    const auto g = generate(spec);
    double sum = 0, sq = 0;
    const int runs = 1000;
    for (int seed = 0; seed < runs; ++seed) {
      const auto run = simulate_random_orientation_rgm(g, seed, 100 * g.vertex_count());
      const double r = static_cast<double>(run.rounds);
      sum += r;
      sq += r * r;
    }
    const double mean = sum / runs;
    const double se = std::sqrt((sq - runs * mean * mean) / (runs - 1) / runs);
    out << to_string(spec.kind) << ',' << spec.n << ',' << model << ',' << format_real(mean)
        << ',' << format_real(se) << ',' << runs << '\n';
  }
  return out.str();
}

outcome expected_rounds_report() {
  const auto first = rounds_report();
  const auto second = rounds_report();
  std::ofstream("rounds_report.csv") << first;
  std::string flat = first.substr(first.find('\n') + 1);
  for (auto& c : flat)
    if (c == '\n') c = ';';
  return {first == second && !first.empty(),
          std::string(first == second ? "deterministic" : "NOT deterministic") +
              ", written to rounds_report.csv: " + flat};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<outcome()>>> criteria{
      {"exact closed forms", exact_closed_forms},
      {"degree-sum identity", degree_sum_identity},
      {"Monte Carlo consistency", monte_carlo_consistency},
      {"bound validity", bound_validity},
      {"G(n,p) approximation", gnp_approximation},
      {"priority-digraph pipeline", priority_pipeline},
      {"converse at desk scale", converse_check},
      {"distributed equivalence", distributed_equivalence},
      {"expected-rounds report", expected_rounds_report},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += !o.pass;
    std::printf("[%s] %zu %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
