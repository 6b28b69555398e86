#include "cli.hpp"

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sinklock/analytics.hpp"
#include "sinklock/dist_sim.hpp"
#include "sinklock/generators.hpp"
#include "sinklock/graph.hpp"
#include "sinklock/orientation.hpp"
#include "sinklock/rgm_engine.hpp"
#include "sinklock/trace.hpp"
#include "sinklock/trace_verifier.hpp"

namespace sinklock {

namespace {

using nlohmann::ordered_json;

struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct verification_failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct graph_source {
  std::string cls;
  std::size_t n = 0;
  std::size_t k = 1;
  double p = 0.0;
  double a = 2.0;
  std::string in;
};

struct options {
  graph_source source;
  std::uint64_t seed = 0;
  std::uint64_t trials = 10'000;
  std::uint64_t max_rounds = 0;
  std::string out;
  std::string format = "csv";
  std::string ns = "3..10";
  std::string classes = "path,star,cycle,complete";
  std::string delay = "zero";
  std::string graph_file;
  std::size_t cap = default_enumeration_cap;
  bool table_variant = false;
};

void add_graph_flags(CLI::App* cmd, options& o) {
  cmd->add_option("--class", o.source.cls,
                  "path, star, tree, cycle, complete, bounded_degree, gnp, power_law");
  cmd->add_option("--n", o.source.n, "number of vertices");
  cmd->add_option("--k", o.source.k, "degree bound (bounded_degree)");
  cmd->add_option("--p", o.source.p, "edge probability (gnp)");
  cmd->add_option("--a", o.source.a, "power-law exponent (power_law)");
}

void add_seed_flag(CLI::App* cmd, options& o) {
  cmd->add_option("--seed", o.seed, "seed (default from SINKLOCK_SEED, else 0)")
      ->envname("SINKLOCK_SEED");
}

graph_class_spec class_spec(const options& o) {
  auto cls = parse_graph_class(o.source.cls);
  if (!cls) throw usage_error("--class: unknown graph class '" + o.source.cls + "'");
  graph_class_spec spec{*cls, o.source.n, o.source.k, o.source.p, o.source.a, o.seed};
  try {
    validate(spec);
  } catch (const invalid_parameter& e) {
    throw usage_error(std::string("--class ") + o.source.cls + ": " + e.what());
  }
  return spec;
}

graph read_graph_file(const std::string& path, const std::string& flag) {
  std::ifstream in(path);
  if (!in) throw usage_error(flag + ": cannot open '" + path + "'");
  try {
    return read_edge_list(in);
  } catch (const std::exception& e) {
    throw usage_error(flag + ": " + path + ": " + e.what());
  }
}

/// The graph plus a JSON record of where it came from.
std::pair<graph, ordered_json> load_graph(const options& o) {
  const bool from_class = !o.source.cls.empty();
  const bool from_file = !o.source.in.empty();
  if (from_class == from_file) {
    throw usage_error(from_class ? "--in and --class are mutually exclusive"
                                 : "a graph source is required: --class or --in");
  }
  ordered_json src;
  if (from_file) {
    src["in"] = o.source.in;
    return {read_graph_file(o.source.in, "--in"), src};
  }
  const auto spec = class_spec(o);
  src["class"] = std::string(to_string(spec.kind));
  src["n"] = spec.n;
  if (spec.kind == graph_class::bounded_degree) src["k"] = spec.k;
  if (spec.kind == graph_class::gnp) src["p"] = spec.p;
  if (spec.kind == graph_class::power_law) src["a"] = spec.a;
  src["seed"] = spec.seed;
  return {generate(spec), src};
}

/// Writes through a temporary file and a rename so readers never see a
/// partial file. An empty path means the given stream.
template <typename Fn>
void emit(const std::string& path, std::ostream& fallback, Fn&& write) {
  if (path.empty()) {
    write(fallback);
    return;
  }
  const std::filesystem::path target(path);
  auto tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream file(tmp, std::ios::binary | std::ios::trunc);
    if (!file) throw usage_error("--out: cannot write '" + path + "'");
    file.imbue(std::locale::classic());
    write(file);
    file.flush();
    if (!file) {
      std::filesystem::remove(tmp);
      throw std::runtime_error("write to '" + path + "' failed");
    }
  }
  std::filesystem::rename(tmp, target);
}

std::vector<std::size_t> parse_ns(const std::string& text) {
  std::vector<std::size_t> ns;
  std::stringstream in(text);
  std::string item;
  auto number = [&](const std::string& s) -> std::size_t {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(s, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (s.empty() || pos != s.size() || s[0] == '-') {
      throw usage_error("--ns: bad value '" + s + "'");
    }
    return static_cast<std::size_t>(v);
  };
  while (std::getline(in, item, ',')) {
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      ns.push_back(number(item));
      continue;
    }
    const auto lo = number(item.substr(0, dots));
    const auto hi = number(item.substr(dots + 2));
    if (hi < lo) throw usage_error("--ns: empty range '" + item + "'");
    for (auto n = lo; n <= hi; ++n) ns.push_back(n);
  }
  if (ns.empty()) throw usage_error("--ns: no values");
  return ns;
}

std::vector<graph_class> parse_classes(const std::string& text) {
  std::vector<graph_class> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    auto c = parse_graph_class(item);
    if (!c) throw usage_error("--classes: unknown graph class '" + item + "'");
    out.push_back(*c);
  }
  if (out.empty()) throw usage_error("--classes: no values");
  return out;
}

void check_format(const std::string& format) {
  if (format != "csv" && format != "json") {
    throw usage_error("--format: expected csv or json, got '" + format + "'");
  }
}

ordered_json row_to_json(const table_row& row) {
  ordered_json j;
  j["class"] = row.graph_class;
  j["n"] = row.n;
  j["params"] = row.params;
  j["kind"] = row.kind;
  j["form"] = row.form;
  j["formula_value"] = row.formula_value ? ordered_json(*row.formula_value) : ordered_json();
  j["exact_value"] = row.exact_value ? ordered_json(to_fraction_string(*row.exact_value))
                                     : ordered_json();
  j["mc_estimate"] = row.mc_estimate ? ordered_json(*row.mc_estimate) : ordered_json();
  j["mc_se"] = row.mc_se ? ordered_json(*row.mc_se) : ordered_json();
  j["trials"] = row.trials;
  j["seed"] = row.seed;
  j["verdict"] = row.verdict;
  return j;
}

void write_rows(std::ostream& out, const std::vector<table_row>& rows,
                const std::string& format, const ordered_json& config) {
  if (format == "json") {
    ordered_json doc;
    doc["config"] = config;
    doc["rows"] = ordered_json::array();
    for (const auto& r : rows) doc["rows"].push_back(row_to_json(r));
    out << doc.dump(2) << '\n';
    return;
  }
  write_csv_header(out);
  for (const auto& r : rows) write_csv_row(out, r);
}

int cmd_gen(const options& o, std::ostream& out) {
  if (!o.source.in.empty()) throw usage_error("--in: gen takes a graph class");
  if (o.source.cls.empty()) throw usage_error("--class: required");
  const auto g = generate(class_spec(o));
  emit(o.out, out, [&](std::ostream& s) { write_edge_list(s, g); });
  return 0;
}

int cmd_table(const options& o, std::ostream& out) {
  check_format(o.format);
  table_config config;
  config.ns = parse_ns(o.ns);
  config.classes = parse_classes(o.classes);
  config.k = o.source.k;
  config.p = o.source.p;
  config.a = o.source.a;
  config.trials = o.trials;
  config.seed = o.seed;
  config.table_variant = o.table_variant;
  config.enumeration_cap = o.cap;
  const auto rows = build_table(config);
  ordered_json cfg{{"command", "table"}, {"ns", o.ns},       {"classes", o.classes},
                   {"k", o.source.k},    {"p", o.source.p},  {"a", o.source.a},
                   {"trials", o.trials}, {"seed", o.seed},   {"table_variant", o.table_variant},
                   {"cap", o.cap}};
  emit(o.out, out, [&](std::ostream& s) { write_rows(s, rows, o.format, cfg); });
  return 0;
}

int cmd_estimate(const options& o, std::ostream& out) {
  check_format(o.format);
  std::vector<table_row> rows;
  ordered_json cfg{{"command", "estimate"}, {"trials", o.trials}, {"seed", o.seed},
                   {"cap", o.cap}};
  if (!o.source.cls.empty() && o.source.in.empty()) {
    const auto spec = class_spec(o);
    table_config config;
    config.ns = {spec.n};
    config.classes = {spec.kind};
    config.k = spec.k;
    config.p = spec.p;
    config.a = spec.a;
    config.trials = o.trials;
    config.seed = o.seed;
    config.table_variant = o.table_variant;
    config.enumeration_cap = o.cap;
    rows = build_table(config);
    cfg["graph"] = load_graph(o).second;
  } else {
    auto [g, src] = load_graph(o);
    cfg["graph"] = src;
    std::optional<exact_stats> stats;
    try {
      stats = enumerate_exact(g, o.cap);
    } catch (const cap_exceeded&) {
    }
    std::optional<monte_carlo_result> mc;
    if (o.trials > 0) mc = monte_carlo(g, o.trials, o.seed);
    for (const auto q : {quantity::expected_sinks, quantity::prob_positive}) {
      table_row row;
      row.graph_class = "file";
      row.n = g.vertex_count();
      row.params = "m=" + std::to_string(g.edge_count());
      row.kind = std::string(to_string(q));
      row.form = "none";
      row.trials = o.trials;
      row.seed = o.seed;
      if (q == quantity::expected_sinks) {
        row.exact_value = stats ? stats->expected_sinks : degree_sum_expected(g);
      } else if (stats) {
        row.exact_value = stats->prob_positive;
      }
      if (mc) {
        const auto& r = q == quantity::expected_sinks ? mc->expected_sinks
                                                      : mc->prob_positive;
        row.mc_estimate = r.estimate;
        row.mc_se = r.standard_error;
      }
      row.verdict = "n/a";
      if (row.exact_value && mc) {
        const double diff = std::abs(*row.mc_estimate - to_double(*row.exact_value));
        row.verdict = diff <= 4.0 * *row.mc_se ? "within-tolerance" : "outside-tolerance";
      }
      rows.push_back(std::move(row));
    }
  }
  emit(o.out, out, [&](std::ostream& s) { write_rows(s, rows, o.format, cfg); });
  return 0;
}

ordered_json run_header(const char* command, const options& o, const graph& g,
                        const ordered_json& src, std::uint64_t max_rounds) {
  ordered_json h;
  h["command"] = command;
  h["mode"] = std::string(command) == "dist-sim" ? "distributed" : "centralized";
  h["seed"] = o.seed;
  h["max_rounds"] = max_rounds;
  if (h["mode"] == "distributed") h["delay"] = o.delay;
  h["source"] = src;
  h["graph"] = graph_to_json(g);
  return h;
}

std::string summary_line(run_status status, std::uint64_t rounds,
                         const std::vector<std::vector<vertex>>& granted) {
  std::ostringstream s;
  s << "status=" << to_string(status) << " rounds=" << rounds << " sinks_per_round=";
  for (std::size_t r = 0; r < granted.size(); ++r) {
    if (r) s << ',';
    s << granted[r].size();
  }
  return s.str();
}

int cmd_simulate(const options& o, std::ostream& out, std::ostream& err) {
  auto [g, src] = load_graph(o);
  const auto max_rounds = o.max_rounds ? o.max_rounds : default_max_rounds(g);
  const auto run = simulate_random_orientation_rgm(g, o.seed, max_rounds);
  const auto header = run_header("simulate", o, g, src, max_rounds);
  emit(o.out, out, [&](std::ostream& s) { write_trace(s, run.events, &header); });
  (o.out.empty() ? err : out) << summary_line(run.status, run.rounds, run.granted) << '\n';
  return 0;
}

int cmd_dist_sim(const options& o, std::ostream& out, std::ostream& err) {
  auto [g, src] = load_graph(o);
  const auto max_rounds = o.max_rounds ? o.max_rounds : default_max_rounds(g);
  delay_spec delays;
  try {
    delays = delay_spec::parse(o.delay, o.seed);
  } catch (const std::invalid_argument& e) {
    throw usage_error(std::string("--delay: ") + e.what());
  }
  const auto run = dist_simulate(g, o.seed, delays, max_rounds);
  const auto header = run_header("dist-sim", o, g, src, max_rounds);
  emit(o.out, out, [&](std::ostream& s) { write_trace(s, run.events, &header); });
  auto& log = o.out.empty() ? err : out;
  log << summary_line(run.status, run.stats.rounds, run.granted)
      << " messages=" << run.stats.messages()
      << " time=" << format_real(run.stats.simulated_time) << '\n';
  return 0;
}

int cmd_verify(const options& o, std::ostream& out) {
  if (o.source.in.empty()) throw usage_error("--in: trace file required");
  std::ifstream in(o.source.in);
  if (!in) throw usage_error("--in: cannot open '" + o.source.in + "'");
  nlohmann::json header;
  trace t;
  try {
    t = read_trace(in, &header);
  } catch (const std::exception& e) {
    throw verification_failure(std::string("malformed trace: ") + e.what());
  }
  std::optional<graph> g;
  if (!o.graph_file.empty()) {
    g = read_graph_file(o.graph_file, "--graph");
  } else if (header.is_object() && header.contains("graph")) {
    g = graph_from_json(header["graph"]);
  } else {
    throw usage_error("--graph: trace has no embedded graph");
  }
  verify_options vo;
  vo.require_monotone_rounds =
      !(header.is_object() && header.value("mode", "") == "distributed");
  vo.cap = o.cap;
  const auto report = verify_rgm_trace(*g, t, vo);
  for (const auto& v : report.violations) {
    out << "violation";
    if (v.event_index) out << " at event " << *v.event_index;
    out << ": " << v.message << '\n';
  }
  if (!report.ok()) {
    out << "FAILED: " << report.violations.size() << " violation(s)\n";
    return 1;
  }
  out << "verified: " << report.rounds << " round(s), "
      << (report.complete ? "complete" : "incomplete; order-family check skipped")
      << '\n';
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Deadlock prevention by random acyclic orientations", "sinklock"};
  app.require_subcommand(1);
  options o;

  auto* gen = app.add_subcommand("gen", "write a graph as an edge list");
  add_graph_flags(gen, o);
  add_seed_flag(gen, o);
  gen->add_option("--out", o.out, "output file (default stdout)");

  auto* estimate = app.add_subcommand("estimate", "exact and Monte Carlo sink statistics");
  add_graph_flags(estimate, o);
  add_seed_flag(estimate, o);
  estimate->add_option("--in", o.source.in, "edge-list file");
  estimate->add_option("--trials", o.trials, "Monte Carlo trials (0 to skip)");
  estimate->add_option("--cap", o.cap, "largest edge count to enumerate");
  estimate->add_flag("--table-variant", o.table_variant,
                     "bounded-degree expectation as ceil(n/(k+1))/2^k");
  estimate->add_option("--out", o.out, "output file (default stdout)");
  estimate->add_option("--format", o.format, "csv or json");

  auto* table = app.add_subcommand("table", "closed forms against enumeration and sampling");
  table->add_option("--ns", o.ns, "vertex counts, e.g. 3..10 or 4,8,16");
  table->add_option("--classes", o.classes, "comma-separated graph classes");
  table->add_option("--k", o.source.k, "degree bound (bounded_degree)");
  table->add_option("--p", o.source.p, "edge probability (gnp)");
  table->add_option("--a", o.source.a, "power-law exponent (power_law)");
  add_seed_flag(table, o);
  table->add_option("--trials", o.trials, "Monte Carlo trials (0 to skip)");
  table->add_option("--cap", o.cap, "largest edge count to enumerate");
  table->add_flag("--table-variant", o.table_variant,
                  "bounded-degree expectation as ceil(n/(k+1))/2^k");
  table->add_option("--out", o.out, "output file (default stdout)");
  table->add_option("--format", o.format, "csv or json");

  auto* simulate = app.add_subcommand("simulate", "centralized run, JSON-lines trace");
  auto* dist = app.add_subcommand("dist-sim", "message-passing run, JSON-lines trace");
  for (auto* cmd : {simulate, dist}) {
    add_graph_flags(cmd, o);
    add_seed_flag(cmd, o);
    cmd->add_option("--in", o.source.in, "edge-list file");
    cmd->add_option("--max-rounds", o.max_rounds, "round limit (default 10n)");
    cmd->add_option("--out", o.out, "trace file (default stdout)");
  }
  dist->add_option("--delay", o.delay, "zero, constant:<d> or uniform:<lo>:<hi>");

  auto* verify = app.add_subcommand("verify", "check a trace");
  verify->add_option("--in", o.source.in, "trace file");
  verify->add_option("--graph", o.graph_file, "edge list, when the trace has no header");
  verify->add_option("--cap", o.cap, "largest class order to expand");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (gen->parsed()) return cmd_gen(o, out);
    if (estimate->parsed()) return cmd_estimate(o, out);
    if (table->parsed()) return cmd_table(o, out);
    if (simulate->parsed()) return cmd_simulate(o, out, err);
    if (dist->parsed()) return cmd_dist_sim(o, out, err);
    if (verify->parsed()) return cmd_verify(o, out);
  } catch (const usage_error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const verification_failure& e) {
    out << "FAILED: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace sinklock
