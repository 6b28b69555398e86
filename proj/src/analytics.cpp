#include "sinklock/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <locale>
#include <ostream>
#include <sstream>

#include "sinklock/kernels.hpp"
#include "sinklock/orientation.hpp"

namespace sinklock {

std::string_view to_string(quantity q) noexcept {
  return q == quantity::expected_sinks ? "expected_sinks" : "prob_positive";
}

std::string_view to_string(value_form f) noexcept {
  switch (f) {
    case value_form::exact: return "exact";
    case value_form::lower_bound: return "lower_bound";
    case value_form::upper_bound: return "upper_bound";
    case value_form::approximation: return "approximation";
  }
  return "unknown";
}

std::string_view to_string(verdict v) noexcept {
  switch (v) {
    case verdict::none: return "none";
    case verdict::within_tolerance: return "within-tolerance";
    case verdict::bound_satisfied: return "bound-satisfied";
    case verdict::fail: return "fail";
  }
  return "unknown";
}

namespace {

closed_form_value exact_value(rational r) {
  closed_form_value out;
  out.value = to_double(r);
  out.exact = std::move(r);
  out.form = value_form::exact;
  return out;
}

closed_form_value real_value(double v, value_form form) {
  closed_form_value out;
  out.value = v;
  out.form = form;
  return out;
}

rational rational_power(const rational& base, std::size_t e) {
  rational out = 1;
  for (std::size_t i = 0; i < e; ++i) out *= base;
  return out;
}

std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

// Euler-Maclaurin estimate of the sum over k >= from of k^-a.
double zeta_tail(double a, double from) {
  const double k = from;
  return std::pow(k, 1.0 - a) / (a - 1.0) + 0.5 * std::pow(k, -a) +
         a * std::pow(k, -a - 1.0) / 12.0 -
         a * (a + 1.0) * (a + 2.0) * std::pow(k, -a - 3.0) / 720.0;
}

constexpr std::size_t direct_sum_limit = 2'000'000;
constexpr std::size_t zeta_split = 1000;

double direct_sum(double a, std::size_t last) {
  double total = 0.0;
  for (std::size_t k = last; k >= 1; --k) {
    total += std::pow(static_cast<double>(k), -a);
  }
  return total;
}

}  // namespace

double delta(double a, std::size_t n) {
  if (!(a >= 2.0)) {
    throw std::domain_error("delta requires a >= 2, got a=" + std::to_string(a));
  }
  if (n < 2) {
    throw std::domain_error("delta requires n >= 2, got n=" + std::to_string(n));
  }
  if (n - 1 <= direct_sum_limit) return direct_sum(a, n - 1);
  return zeta(a) - zeta_tail(a, static_cast<double>(n));
}

double zeta(double a) {
  if (!(a >= 2.0)) {
    throw std::domain_error("zeta requires a >= 2, got a=" + std::to_string(a));
  }
  return direct_sum(a, zeta_split - 1) +
         zeta_tail(a, static_cast<double>(zeta_split));
}

double mean_degree(std::size_t n, double p) {
  return n == 0 ? 0.0 : static_cast<double>(n - 1) * p;
}

closed_form_value expected_sinks_closed_form(const graph_class_spec& spec,
                                             closed_form_options opts) {
  validate(spec);
  const std::size_t n = spec.n;
  const rational nr(n);
  switch (spec.kind) {
    case graph_class::path:
      // P_1 is a lone vertex; the two-leaf argument needs n >= 2.
      if (n == 1) return exact_value(rational(1));
      return exact_value(rational(n + 2, 4));
    case graph_class::star:
      return exact_value(rational(n - 1, 2) +
                         inverse_power_of_two(static_cast<unsigned>(n - 1)));
    case graph_class::cycle:
      return exact_value(rational(n, 4));
    case graph_class::complete:
      return exact_value(nr * inverse_power_of_two(static_cast<unsigned>(n - 1)));
    case graph_class::bounded_degree: {
      const auto scale = inverse_power_of_two(static_cast<unsigned>(spec.k));
      auto out = exact_value(opts.table_variant
                                 ? rational(ceil_div(n, spec.k + 1)) * scale
                                 : nr * scale);
      out.form = value_form::lower_bound;
      return out;
    }
    case graph_class::gnp:
      return real_value(static_cast<double>(n) /
                            std::exp(mean_degree(n, spec.p) / 2.0),
                        value_form::approximation);
    case graph_class::power_law:
      return real_value(static_cast<double>(n) / (2.0 * delta(spec.a, n)),
                        value_form::lower_bound);
    case graph_class::tree:
      break;
  }
  throw invalid_parameter(
      "no closed-form expected_sinks for general trees (use path or star)");
}

closed_form_value prob_positive_closed_form(const graph_class_spec& spec) {
  validate(spec);
  const std::size_t n = spec.n;
  switch (spec.kind) {
    case graph_class::path:
    case graph_class::star:
    case graph_class::tree:
      return exact_value(rational(1));
    case graph_class::cycle:
      return exact_value(rational(1) -
                         inverse_power_of_two(static_cast<unsigned>(n - 1)));
    case graph_class::complete:
      return exact_value(rational(n) *
                         inverse_power_of_two(static_cast<unsigned>(n - 1)));
    case graph_class::bounded_degree: {
      const rational miss =
          rational(1) - inverse_power_of_two(static_cast<unsigned>(spec.k));
      auto out =
          exact_value(rational(1) - rational_power(miss, ceil_div(n, spec.k + 1)));
      out.form = value_form::lower_bound;
      return out;
    }
    case graph_class::gnp: {
      // Markov's inequality on the approximate expectation.
      const double e = static_cast<double>(n) /
                       std::exp(mean_degree(n, spec.p) / 2.0);
      return real_value(std::min(1.0, e), value_form::upper_bound);
    }
    case graph_class::power_law: {
      const double d = delta(spec.a, n);
      const double miss = 1.0 - (2.0 - std::sqrt(2.0)) / (2.0 * d);
      return real_value(1.0 - std::pow(miss, static_cast<double>(n)),
                        value_form::lower_bound);
    }
  }
  throw invalid_parameter("unknown graph class");
}

closed_form_value closed_form(const graph_class_spec& spec, quantity q,
                              closed_form_options opts) {
  return q == quantity::expected_sinks ? expected_sinks_closed_form(spec, opts)
                                       : prob_positive_closed_form(spec);
}

rational degree_sum_expected(const graph& g) {
  // Group by degree so each power of two is built once.
  std::vector<std::size_t> count(g.max_degree() + 1, 0);
  for (vertex v = 0; v < g.vertex_count(); ++v) ++count[g.degree(v)];
  rational total = 0;
  for (std::size_t d = 0; d < count.size(); ++d) {
    if (count[d] == 0) continue;
    total += rational(count[d]) * inverse_power_of_two(static_cast<unsigned>(d));
  }
  return total;
}

namespace {

estimate_report summarize(std::uint64_t trials, std::uint64_t sum,
                          std::uint64_t sum_squares, std::uint64_t seed) {
  estimate_report r;
  r.trials = trials;
  r.seed = seed;
  r.estimate = static_cast<double>(sum) / static_cast<double>(trials);
  if (trials > 1) {
    using wide = unsigned __int128;
    const wide t = trials;
    const wide spread = t * wide{sum_squares} - wide{sum} * wide{sum};
    const long double variance = static_cast<long double>(spread) /
                                 (static_cast<long double>(trials) *
                                  static_cast<long double>(trials - 1));
    r.standard_error = static_cast<double>(
        std::sqrt(variance / static_cast<long double>(trials)));
  }
  return r;
}

monte_carlo_result to_result(const kernels::trial_moments& m,
                             std::uint64_t seed) {
  return {summarize(m.trials, m.sum, m.sum_squares, seed),
          summarize(m.trials, m.with_sink, m.with_sink, seed)};
}

void check_trials(std::uint64_t trials) {
  if (trials < 1) throw std::invalid_argument("monte_carlo requires trials >= 1");
}

}  // namespace

monte_carlo_result monte_carlo(const graph& g, std::uint64_t trials,
                               std::uint64_t seed) {
  check_trials(trials);
  return to_result(kernels::sample_parallel(g, trials, seed), seed);
}

monte_carlo_result monte_carlo_serial(const graph& g, std::uint64_t trials,
                                      std::uint64_t seed) {
  check_trials(trials);
  return to_result(kernels::sample_serial(g, trials, seed), seed);
}

verdict judge(estimate_report& report, double target, value_form form,
              double sigmas, double relative_tolerance) {
  const double slack = sigmas * report.standard_error;
  const double diff = report.estimate - target;
  verdict v = verdict::fail;
  switch (form) {
    case value_form::exact:
      if (std::abs(diff) <= slack) v = verdict::within_tolerance;
      break;
    case value_form::approximation:
      if (std::abs(diff) <= std::max(slack, relative_tolerance * std::abs(target))) {
        v = verdict::within_tolerance;
      }
      break;
    case value_form::lower_bound:
      if (diff >= -slack) v = verdict::bound_satisfied;
      break;
    case value_form::upper_bound:
      if (diff <= slack) v = verdict::bound_satisfied;
      break;
  }
  report.target = target;
  report.outcome = v;
  return v;
}

double expected_rounds(const std::function<double(double)>& expected_sinks_at,
                       double n, rounds_options opts) {
  double x = n;
  double rounds = 0.0;
  for (std::uint64_t step = 0; x > 0.0; ++step) {
    if (step >= opts.max_steps) {
      throw divergence_error("expected_rounds exceeded " +
                             std::to_string(opts.max_steps) + " steps");
    }
    const double decrement = expected_sinks_at(x);
    if (!(decrement >= opts.min_decrement)) {
      throw divergence_error("expected_rounds: decrement " +
                             std::to_string(decrement) + " at x=" +
                             std::to_string(x) + " is below the floor " +
                             std::to_string(opts.min_decrement));
    }
    if (x - decrement <= 0.0) {
      rounds += x / decrement;
      break;
    }
    x -= decrement;
    rounds += 1.0;
  }
  return rounds;
}

std::function<double(double)> expected_sinks_model(
    const graph_class_spec& spec) {
  validate(spec);
  switch (spec.kind) {
    case graph_class::path:
      return [](double x) { return (x + 2.0) / 4.0; };
    case graph_class::star:
      return [](double x) { return (x - 1.0) / 2.0 + std::exp2(1.0 - x); };
    case graph_class::cycle:
      return [](double x) { return x / 4.0; };
    case graph_class::complete:
      return [](double x) { return x / std::exp2(x - 1.0); };
    case graph_class::bounded_degree: {
      const double scale = std::exp2(-static_cast<double>(spec.k));
      return [scale](double x) { return x * scale; };
    }
    case graph_class::gnp: {
      const double p = spec.p;
      return [p](double x) { return x / std::exp(std::max(0.0, x - 1.0) * p / 2.0); };
    }
    case graph_class::power_law: {
      const double d = delta(spec.a, spec.n);
      return [d](double x) { return x / (2.0 * d); };
    }
    case graph_class::tree:
      break;
  }
  throw invalid_parameter("no expected_sinks model for general trees");
}

double expected_rounds(const graph_class_spec& spec, rounds_options opts) {
  return expected_rounds(expected_sinks_model(spec),
                         static_cast<double>(spec.n), opts);
}

std::string format_real(double value) {
  std::ostringstream out;
  out.imbue(std::locale::classic());
  out << std::setprecision(12) << value;
  return out.str();
}

namespace {

std::string params_for(const graph_class_spec& spec) {
  switch (spec.kind) {
    case graph_class::bounded_degree: return "k=" + std::to_string(spec.k);
    case graph_class::gnp: return "p=" + format_real(spec.p);
    case graph_class::power_law: return "a=" + format_real(spec.a);
    default: return "";
  }
}

std::string csv_safe(std::string text) {
  std::replace(text.begin(), text.end(), ',', ';');
  std::replace(text.begin(), text.end(), '\n', ' ');
  return text;
}

std::string compare_exact(const rational& exact, const closed_form_value& cf) {
  switch (cf.form) {
    case value_form::exact:
      if (cf.exact) return *cf.exact == exact ? "match" : "mismatch";
      return std::abs(to_double(exact) - cf.value) <= 1e-12 ? "match" : "mismatch";
    case value_form::lower_bound:
      if (cf.exact) return exact >= *cf.exact ? "bound-satisfied" : "fail";
      return to_double(exact) >= cf.value ? "bound-satisfied" : "fail";
    case value_form::upper_bound:
      return to_double(exact) <= cf.value ? "bound-satisfied" : "fail";
    case value_form::approximation: {
      const double rel = std::abs(to_double(exact) - cf.value) /
                         std::max(std::abs(cf.value), 1e-300);
      return rel <= 0.05 ? "within-tolerance" : "outside-tolerance";
    }
  }
  return "n/a";
}

}  // namespace

std::vector<table_row> build_table(const table_config& config) {
  std::vector<table_row> rows;
  const closed_form_options opts{config.table_variant};
  for (const auto cls : config.classes) {
    for (const auto n : config.ns) {
      graph_class_spec spec{cls, n, config.k, config.p, config.a, config.seed};
      for (const auto q : {quantity::expected_sinks, quantity::prob_positive}) {
        table_row row;
        row.graph_class = std::string(to_string(cls));
        row.n = n;
        row.params = params_for(spec);
        if (config.table_variant && cls == graph_class::bounded_degree) {
          row.params += " variant=table";
        }
        row.kind = std::string(to_string(q));
        row.trials = config.trials;
        row.seed = config.seed;

        std::optional<graph> g;
        try {
          g = generate(spec);
        } catch (const std::exception& e) {
          row.form = "none";
          row.verdict = "error: " + csv_safe(e.what());
          rows.push_back(std::move(row));
          continue;
        }

        std::optional<closed_form_value> cf;
        try {
          cf = closed_form(spec, q, opts);
          row.form = std::string(to_string(cf->form));
          row.formula_value = cf->value;
        } catch (const std::exception&) {
          row.form = "none";
        }

        std::string cap_note;
        if (q == quantity::expected_sinks) {
          row.exact_value = degree_sum_expected(*g);
        }
        try {
          auto stats = enumerate_exact(*g, config.enumeration_cap);
          row.exact_value = q == quantity::expected_sinks ? stats.expected_sinks
                                                          : stats.prob_positive;
        } catch (const cap_exceeded& e) {
          cap_note = csv_safe(e.what());
        }

        std::optional<estimate_report> mc;
        if (config.trials > 0) {
          auto result = monte_carlo(*g, config.trials, config.seed);
          mc = q == quantity::expected_sinks ? result.expected_sinks
                                             : result.prob_positive;
          row.mc_estimate = mc->estimate;
          row.mc_se = mc->standard_error;
        }

        if (cf && row.exact_value) {
          row.verdict = compare_exact(*row.exact_value, *cf);
        } else if (cf && mc) {
          row.verdict = std::string(to_string(judge(*mc, cf->value, cf->form)));
        } else if (!cap_note.empty() && !mc) {
          row.verdict = "error: " + cap_note;
        } else {
          row.verdict = "n/a";
        }
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

void write_csv_header(std::ostream& out) {
  out << "class,n,params,kind,form,formula_value,exact_value,mc_estimate,mc_se,"
         "trials,seed,verdict\n";
}

void write_csv_row(std::ostream& out, const table_row& row) {
  auto opt = [](const std::optional<double>& v) {
    return v ? format_real(*v) : std::string();
  };
  out << row.graph_class << ',' << row.n << ',' << row.params << ','
      << row.kind << ',' << row.form << ',' << opt(row.formula_value) << ','
      << (row.exact_value ? to_fraction_string(*row.exact_value) : "") << ','
      << opt(row.mc_estimate) << ',' << opt(row.mc_se) << ',' << row.trials
      << ',' << row.seed << ',' << row.verdict << '\n';
}

}  // namespace sinklock
