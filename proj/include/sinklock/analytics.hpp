#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sinklock/generators.hpp"
#include "sinklock/graph.hpp"
#include "sinklock/rational.hpp"

namespace sinklock {

enum class quantity { expected_sinks, prob_positive };

/// How a closed-form value relates to the true quantity.
enum class value_form { exact, lower_bound, upper_bound, approximation };

std::string_view to_string(quantity q) noexcept;
std::string_view to_string(value_form f) noexcept;

struct closed_form_value {
  double value = 0.0;
  std::optional<rational> exact;  // present whenever the formula is rational
  value_form form = value_form::exact;
};

struct closed_form_options {
  /// Use ceil(n/(k+1))/2^k for the bounded-degree expectation instead of
  /// the stronger n/2^k.
  bool table_variant = false;
};

/// Throws invalid_parameter for unsupported class/quantity pairs (general
/// trees have no closed-form expectation).
closed_form_value expected_sinks_closed_form(const graph_class_spec& spec,
                                             closed_form_options opts = {});
closed_form_value prob_positive_closed_form(const graph_class_spec& spec);
closed_form_value closed_form(const graph_class_spec& spec, quantity q,
                              closed_form_options opts = {});

/// Truncated zeta sum over k = 1..n-1 of k^-a. Requires a >= 2, n >= 2.
double delta(double a, std::size_t n);

/// Limit of delta(a, n) as n grows, accurate to better than 1e-12.
double zeta(double a);

/// Mean degree z = (n-1)p of G(n, p).
double mean_degree(std::size_t n, double p);

/// Sum over v of 2^-d(v): the exact expected number of sinks of any graph.
rational degree_sum_expected(const graph& g);

enum class verdict { none, within_tolerance, bound_satisfied, fail };
std::string_view to_string(verdict v) noexcept;

struct estimate_report {
  double estimate = 0.0;
  double standard_error = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::optional<double> target;
  verdict outcome = verdict::none;
};

struct monte_carlo_result {
  estimate_report expected_sinks;
  estimate_report prob_positive;
};

/// Trial t uses random_orientation(g, seed, t). Requires trials >= 1.
monte_carlo_result monte_carlo(const graph& g, std::uint64_t trials,
                               std::uint64_t seed);
monte_carlo_result monte_carlo_serial(const graph& g, std::uint64_t trials,
                                      std::uint64_t seed);

/// Compares an estimate with a closed-form target and records both on the
/// report. Exact targets need |estimate - target| <= sigmas * SE; bounds
/// allow sigmas * SE of slack on the wrong side; approximations also accept
/// a relative error up to relative_tolerance.
verdict judge(estimate_report& report, double target, value_form form,
              double sigmas = 4.0, double relative_tolerance = 0.05);

class divergence_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct rounds_options {
  double min_decrement = 1e-9;
  std::uint64_t max_steps = 10'000'000;
};

/// Iterates x <- x - E(x) from x = n and counts steps; the step that would
/// cross zero contributes the fraction x / E(x). Returns 0 for n <= 0.
double expected_rounds(const std::function<double(double)>& expected_sinks_at,
                       double n, rounds_options opts = {});

/// E[X_x] for the class at a real vertex count x, used by expected_rounds.
std::function<double(double)> expected_sinks_model(const graph_class_spec& spec);

double expected_rounds(const graph_class_spec& spec, rounds_options opts = {});

struct table_row {
  std::string graph_class;
  std::size_t n = 0;
  std::string params;
  std::string kind;
  std::string form;
  std::optional<double> formula_value;
  std::optional<rational> exact_value;
  std::optional<double> mc_estimate;
  std::optional<double> mc_se;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::string verdict;
};

struct table_config {
  std::vector<std::size_t> ns;
  std::vector<graph_class> classes;
  std::size_t k = 3;
  double p = 0.1;
  double a = 2.0;
  std::uint64_t trials = 10'000;
  std::uint64_t seed = 0;
  bool table_variant = false;
  std::size_t enumeration_cap = 20;
};

/// Two rows (expected_sinks, prob_positive) per class and n. Parameter and
/// cap problems become row verdicts instead of exceptions.
std::vector<table_row> build_table(const table_config& config);

void write_csv_header(std::ostream& out);
void write_csv_row(std::ostream& out, const table_row& row);

/// Locale-independent, 12 significant digits.
std::string format_real(double value);

}  // namespace sinklock
