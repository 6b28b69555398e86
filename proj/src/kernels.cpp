#include "sinklock/kernels.hpp"

#include <stdexcept>

#include <omp.h>

#include "sinklock/random.hpp"

namespace sinklock::kernels {

sink_masks::sink_masks(const graph& g)
    : incident(g.vertex_count(), 0), inward(g.vertex_count(), 0) {
  if (g.edge_count() > max_mask_edges) {
    throw std::length_error("bitmask kernels support at most " +
                            std::to_string(max_mask_edges) + " edges");
  }
  const auto edges = g.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::uint64_t bit = std::uint64_t{1} << i;
    incident[edges[i].u] |= bit;
    incident[edges[i].v] |= bit;
    // The smaller endpoint receives the arc only when the edge is reversed.
    inward[edges[i].u] |= bit;
  }
}

enumeration_counts enumerate_serial(const graph& g) {
  const sink_masks masks(g);
  const std::uint64_t total = std::uint64_t{1} << g.edge_count();
  enumeration_counts out;
  out.orientations = total;
  out.histogram.assign(g.vertex_count() + 1, 0);
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    const auto s = masks.count(mask);
    out.total_sinks += s;
    out.with_sink += s > 0;
    ++out.histogram[s];
  }
  return out;
}

enumeration_counts enumerate_parallel(const graph& g) {
  const sink_masks masks(g);
  const std::uint64_t total = std::uint64_t{1} << g.edge_count();
  const std::size_t bins = g.vertex_count() + 1;
  enumeration_counts out;
  out.orientations = total;
  out.histogram.assign(bins, 0);

  std::uint64_t total_sinks = 0;
  std::uint64_t with_sink = 0;
  const auto signed_total = static_cast<std::int64_t>(total);
#pragma omp parallel reduction(+ : total_sinks, with_sink)
  {
    std::vector<std::uint64_t> local(bins, 0);
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < signed_total; ++i) {
      const auto s = masks.count(static_cast<std::uint64_t>(i));
      total_sinks += s;
      with_sink += s > 0;
      ++local[s];
    }
#pragma omp critical
    for (std::size_t b = 0; b < bins; ++b) out.histogram[b] += local[b];
  }
  out.total_sinks = total_sinks;
  out.with_sink = with_sink;
  return out;
}

namespace {

std::size_t count_with_coins(const graph& g, std::uint64_t seed,
                             std::uint64_t round,
                             std::vector<std::uint8_t>& out_degree) {
  out_degree.assign(g.vertex_count(), 0);
  for (const auto& e : g.edges()) {
    const vertex tail = edge_coin(seed, round, e.u, e.v) ? e.v : e.u;
    out_degree[tail] = 1;
  }
  std::size_t sinks = 0;
  for (auto d : out_degree) sinks += d == 0;
  return sinks;
}

}  // namespace

std::size_t sinks_for_round(const graph& g, std::uint64_t seed,
                            std::uint64_t round) {
  std::vector<std::uint8_t> scratch;
  return count_with_coins(g, seed, round, scratch);
}

trial_moments sample_serial(const graph& g, std::uint64_t trials,
                            std::uint64_t seed) {
  trial_moments out;
  out.trials = trials;
  std::vector<std::uint8_t> scratch;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const std::uint64_t s = count_with_coins(g, seed, t, scratch);
    out.sum += s;
    out.sum_squares += s * s;
    out.with_sink += s > 0;
  }
  return out;
}

trial_moments sample_parallel(const graph& g, std::uint64_t trials,
                              std::uint64_t seed) {
  std::uint64_t sum = 0;
  std::uint64_t sum_squares = 0;
  std::uint64_t with_sink = 0;
  const auto signed_trials = static_cast<std::int64_t>(trials);
#pragma omp parallel reduction(+ : sum, sum_squares, with_sink)
  {
    std::vector<std::uint8_t> scratch;
#pragma omp for schedule(static)
    for (std::int64_t t = 0; t < signed_trials; ++t) {
      const std::uint64_t s =
          count_with_coins(g, seed, static_cast<std::uint64_t>(t), scratch);
      sum += s;
      sum_squares += s * s;
      with_sink += s > 0;
    }
  }
  return {trials, sum, sum_squares, with_sink};
}

}  // namespace sinklock::kernels
