// Serial vs OpenMP timings for the enumeration and sampling kernels.

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "sinklock/generators.hpp"
#include "sinklock/kernels.hpp"

using namespace sinklock;

namespace {

template <class F>
double best_of(int reps, F&& f) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    const auto start = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  }
  return best;
}

void report(const char* kernel, const std::string& graph, double serial, double parallel, bool same) {
  std::printf("%-10s %-22s serial %9.4f s  parallel %9.4f s  speedup %5.2fx  %s\n", kernel,
              graph.c_str(), serial, parallel, serial / parallel, same ? "identical" : "DIFFERENT");
}

std::string label(const graph_class_spec& spec) {
  return std::string(to_string(spec.kind)) + " n=" + std::to_string(spec.n);
}

}  // namespace

int main(int argc, char** argv) {
  const std::uint64_t trials = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 1'000'000;
  std::printf("threads: %d\n", omp_get_max_threads());
  bool all_same = true;

  for (auto spec : {graph_class_spec{graph_class::cycle, 20}, graph_class_spec{graph_class::complete, 7},
                    graph_class_spec{graph_class::bounded_degree, 16, 3, 0, 2, 1}}) {
    const auto g = generate(spec);
    if (g.edge_count() > 24) continue;
    kernels::enumeration_counts a, b;
    const double s = best_of(3, [&] { a = kernels::enumerate_serial(g); });
    const double p = best_of(3, [&] { b = kernels::enumerate_parallel(g); });
    report("enumerate", label(spec) + " m=" + std::to_string(g.edge_count()), s, p, a == b);
    all_same = all_same && a == b;
  }

  for (auto spec : {graph_class_spec{graph_class::path, 100}, graph_class_spec{graph_class::complete, 20},
                    graph_class_spec{graph_class::gnp, 200, 1, 0.02, 2, 1}}) {
    const auto g = generate(spec);
    kernels::trial_moments a, b;
    const double s = best_of(3, [&] { a = kernels::sample_serial(g, trials, 1); });
    const double p = best_of(3, [&] { b = kernels::sample_parallel(g, trials, 1); });
    report("sample", label(spec), s, p, a == b);
    all_same = all_same && a == b;
  }
  return all_same ? 0 : 1;
}
