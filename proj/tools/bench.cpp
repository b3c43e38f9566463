// Benchmark: OpenMP kernels against their serial reference implementations.
// Each kernel pair must produce identical results; timings are wall clock.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "hardcore/exact.hpp"
#include "hardcore/glauber.hpp"
#include "hardcore/tree.hpp"
#include "hardcore/uniqueness.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace hardcore;
using clock_type = std::chrono::steady_clock;

namespace {

double ms_since(clock_type::time_point t0) {
  return std::chrono::duration<double, std::milli>(clock_type::now() - t0).count();
}

Graph cycle(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return Graph::from_edges(n, e);
}

Graph petersen() {
  return Graph::from_edges(10, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0},
                                {0, 5}, {1, 6}, {2, 7}, {3, 8}, {4, 9},
                                {5, 7}, {7, 9}, {9, 6}, {6, 8}, {8, 5}});
}

void report(const char* name, double serial_ms, double parallel_ms, bool match) {
  std::printf("%-28s %10.1f ms %10.1f ms   x%.2f   %s\n", name, serial_ms, parallel_ms,
              parallel_ms > 0 ? serial_ms / parallel_ms : 0.0, match ? "match" : "MISMATCH");
}

int bench_worst_pinning(bool quick) {
  Graph g = quick ? cycle(7) : petersen();
  auto t0 = clock_type::now();
  auto serial = worst_pinning_si_serial(g, 1.0);
  double st = ms_since(t0);
  auto t1 = clock_type::now();
  auto parallel = worst_pinning_si(g, 1.0);
  double pt = ms_since(t1);
  bool match = serial.report.inf_norm == parallel.report.inf_norm &&
               serial.report.max_eigenvalue == parallel.report.max_eigenvalue &&
               serial.witness_inf_norm.assignments() == parallel.witness_inf_norm.assignments();
  report("worst-pinning scan", st, pt, match);
  return match ? 0 : 1;
}

int bench_mixing(bool quick) {
  Graph g = cycle(quick ? 8 : 12);
  auto m = transition_matrix(g, 1.0);
  auto t0 = clock_type::now();
  auto serial = exact_mixing_time_serial(m);
  double st = ms_since(t0);
  auto t1 = clock_type::now();
  auto parallel = exact_mixing_time(m);
  double pt = ms_since(t1);
  bool match = serial.t_mix == parallel.t_mix && serial.worst_tv == parallel.worst_tv;
  report("exact mixing (matrix power)", st, pt, match);
  return match ? 0 : 1;
}

int bench_tree_sweep(bool quick) {
  auto trees = enumerate_rooted_trees(quick ? 11 : 13, 3);
  const double lambda = 0.5 * critical_fugacity(4);
  auto t0 = clock_type::now();
  double serial_max = 0.0;
  for (const auto& t : trees) serial_max = std::max(serial_max, root_influence_sum(t, lambda).phi);
  double st = ms_since(t0);

  auto t1 = clock_type::now();
  double parallel_max = 0.0;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) reduction(max : parallel_max)
#endif
  for (std::size_t i = 0; i < trees.size(); ++i)
    parallel_max = std::max(parallel_max, root_influence_sum(trees[i], lambda).phi);
  double pt = ms_since(t1);
  report("tree influence sweep", st, pt, serial_max == parallel_max);
  return serial_max == parallel_max ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  bool quick = false;
  for (int i = 1; i < argc; ++i)
    if (std::string(argv[i]) == "--quick") quick = true;
#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (no OpenMP)\n");
#endif
  std::printf("%-28s %13s %13s %7s\n", "kernel", "serial", "openmp", "speedup");
  int rc = 0;
  rc |= bench_worst_pinning(quick);
  rc |= bench_mixing(quick);
  rc |= bench_tree_sweep(quick);
  return rc;
}
