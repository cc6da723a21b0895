// Serial reference vs OpenMP kernels: reduced-graph construction and
// multi-restart search on grid instances with adjacency constraints.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "cmapf/cmis.hpp"
#include "cmapf/reduction.hpp"

using namespace cmapf;

namespace {

template <class F>
double seconds(F&& f, int reps) {
  const auto start = std::chrono::steady_clock::now();
  for (int i = 0; i < reps; ++i) f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() / reps;
}

}  // namespace

int main(int argc, char** argv) {
  const std::size_t n = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 16;
  const std::size_t runs = argc > 2 ? std::strtoul(argv[2], nullptr, 10) : 32;
  int threads = 1;
#ifdef _OPENMP
  threads = omp_get_max_threads();
#endif
  std::printf("grid %zux%zu, %zu restarts, %d threads\n", n, n, runs, threads);

  const auto g = grid_graph(n);
  const auto c = adjacency_constraints(g);
  const CmisInstance inst{g, c, {}};
  const auto w = maximal_independent(inst, SelectionRule::greedy_degree());

  ReducedGraph serial_rg, parallel_rg;
  const double rs = seconds([&] { serial_rg = build_reduced(g, c, w, Execution::serial); }, 3);
  const double rp = seconds([&] { parallel_rg = build_reduced(g, c, w, Execution::parallel); }, 3);
  std::printf("%-16s |W|=%-4zu serial %9.4fs  parallel %9.4fs  speedup %5.2fx  %s\n", "build_reduced", w.size(), rs,
              rp, rs / rp, serial_rg == parallel_rg ? "identical" : "MISMATCH");

  RestartResult serial_mr, parallel_mr;
  const double ms = seconds([&] { serial_mr = multi_restart(inst, runs, 0, Execution::serial); }, 1);
  const double mp = seconds([&] { parallel_mr = multi_restart(inst, runs, 0, Execution::parallel); }, 1);
  std::printf("%-16s best=%-4zu serial %9.4fs  parallel %9.4fs  speedup %5.2fx  %s\n", "multi_restart",
              serial_mr.best.size(), ms, mp, ms / mp, serial_mr.runs == parallel_mr.runs ? "identical" : "MISMATCH");

  return serial_rg == parallel_rg && serial_mr.runs == parallel_mr.runs ? 0 : 1;
}
