// Wall-clock comparison of the OpenMP engine against the single-threaded
// reference on a fixed workload. Also re-checks the determinism contract:
// both engines must report identical values, tie sets, and node counts.
//
// usage: bench_engines [repetitions]
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "echcap/capacity.hpp"

using namespace echcap;

namespace {

double time_once(const std::function<CapacityResult()>& fn, CapacityResult& out) {
  auto t0 = std::chrono::steady_clock::now();
  out = fn();
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

int main(int argc, char** argv) {
  int reps = argc > 1 ? std::atoi(argv[1]) : 3;
  if (reps < 1) reps = 1;

#ifdef _OPENMP
  std::printf("threads: %d, repetitions: %d (best-of)\n", omp_get_max_threads(), reps);
#else
  std::printf("OpenMP not enabled; both columns run serially. repetitions: %d\n", reps);
#endif

  struct Case {
    std::string name;
    Curve curve;
    int k;
    Mode mode;
  };
  std::vector<Case> cases;
  cases.push_back({"triangle(1,1)      k=200", make_triangle(1, 1), 200, Mode::convex});
  cases.push_back({"triangle(1,2)      k=150", make_triangle(1, 2), 150, Mode::convex});
  cases.push_back({"triangle(2,3)      k=120", make_triangle(2, 3), 120, Mode::convex});
  cases.push_back({"quarter_circle     k=120", make_quarter_circle(), 120, Mode::convex});
  cases.push_back({"quarter_circle     k=200", make_quarter_circle(), 200, Mode::convex});

  std::printf("%-26s %12s %12s %9s %14s\n", "case", "serial[ms]", "parallel[ms]", "speedup",
              "nodes");
  bool all_ok = true;
  double tot_serial = 0, tot_parallel = 0;
  for (const auto& c : cases) {
    CapacityResult rs, rp;
    double best_s = 1e300, best_p = 1e300;
    for (int r = 0; r < reps; ++r) {
      best_s = std::min(best_s, time_once([&] { return capacity_serial(c.curve, c.k, c.mode); },
                                          rs));
      best_p = std::min(best_p, time_once([&] { return capacity(c.curve, c.k, c.mode); }, rp));
    }
    bool same_value = rs.exact == rp.exact &&
                      (rs.exact ? rs.value_exact == rp.value_exact : rs.value == rp.value);
    bool same_search = rs.nodes_explored == rp.nodes_explored &&
                       rs.optimal_paths.size() == rp.optimal_paths.size();
    for (size_t i = 0; same_search && i < rs.optimal_paths.size(); ++i)
      same_search = rs.optimal_paths[i] == rp.optimal_paths[i];
    all_ok = all_ok && same_value && same_search;
    tot_serial += best_s;
    tot_parallel += best_p;
    std::printf("%-26s %12.1f %12.1f %8.2fx %14llu%s\n", c.name.c_str(), best_s, best_p,
                best_s / best_p, static_cast<unsigned long long>(rp.nodes_explored),
                same_value && same_search ? "" : "  MISMATCH");
  }
  std::printf("%-26s %12.1f %12.1f %8.2fx\n", "total", tot_serial, tot_parallel,
              tot_serial / tot_parallel);
  if (!all_ok) {
    std::printf("engines disagree; see MISMATCH rows\n");
    return 1;
  }
  return 0;
}
