#pragma once

#include <cstdint>
#include <vector>

#include "echcap/geometry.hpp"
#include "echcap/lattice_paths.hpp"

namespace echcap {

struct EngineOptions {
  int jobs = 0;                     // 0: library default (all OpenMP threads)
  std::uint64_t node_budget = 200'000'000;  // per root branch; SearchBudgetExceeded
  double tie_tolerance = 1e-9;      // parametric curves; exact curves use 0
};

struct CapacityResult {
  int k = 0;
  Mode mode = Mode::convex;
  double value = 0;
  bool exact = false;
  Rat value_exact{};
  std::vector<IntegralPath> optimal_paths;  // sorted, lex order
  bool unique_optimum = false;
  bool approx_ties = false;  // distinct float values inside the tie window
  std::uint64_t nodes_explored = 0;
};

// k-th capacity of the domain bounded by the curve:
//   convex mode:  min  path_action over monotone convex paths with L(path) >= k
//   concave mode: max  path_action over concave paths with L'(path) <= k-1
// All optima inside the certified search box are returned. Deterministic for a
// fixed curve and k regardless of jobs. pre: curve complete, matching mode,
// k >= 1; errors: IncompleteCurve, ModeMismatch, SearchBudgetExceeded
CapacityResult capacity(const Curve& curve, int k, Mode mode, const EngineOptions& opts = {});

// single-threaded reference of the same search; used by tests and the
// benchmark target
CapacityResult capacity_serial(const Curve& curve, int k, Mode mode,
                               const EngineOptions& opts = {});

// capacities for k = 1..k_max with warm-started bounds; values are
// nondecreasing in k
std::vector<CapacityResult> capacities_range(const Curve& curve, int k_max, Mode mode,
                                             const EngineOptions& opts = {});

// Exhaustive oracle: enumerates every valid path with width and height at most
// box_bound by direct vertex walks, buckets by the exact L (convex) or L'
// (concave) count, and optimizes inside the bucket (L == k, L' == k-1).
// errors: BoxTooSmall when an optimum touches the box boundary
CapacityResult brute_force_capacity(const Curve& curve, int k, Mode mode, long long box_bound,
                                    const EngineOptions& opts = {});

// sorted multiset {a*m + b*n : m, n >= 0}, first k_max entries; closed form for
// the capacities of the triangle with legs a, b
std::vector<Rat> ellipsoid_oracle(const Rat& a, const Rat& b, int k_max);

}  // namespace echcap
