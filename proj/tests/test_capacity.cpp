#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>

#include "echcap/capacity.hpp"
#include "echcap/isoperimetric.hpp"

using namespace echcap;

namespace {
bool fails_with(ErrorCode code, const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code() == code;
  }
  return false;
}
}  // namespace

TEST_CASE("closed-form staircase oracle") {
  // sorted {a*m + b*n}
  auto ball = ellipsoid_oracle(1, 1, 7);
  const long long ball_want[] = {0, 1, 1, 2, 2, 2, 3};
  for (int i = 0; i < 7; ++i) CHECK(ball[i] == ball_want[i]);

  auto e12 = ellipsoid_oracle(1, 2, 9);
  const long long e12_want[] = {0, 1, 2, 2, 3, 3, 4, 4, 4};
  for (int i = 0; i < 9; ++i) CHECK(e12[i] == e12_want[i]);

  auto e23 = ellipsoid_oracle(2, 3, 6);
  const long long e23_want[] = {0, 2, 3, 4, 5, 6};
  for (int i = 0; i < 6; ++i) CHECK(e23[i] == e23_want[i]);

  // rational legs scale the whole staircase
  auto half = ellipsoid_oracle(Rat(1, 2), Rat(1, 2), 7);
  for (int i = 0; i < 7; ++i) CHECK(half[i] == Rat(ball_want[i], 2));
}

TEST_CASE("ball capacities via the engine") {
  Curve T = make_triangle(1, 1);
  auto rs = capacities_range(T, 7, Mode::convex);
  const long long want[] = {0, 1, 1, 2, 2, 2, 3};
  const size_t ties[] = {1, 3, 1, 6, 3, 1, 12};
  for (int i = 0; i < 7; ++i) {
    CHECK(rs[i].exact);
    CHECK(rs[i].value_exact == want[i]);
    CHECK(rs[i].optimal_paths.size() == ties[i]);
    CHECK(rs[i].unique_optimum == (ties[i] == 1));
  }
  // k = 1 is realized by the single-vertex path at the origin
  CHECK(rs[0].optimal_paths.front().is_single_vertex());
}

TEST_CASE("ellipsoid capacities match the oracle") {
  for (auto [a, b] : {std::pair<int, int>{1, 1}, {1, 2}, {2, 3}, {1, 5}}) {
    auto oracle = ellipsoid_oracle(a, b, 20);
    auto rs = capacities_range(make_triangle(a, b), 20, Mode::convex);
    for (int i = 0; i < 20; ++i) {
      CHECK(rs[i].exact);
      CHECK(rs[i].value_exact == oracle[i]);
    }
  }
}

TEST_CASE("quarter circle against exhaustive enumeration, with tie sets") {
  Curve QC = make_quarter_circle();
  const double s2 = std::sqrt(2.0), s5 = std::sqrt(5.0);
  const double want[] = {0,      1,      s2,         2,          1 + s2,     2 * s2,
                         1 + s5, 2 + s2, 1 + 2 * s2, 2 + s5,     3 + s2,     4.650281539873};
  const size_t ties[] = {1, 2, 1, 1, 2, 1, 2, 1, 2, 4, 2, 2};
  for (int k = 1; k <= 12; ++k) {
    auto e = capacity(QC, k, Mode::convex);
    auto b = brute_force_capacity(QC, k, Mode::convex, 14);
    CHECK(e.value == doctest::Approx(want[k - 1]).epsilon(1e-9));
    CHECK(e.value == doctest::Approx(b.value).epsilon(1e-12));
    CHECK(e.optimal_paths.size() == ties[k - 1]);
    CHECK(b.optimal_paths.size() == ties[k - 1]);
    // identical tie sets, not just counts
    for (size_t i = 0; i < e.optimal_paths.size(); ++i)
      CHECK(e.optimal_paths[i] == b.optimal_paths[i]);
    CHECK_FALSE(e.exact);
  }
}

TEST_CASE("optimal region size meets the threshold exactly") {
  // the engine minimizes over L >= k, but an optimum always exists with L == k
  Curve QC = make_quarter_circle();
  for (int k : {5, 9, 12}) {
    auto e = capacity(QC, k, Mode::convex);
    bool some_exact = false;
    for (const auto& p : e.optimal_paths) some_exact = some_exact || count_L(p) == k;
    CHECK(some_exact);
  }
  Curve T = make_triangle(1, 1);
  auto c = capacity(T, 9, Mode::concave);
  bool some = false;
  for (const auto& p : c.optimal_paths) some = some || count_L_prime(p) == 8;
  CHECK(some);
}

TEST_CASE("convex and concave modes agree on triangles") {
  Curve T = make_triangle(1, 1);
  auto conv = capacities_range(T, 20, Mode::convex);
  auto conc = capacities_range(T, 20, Mode::concave);
  for (int i = 0; i < 20; ++i) CHECK(conv[i].value_exact == conc[i].value_exact);

  Curve E = make_triangle(1, 2);
  auto cv = capacities_range(E, 12, Mode::convex);
  auto cc = capacities_range(E, 12, Mode::concave);
  for (int i = 0; i < 12; ++i) CHECK(cv[i].value_exact == cc[i].value_exact);
}

TEST_CASE("engine equals exhaustive search on random curves") {
  for (std::uint64_t seed : {11ull, 12ull, 13ull}) {
    Curve c = random_convex_curve(seed);
    for (int k = 1; k <= 8; ++k) {
      auto fast = capacity(c, k, Mode::convex);
      auto slow = brute_force_capacity(c, k, Mode::convex, 10);
      CHECK(fast.value_exact == slow.value_exact);
      CHECK(fast.optimal_paths.size() == slow.optimal_paths.size());
    }
  }
  for (std::uint64_t seed : {21ull, 22ull}) {
    Curve c = random_concave_curve(seed);
    for (int k = 1; k <= 8; ++k) {
      auto fast = capacity(c, k, Mode::concave);
      auto slow = brute_force_capacity(c, k, Mode::concave, 10);
      CHECK(fast.value_exact == slow.value_exact);
      CHECK(fast.optimal_paths.size() == slow.optimal_paths.size());
    }
  }
}

TEST_CASE("axioms: vanishing start, monotone staircase, conformality") {
  Curve T = make_triangle(1, 1);
  auto caps = capacities_range(T, 15, Mode::convex);
  CHECK(caps.front().value_exact == 0);
  for (size_t i = 1; i < caps.size(); ++i)
    CHECK(caps[i - 1].value_exact <= caps[i].value_exact);

  Rat f(7, 3);
  auto scaled = capacities_range(scale_curve(T, f), 12, Mode::convex);
  for (int i = 0; i < 12; ++i) CHECK(scaled[i].value_exact == f * caps[i].value_exact);

  Curve QC = make_quarter_circle();
  auto qcr = capacities_range(QC, 12, Mode::convex);
  CHECK(qcr.front().value == 0.0);
  for (size_t i = 1; i < qcr.size(); ++i) CHECK(qcr[i - 1].value <= qcr[i].value + 1e-12);
}

TEST_CASE("determinism: parallel equals serial, including node counts") {
  Curve T = make_triangle(1, 1);
  EngineOptions par;
  par.jobs = 4;
  auto p = capacity(T, 12, Mode::convex, par);
  auto s = capacity_serial(T, 12, Mode::convex);
  CHECK(p.value_exact == s.value_exact);
  CHECK(p.nodes_explored == s.nodes_explored);
  REQUIRE(p.optimal_paths.size() == s.optimal_paths.size());
  for (size_t i = 0; i < p.optimal_paths.size(); ++i)
    CHECK(p.optimal_paths[i] == s.optimal_paths[i]);

  Curve QC = make_quarter_circle();
  auto pq = capacity(QC, 25, Mode::convex, par);
  auto sq = capacity_serial(QC, 25, Mode::convex);
  CHECK(pq.value == sq.value);
  CHECK(pq.nodes_explored == sq.nodes_explored);
  CHECK(pq.optimal_paths == sq.optimal_paths);

  // two identical runs give identical everything
  auto again = capacity(T, 12, Mode::convex, par);
  CHECK(again.nodes_explored == p.nodes_explored);
  CHECK(again.optimal_paths == p.optimal_paths);
}

TEST_CASE("reported optima are genuinely optimal and sorted") {
  Curve QC = make_quarter_circle();
  auto e = capacity(QC, 10, Mode::convex);
  REQUIRE(e.optimal_paths.size() == 4);
  for (size_t i = 1; i < e.optimal_paths.size(); ++i)
    CHECK(e.optimal_paths[i - 1] < e.optimal_paths[i]);
  for (const auto& p : e.optimal_paths) {
    CHECK(count_L(p) >= 10);
    CHECK(path_action(QC, p) == doctest::Approx(e.value).epsilon(1e-12));
  }
}

TEST_CASE("error paths") {
  Curve T = make_triangle(1, 1);
  CHECK(fails_with(ErrorCode::InvalidArgument, [&] { capacity(T, 0, Mode::convex); }));

  Curve partial =
      make_polygonal_curve({{Rat(2), Rat(1)}, {Rat(1), Rat(2)}}, ShapeClass::convex);
  CHECK(fails_with(ErrorCode::IncompleteCurve, [&] { capacity(partial, 3, Mode::convex); }));

  Curve S = make_polygonal_curve(
      {{Rat(3), Rat(0)}, {Rat(5, 2), Rat(3, 2)}, {Rat(3, 2), Rat(5, 2)}, {Rat(0), Rat(3)}},
      ShapeClass::convex);
  CHECK(fails_with(ErrorCode::ModeMismatch, [&] { capacity(S, 3, Mode::concave); }));

  EngineOptions tiny;
  tiny.node_budget = 10;
  CHECK(fails_with(ErrorCode::SearchBudgetExceeded,
                   [&] { capacity(make_quarter_circle(), 40, Mode::convex, tiny); }));

  CHECK(fails_with(ErrorCode::BoxTooSmall,
                   [&] { brute_force_capacity(T, 9, Mode::convex, 2); }));
}

TEST_CASE("large-k spot values") {
  Curve T = make_triangle(1, 1);
  auto caps = capacities_range(T, 100, Mode::convex);
  CHECK(caps[49].value_exact == 9);
  CHECK(caps[99].value_exact == 13);
  // c_231 = 20: the staircase value at a triangular-number boundary
  auto c231 = capacity(T, 231, Mode::convex);
  CHECK(c231.value_exact == 20);
}
