#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <set>

#include "echcap/isoperimetric.hpp"

using namespace echcap;

namespace {
const double kPi = std::acos(-1.0);

bool fails_with(ErrorCode code, const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code() == code;
  }
  return false;
}

Curve dent_curve() {
  return make_polygonal_curve(
      {{Rat(1), Rat(0)}, {Rat(1, 2), Rat(1, 4)}, {Rat(1, 4), Rat(1, 2)}, {Rat(0), Rat(1)}},
      ShapeClass::concave);
}
}  // namespace

TEST_CASE("ratio values") {
  Curve T = make_triangle(1, 1);
  Curve QC = make_quarter_circle();
  // the self ratio is 2*sqrt(area)
  CHECK(isoperimetric_ratio(T, T, Mode::convex) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(isoperimetric_ratio(QC, QC, Mode::convex) ==
        doctest::Approx(2 * std::sqrt(kPi / 4)).epsilon(1e-9));
  // A_T(QC) = sqrt(2), area(QC) = pi/4
  CHECK(isoperimetric_ratio(T, QC, Mode::convex) ==
        doctest::Approx(2 * std::sqrt(2.0) / std::sqrt(kPi)).epsilon(1e-9));
}

TEST_CASE("convex inequality: triangle base against the quarter circle") {
  Curve T = make_triangle(1, 1);
  Curve QC = make_quarter_circle();
  auto chk = check_inequality(T, QC, Mode::convex);
  CHECK(chk.holds);
  CHECK_FALSE(chk.equality);
  CHECK_FALSE(chk.exact);  // parametric target: float decision
  CHECK(chk.ratio_base == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(chk.slack == doctest::Approx(0.181555559).epsilon(1e-7));
  CHECK(chk.slack == doctest::Approx(chk.ratio_target - chk.ratio_base).epsilon(1e-12));
}

TEST_CASE("exact equality cases") {
  Curve T = make_triangle(1, 1);
  SUBCASE("a curve against itself") {
    auto chk = check_inequality(T, T, Mode::convex);
    CHECK(chk.holds);
    CHECK(chk.exact);
    CHECK(chk.equality);
    CHECK(chk.slack == 0.0);
  }
  SUBCASE("scaling pairs, both modes") {
    Curve T2 = scale_curve(T, Rat(7, 3));
    auto chk = check_inequality(T, T2, Mode::convex);
    CHECK(chk.holds);
    CHECK(chk.exact);
    CHECK(chk.equality);
    CHECK(chk.slack == 0.0);

    Curve D = dent_curve();
    Curve D5 = scale_curve(D, Rat(5, 2));
    auto chk2 = check_inequality(D, D5, Mode::concave);
    CHECK(chk2.holds);
    CHECK(chk2.equality);
  }
  SUBCASE("distinct polygonal pair is strict and exact") {
    Curve S = make_polygonal_curve({{Rat(3), Rat(0)},
                                    {Rat(5, 2), Rat(3, 2)},
                                    {Rat(3, 2), Rat(5, 2)},
                                    {Rat(0), Rat(3)}},
                                   ShapeClass::convex);
    auto chk = check_inequality(T, S, Mode::convex);
    CHECK(chk.holds);
    CHECK(chk.exact);
    CHECK_FALSE(chk.equality);
    CHECK(chk.slack > 0);
  }
}

TEST_CASE("concave inequality direction flips") {
  Curve D = dent_curve();
  Curve E = make_polygonal_curve(
      {{Rat(1), Rat(0)}, {Rat(2, 3), Rat(1, 6)}, {Rat(1, 6), Rat(2, 3)}, {Rat(0), Rat(1)}},
      ShapeClass::concave);
  auto chk = check_inequality(D, E, Mode::concave);
  CHECK(chk.holds);
  CHECK(chk.exact);
  // concave slack is base - target
  CHECK(chk.slack == doctest::Approx(chk.ratio_base - chk.ratio_target).epsilon(1e-12));
  CHECK(chk.slack >= 0);
}

TEST_CASE("inequality input validation") {
  // a curve with genuine convex turns; a single segment would be admissible
  // for either mode
  Curve S = make_polygonal_curve(
      {{Rat(1), Rat(0)}, {Rat(7, 8), Rat(1, 2)}, {Rat(1, 2), Rat(7, 8)}, {Rat(0), Rat(1)}},
      ShapeClass::convex);
  Curve D = dent_curve();
  CHECK(fails_with(ErrorCode::ModeMismatch, [&] { check_inequality(S, D, Mode::convex); }));
  CHECK(fails_with(ErrorCode::ModeMismatch, [&] { check_inequality(D, S, Mode::concave); }));
}

TEST_CASE("random convex curves are valid and deterministic") {
  std::set<std::string> fps;
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    Curve c = random_convex_curve(seed);
    CHECK(c.complete());
    CHECK(c.shape_class() == ShapeClass::convex);
    CHECK(area(c) > 0);
    Curve again = random_convex_curve(seed);
    CHECK(c.fingerprint() == again.fingerprint());
    fps.insert(c.fingerprint());
  }
  CHECK(fps.size() >= 28);  // draws are distinct in practice
}

TEST_CASE("random concave curves live in the unit square") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    Curve c = random_concave_curve(seed);
    CHECK(c.complete());
    CHECK(c.shape_class() == ShapeClass::concave);
    for (const auto& v : c.vertices()) {
      CHECK(v.x >= 0);
      CHECK(v.x <= 1);
      CHECK(v.y >= 0);
      CHECK(v.y <= 1);
    }
    CHECK(c.fingerprint() == random_concave_curve(seed).fingerprint());
  }
}

TEST_CASE("trial batches hold, flag equalities, and ignore the thread count") {
  auto rows = inequality_trials(1000, 40, Mode::convex, 1);
  REQUIRE(rows.size() == 40);
  int equalities = 0;
  for (const auto& r : rows) {
    CHECK(r.holds);
    CHECK(r.slack >= -1e-9);
    if (r.equality) {
      ++equalities;
      CHECK(r.slack == 0.0);
    }
  }
  CHECK(equalities == 5);  // exactly the scheduled scaling pairs

  auto par = inequality_trials(1000, 40, Mode::convex, 4);
  REQUIRE(par.size() == 40);
  for (int i = 0; i < 40; ++i) {
    CHECK(par[i].seed == rows[i].seed);
    CHECK(par[i].slack == rows[i].slack);
    CHECK(par[i].base_fingerprint == rows[i].base_fingerprint);
    CHECK(par[i].target_fingerprint == rows[i].target_fingerprint);
  }

  auto concave = inequality_trials(2000, 40, Mode::concave, 0);
  int ceq = 0;
  for (const auto& r : concave) {
    CHECK(r.holds);
    if (r.equality) ++ceq;
  }
  CHECK(ceq == 5);
}

TEST_CASE("unit square reflection") {
  Curve D = dent_curve();
  Curve R = unit_square_reflection(D);
  CHECK(R.shape_class() == ShapeClass::convex);
  CHECK(R.complete());
  // (1,0) and (0,1) cap the reflected chain
  CHECK(R.vertices().front().x == 1);
  CHECK(R.vertices().front().y == 0);
  CHECK(R.vertices().back().x == 0);
  CHECK(R.vertices().back().y == 1);

  SUBCASE("rejects bad inputs") {
    Curve S = make_polygonal_curve(
        {{Rat(1), Rat(0)}, {Rat(7, 8), Rat(1, 2)}, {Rat(1, 2), Rat(7, 8)}, {Rat(0), Rat(1)}},
        ShapeClass::convex);
    CHECK(fails_with(ErrorCode::ShapeClassViolation, [&] { unit_square_reflection(S); }));
    Curve big = make_polygonal_curve({{Rat(2), Rat(0)}, {Rat(1, 2), Rat(1, 2)}, {Rat(0), Rat(2)}},
                                     ShapeClass::concave);
    CHECK(fails_with(ErrorCode::InvalidArgument, [&] { unit_square_reflection(big); }));
    Curve QC = make_quarter_circle();
    CHECK(fails_with(ErrorCode::InvalidArgument, [&] { unit_square_reflection(QC); }));
  }
}

TEST_CASE("reflection identity") {
  // A_{refl b}(refl t) + A_b(t) == 2 exactly for unit-square concave pairs
  for (std::uint64_t seed : {3u, 7u, 11u, 19u}) {
    Curve b = random_concave_curve(seed);
    Curve t = random_concave_curve(seed + 100);
    CHECK(reflection_identity_value_exact(b, t) == 2);
    CHECK(reflection_identity_value(b, t) == doctest::Approx(2.0).epsilon(1e-9));
  }
  Curve D = dent_curve();
  CHECK(reflection_identity_value_exact(D, D) == 2);
}

TEST_CASE("continuity of the cross action") {
  Curve T = make_triangle(1, 1);
  Curve QC = make_quarter_circle();

  SUBCASE("inscribed polygons refining to the arc") {
    // vertices at offset angles so no polygon contains the arc's action maximizer
    std::vector<Curve> targets;
    for (int n : {4, 8, 16, 32}) {
      std::vector<RatPoint> pts{{Rat(1), Rat(0)}};
      long long den = 1 << 14;
      for (int i = 0; i < n; ++i) {
        double th = (kPi / 2) * (i + 0.5) / n;
        pts.push_back({Rat(std::llround(std::cos(th) * den), den),
                       Rat(std::llround(std::sin(th) * den), den)});
      }
      pts.push_back({Rat(0), Rat(1)});
      targets.push_back(make_polygonal_curve(pts, ShapeClass::convex));
    }
    auto rows = continuity_probe(T, targets, QC, Mode::convex);
    REQUIRE(rows.size() == 4);
    for (size_t i = 0; i + 1 < rows.size(); ++i) CHECK(rows[i + 1].gap < rows[i].gap);
    CHECK(rows.back().gap < 5e-3);
  }

  SUBCASE("constant family has zero gaps") {
    std::vector<Curve> targets{QC, QC, QC};
    auto rows = continuity_probe(T, targets, QC, Mode::convex);
    for (const auto& r : rows) CHECK(r.gap == doctest::Approx(0.0).epsilon(1e-12));
  }

  SUBCASE("scaled family converges linearly") {
    std::vector<Curve> targets;
    for (int j = 1; j <= 4; ++j) targets.push_back(scale_curve(T, Rat(j + 1, j)));
    auto rows = continuity_probe(T, targets, T, Mode::convex);
    // A_T(T) = 2*area(T) = 1 and the cross action scales linearly
    for (int j = 1; j <= 4; ++j) {
      CHECK(rows[j - 1].value == doctest::Approx((j + 1.0) / j).epsilon(1e-12));
      CHECK(rows[j - 1].gap == doctest::Approx(1.0 / j).epsilon(1e-9));
    }
  }
}
