#include "echcap/isoperimetric.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace echcap {

namespace {

Rat grid(std::mt19937_64& rng, long long lo_num, long long hi_num, long long den) {
  std::uniform_int_distribution<long long> d(lo_num, hi_num);
  return Rat(d(rng), den);
}

Rat rcross(const RatPoint& p, const RatPoint& q) { return p.x * q.y - p.y * q.x; }

RatPoint rsub(const RatPoint& p, const RatPoint& q) { return {p.x - q.x, p.y - q.y}; }

// chain through the angle-sorted points keeping only left turns (convex,
// outer hull side) or right turns (concave, the side facing the origin)
std::vector<RatPoint> angular_chain(std::vector<RatPoint> pts, bool convex) {
  std::sort(pts.begin(), pts.end(), [](const RatPoint& p, const RatPoint& q) {
    Rat c = rcross(p, q);
    if (c != 0) return c > 0;
    return p.x * p.x + p.y * p.y < q.x * q.x + q.y * q.y;
  });
  // collinear-with-origin duplicates: convex keeps the far point, concave the near
  std::vector<RatPoint> uniq;
  for (const auto& p : pts) {
    if (!uniq.empty() && rcross(uniq.back(), p) == 0) {
      if (convex) uniq.back() = p;  // sorted near-to-far on the shared ray
      continue;
    }
    uniq.push_back(p);
  }
  std::vector<RatPoint> chain;
  for (const auto& p : uniq) {
    while (chain.size() >= 2) {
      Rat turn = rcross(rsub(chain.back(), chain[chain.size() - 2]), rsub(p, chain.back()));
      if (convex ? turn < 0 : turn > 0)
        chain.pop_back();
      else
        break;
    }
    chain.push_back(p);
  }
  return chain;
}

int resolve_jobs(int jobs) {
#ifdef _OPENMP
  return jobs > 0 ? jobs : omp_get_max_threads();
#else
  (void)jobs;
  return 1;
#endif
}

}  // namespace

Curve random_convex_curve(std::uint64_t seed, const CurveGenParams& params) {
  if (params.n_points < 1 || params.denominator < 2 || params.radius_lo <= 0 ||
      params.radius_hi <= params.radius_lo)
    fail(ErrorCode::InvalidArgument, "curve generator parameters out of range");
  std::mt19937_64 rng(seed);
  const long long den = params.denominator;
  const long long rlo = std::max<long long>(1, std::llround(params.radius_lo * den));
  const long long rhi = std::max(rlo + 1, std::llround(params.radius_hi * den));
  std::uniform_real_distribution<double> ang(0.0, 1.0);

  for (int attempt = 0; attempt < 64; ++attempt) {
    std::vector<RatPoint> pts;
    Rat maxx(0), maxy(0);
    for (int i = 0; i < params.n_points; ++i) {
      // stratified angles keep the samples spread out so most of them survive
      // the convex-position pass
      double th = (std::acos(-1.0) / 2) * (i + ang(rng)) / params.n_points;
      double r = rat_to_double(grid(rng, rlo, rhi, den));
      long long nx = std::llround(r * std::cos(th) * den);
      long long ny = std::llround(r * std::sin(th) * den);
      if (nx < 1 || ny < 1) continue;  // keep samples strictly inside the quadrant
      RatPoint p{Rat(nx, den), Rat(ny, den)};
      maxx = std::max(maxx, p.x);
      maxy = std::max(maxy, p.y);
      pts.push_back(p);
    }
    // axis endpoints strictly beyond the samples so they stay in convex position
    pts.push_back({maxx + grid(rng, 1, den / 4 + 1, den), Rat(0)});
    pts.push_back({Rat(0), maxy + grid(rng, 1, den / 4 + 1, den)});
    try {
      return make_polygonal_curve(angular_chain(std::move(pts), true), ShapeClass::convex);
    } catch (const Error&) {
      // resample
    }
  }
  fail(ErrorCode::GenerationFailed, "convex curve generation did not converge");
}

Curve random_concave_curve(std::uint64_t seed, const CurveGenParams& params) {
  if (params.n_points < 1 || params.denominator < 8)
    fail(ErrorCode::InvalidArgument, "curve generator parameters out of range");
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  const long long den = params.denominator;

  // Build the reflected convex partner inside the unit square first (endpoints
  // (1,0) and (0,1), axis-completion edges along x=1 and y=1), then map its
  // middle section back through p -> (1,1) - p. Along that middle section x
  // strictly decreases and y strictly increases, so the reflected list is
  // star-shaped and right-turning by construction.
  for (int attempt = 0; attempt < 64; ++attempt) {
    Rat a = grid(rng, den / 2, den - 1, den), b = grid(rng, den / 2, den - 1, den);
    std::vector<RatPoint> pts{{Rat(1), Rat(0)}, {Rat(1), 1 - b}, {1 - a, Rat(1)}, {Rat(0), Rat(1)}};
    for (int i = 0; i < params.n_points; ++i) {
      // sample strictly below the chord between (a,0) and (0,b): these become
      // the inward dents of the concave curve
      Rat x = grid(rng, 1, den - 1, den) * a;
      Rat ymax = b * (1 - x / a);
      long long ynum = rat_floor(ymax * den).convert_to<long long>();
      if (ynum < 2) continue;
      RatPoint p{x, grid(rng, 1, ynum - 1, den)};
      pts.push_back({1 - p.x, 1 - p.y});
    }
    std::vector<RatPoint> chain = angular_chain(std::move(pts), true);
    std::vector<RatPoint> back;
    for (auto it = chain.rbegin() + 1; it != chain.rend() - 1; ++it)
      back.push_back({1 - it->x, 1 - it->y});
    try {
      return make_polygonal_curve(std::move(back), ShapeClass::concave);
    } catch (const Error&) {
      // resample
    }
  }
  fail(ErrorCode::GenerationFailed, "concave curve generation did not converge");
}

double isoperimetric_ratio(const Curve& base, const Curve& target, Mode mode) {
  return cross_action(base, target, mode) / std::sqrt(area(target));
}

InequalityCheck check_inequality(const Curve& base, const Curve& target, Mode mode) {
  if (!base.complete() || !target.complete())
    fail(ErrorCode::IncompleteCurve, "inequality checks need complete curves");
  if (!base.matches_mode(mode) || !target.matches_mode(mode))
    fail(ErrorCode::ModeMismatch, "curve shape does not match the requested mode");

  InequalityCheck out;
  out.ratio_target = isoperimetric_ratio(base, target, mode);
  out.ratio_base = 2.0 * std::sqrt(area(base));  // A_base(base) = 2*A(base) exactly
  bool conv = mode_is_convex(mode);
  out.slack = conv ? out.ratio_target - out.ratio_base : out.ratio_base - out.ratio_target;

  if (base.kind() == CurveKind::polygonal && target.kind() == CurveKind::polygonal) {
    // compare A_base(target)^2 with 4*A(base)*A(target): squaring keeps the
    // order (both sides positive) and stays rational
    Rat lhs = cross_action_exact(base, target, mode);
    Rat gap = lhs * lhs - 4 * area_exact(base) * area_exact(target);
    out.exact = true;
    out.holds = conv ? gap >= 0 : gap <= 0;
    out.equality = gap == 0;
    if (out.equality) out.slack = 0.0;
  } else {
    out.exact = false;
    out.holds = out.slack >= -1e-9;
    out.equality = std::fabs(out.slack) <= 1e-9;
  }
  return out;
}

Curve unit_square_reflection(const Curve& c) {
  if (c.kind() != CurveKind::polygonal)
    fail(ErrorCode::InvalidArgument, "reflection is defined for polygonal curves");
  if (!c.complete() || !c.concave_ok())
    fail(ErrorCode::ShapeClassViolation, "reflection needs a complete concave curve");
  const auto& vs = c.vertices();
  for (const auto& v : vs)
    if (v.x > 1 || v.y > 1)
      fail(ErrorCode::InvalidArgument, "curve is not inside the unit square");

  std::vector<RatPoint> out;
  out.push_back({Rat(1), Rat(0)});
  for (auto it = vs.rbegin(); it != vs.rend(); ++it) {
    RatPoint q{Rat(1) - it->x, Rat(1) - it->y};
    if (!out.empty() && out.back().x == q.x && out.back().y == q.y) continue;
    out.push_back(q);
  }
  RatPoint last{Rat(0), Rat(1)};
  if (!(out.back().x == last.x && out.back().y == last.y)) out.push_back(last);
  return make_polygonal_curve(std::move(out), ShapeClass::convex);
}

double reflection_identity_value(const Curve& base, const Curve& target) {
  Curve rb = unit_square_reflection(base), rt = unit_square_reflection(target);
  return cross_action(rb, rt, Mode::convex) + cross_action(base, target, Mode::concave);
}

Rat reflection_identity_value_exact(const Curve& base, const Curve& target) {
  Curve rb = unit_square_reflection(base), rt = unit_square_reflection(target);
  return cross_action_exact(rb, rt, Mode::convex) +
         cross_action_exact(base, target, Mode::concave);
}

std::vector<ContinuityRow> continuity_probe(const Curve& base, const std::vector<Curve>& targets,
                                            const Curve& limit, Mode mode) {
  double at_limit = cross_action(base, limit, mode);
  std::vector<ContinuityRow> rows;
  rows.reserve(targets.size());
  for (size_t j = 0; j < targets.size(); ++j) {
    double v = cross_action(base, targets[j], mode);
    rows.push_back({static_cast<int>(j), v, std::fabs(v - at_limit)});
  }
  return rows;
}

std::vector<TrialRow> inequality_trials(std::uint64_t seed_base, int n_trials, Mode mode,
                                        int jobs) {
  if (n_trials < 0) fail(ErrorCode::InvalidArgument, "negative trial count");
  std::vector<TrialRow> rows(n_trials);
  bool conv = mode_is_convex(mode);
  int nt = resolve_jobs(jobs);

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(nt)
#endif
  for (int i = 0; i < n_trials; ++i) {
    std::uint64_t s = seed_base + static_cast<std::uint64_t>(i);
    Curve base = conv ? random_convex_curve(2 * s) : random_concave_curve(2 * s);
    Curve target = [&] {
      if (i % 8 == 7) {  // exact scaling pair: the equality case
        std::mt19937_64 rng(2 * s + 1);
        std::uniform_int_distribution<long long> d(1, 6);
        Rat c(d(rng), d(rng));
        return scale_curve(base, c);
      }
      return conv ? random_convex_curve(2 * s + 1) : random_concave_curve(2 * s + 1);
    }();
    InequalityCheck chk = check_inequality(base, target, mode);
    rows[i] = {s,          mode,       chk.slack,
               chk.holds,  chk.equality, base.fingerprint(),
               target.fingerprint()};
  }
  (void)nt;
  return rows;
}

}  // namespace echcap
