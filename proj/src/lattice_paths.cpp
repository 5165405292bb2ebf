#include "echcap/lattice_paths.hpp"

#include <algorithm>
#include <numeric>

namespace echcap {

namespace {

long long cross_ll(const IntVec& a, const IntVec& b) { return a.x * b.y - a.y * b.x; }

long long gcd_ll(long long a, long long b) { return std::gcd(std::llabs(a), std::llabs(b)); }

// strict slope ordering between consecutive runs: convex paths turn clockwise
// (horizontal first, vertical last), concave paths counterclockwise
bool order_ok(const IntVec& s0, const IntVec& s1, Mode mode) {
  long long c = cross_ll(s0, s1);
  return mode_is_convex(mode) ? c < 0 : c > 0;
}

std::vector<IntVec> rebuild_vertices(IntVec start, const std::vector<PathEdge>& runs) {
  std::vector<IntVec> verts{start};
  IntVec pos = start;
  for (const auto& r : runs) {
    IntVec d = r.displacement();
    pos = {pos.x + d.x, pos.y + d.y};
    verts.push_back(pos);
  }
  return verts;
}

}  // namespace

IntegralPath IntegralPath::from_vertices(std::vector<IntVec> verts, Mode mode) {
  if (verts.empty()) fail(ErrorCode::EmptyInput, "path with no vertices");
  if (verts.size() == 1) return single_vertex(verts[0], mode);

  std::vector<PathEdge> runs;
  for (size_t i = 0; i + 1 < verts.size(); ++i) {
    long long dx = verts[i + 1].x - verts[i].x;
    long long dy = verts[i + 1].y - verts[i].y;
    if (dx == 0 && dy == 0) fail(ErrorCode::InvalidPath, "repeated path vertex");
    if (dx < 0 || dy > 0)
      fail(ErrorCode::InvalidPath, "path must move weakly right and weakly down");
    long long g = gcd_ll(dx, dy);
    IntVec step{dx / g, dy / g};
    if (!runs.empty() && runs.back().step == step)
      runs.back().mult += g;
    else
      runs.push_back({step, g});
  }
  for (size_t i = 0; i + 1 < runs.size(); ++i)
    if (!order_ok(runs[i].step, runs[i + 1].step, mode))
      fail(ErrorCode::InvalidPath, "run slopes out of order for the requested mode");
  if (verts.front().x != 0) fail(ErrorCode::InvalidPath, "path must start on the y-axis");
  if (verts.back().y != 0) fail(ErrorCode::InvalidPath, "path must end on the x-axis");
  if (verts.front().y < 0 || verts.back().x < 0)
    fail(ErrorCode::InvalidPath, "path leaves the closed positive quadrant");

  IntegralPath p;
  p.mode_ = mode;
  p.runs_ = std::move(runs);
  p.verts_ = rebuild_vertices(verts.front(), p.runs_);
  return p;
}

IntegralPath IntegralPath::from_runs(const std::vector<PathEdge>& runs, Mode mode) {
  long long height = 0, width = 0;
  for (const auto& r : runs) {
    if (r.mult < 1) fail(ErrorCode::InvalidPath, "run multiplicity must be >= 1");
    if (r.step.x < 0 || r.step.y > 0 || (r.step.x == 0 && r.step.y == 0))
      fail(ErrorCode::InvalidPath, "step must be primitive, weakly right and weakly down");
    if (gcd_ll(r.step.x, r.step.y) != 1) fail(ErrorCode::InvalidPath, "step is not primitive");
    width += r.step.x * r.mult;
    height += -r.step.y * r.mult;
  }
  for (size_t i = 0; i + 1 < runs.size(); ++i)
    if (!order_ok(runs[i].step, runs[i + 1].step, mode))
      fail(ErrorCode::InvalidPath, "run slopes out of order for the requested mode");
  if (runs.empty()) return single_vertex({0, 0}, mode);
  IntegralPath p;
  p.mode_ = mode;
  p.runs_ = runs;
  p.verts_ = rebuild_vertices({0, height}, p.runs_);
  (void)width;
  return p;
}

IntegralPath IntegralPath::single_vertex(IntVec v, Mode mode) {
  if (v.x < 0 || v.y < 0) fail(ErrorCode::InvalidPath, "vertex outside the closed quadrant");
  IntegralPath p;
  p.mode_ = mode;
  p.verts_ = {v};
  return p;
}

long long IntegralPath::width() const { return verts_.back().x; }
long long IntegralPath::height() const { return verts_.front().y; }

bool IntegralPath::operator<(const IntegralPath& o) const {
  return std::lexicographical_compare(
      verts_.begin(), verts_.end(), o.verts_.begin(), o.verts_.end(),
      [](const IntVec& a, const IntVec& b) { return a.x != b.x ? a.x < b.x : a.y < b.y; });
}

long long count_L(const IntegralPath& p) {
  if (p.is_single_vertex()) return 1;  // the region is the point itself
  // sum over columns of floor(first-visit height) + 1; the path is weakly
  // descending, so the first visit of a column realizes its maximum
  long long total = p.vertices().front().y + 1;
  long long cy = p.vertices().front().y;
  for (const auto& r : p.edges()) {
    long long a = r.step.x, b = -r.step.y;
    if (a == 0) {
      cy -= b * r.mult;
      continue;
    }
    for (long long t = 1; t <= a * r.mult; ++t) total += (a * cy - b * t) / a + 1;
    cy -= b * r.mult;
  }
  return total;
}

long long lattice_points_on_path(const IntegralPath& p) {
  if (p.is_single_vertex()) return 1;
  long long total = 1;
  for (const auto& r : p.edges()) total += r.mult;
  return total;
}

long long count_L_prime(const IntegralPath& p) { return count_L(p) - lattice_points_on_path(p); }

Rat path_action_exact(const Curve& curve, const IntegralPath& p) {
  if (!curve.matches_mode(p.mode()))
    fail(ErrorCode::ModeMismatch, "curve shape does not match the path's mode");
  Rat total = 0;
  for (const auto& r : p.edges()) {
    IntVec n = r.normal();
    Rat h = mode_is_convex(p.mode()) ? support_max_exact(curve, n) : support_min_exact(curve, n);
    total += Rat(r.mult) * h;
  }
  return total;
}

double path_action(const Curve& curve, const IntegralPath& p) {
  if (curve.kind() == CurveKind::polygonal) return rat_to_double(path_action_exact(curve, p));
  if (!curve.matches_mode(p.mode()))
    fail(ErrorCode::ModeMismatch, "curve shape does not match the path's mode");
  double total = 0;
  for (const auto& r : p.edges()) {
    IntVec n = r.normal();
    Vec2 dir{static_cast<double>(n.x), static_cast<double>(n.y)};
    double h = mode_is_convex(p.mode()) ? support_max(curve, dir) : support_min(curve, dir);
    total += static_cast<double>(r.mult) * h;
  }
  return total;
}

std::vector<Vec2> scale_path(const IntegralPath& p, double factor) {
  if (!(factor > 0)) fail(ErrorCode::NonpositiveScale, "scale factor must be positive");
  std::vector<Vec2> out;
  out.reserve(p.vertices().size());
  for (const auto& v : p.vertices())
    out.push_back({v.x * factor, v.y * factor});
  return out;
}

}  // namespace echcap
