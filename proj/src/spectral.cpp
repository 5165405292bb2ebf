#include "echcap/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace echcap {

namespace {

enum class HitSite { interior, x_end, y_end };

// A hit lands on a curve endpoint either exactly (polygonal) or within an
// angular sliver (parametric; the support grid snaps endpoint angles).
HitSite classify_hit(const Curve& c, const SupportHit& h) {
  if (h.is_face) return HitSite::interior;
  if (h.exact) {
    RatPoint xe = c.x_endpoint_exact(), ye = c.y_endpoint_exact();
    if (h.rat_point.x == xe.x && h.rat_point.y == xe.y) return HitSite::x_end;
    if (h.rat_point.x == ye.x && h.rat_point.y == ye.y) return HitSite::y_end;
    return HitSite::interior;
  }
  if (std::fabs(h.theta - c.theta_min()) <= 1e-9) return HitSite::x_end;
  if (std::fabs(h.theta - c.theta_max()) <= 1e-9) return HitSite::y_end;
  return HitSite::interior;
}

bool same_atom_point(const SpectralAtom& a, const SpectralAtom& b) {
  if (a.exact && b.exact && a.is_face == b.is_face) {
    // exact atoms merge only when they are literally the same support locus
    return a.point.x == b.point.x && a.point.y == b.point.y &&
           a.theta_lo == b.theta_lo && a.theta_hi == b.theta_hi;
  }
  return std::fabs(a.theta - b.theta) <= 1e-9 && a.is_face == b.is_face;
}

std::vector<Vec2> arc_polyline(const Curve& c, const AngleInterval& arc, int n = 2048) {
  std::vector<Vec2> out;
  out.reserve(n + 1);
  for (int i = 0; i <= n; ++i) {
    double t = arc.lo + (arc.hi - arc.lo) * i / n;
    out.push_back(c.point_at(t));
  }
  return out;
}

std::vector<Vec2> scaled(std::vector<Vec2> pts, double f) {
  for (auto& p : pts) {
    p.x *= f;
    p.y *= f;
  }
  return pts;
}

void check_arc(const Curve& c, const AngleInterval& arc) {
  if (!(arc.lo <= arc.hi) || arc.lo < c.theta_min() - 1e-9 || arc.hi > c.theta_max() + 1e-9)
    fail(ErrorCode::ArcOutOfRange, "sub-arc is not inside the curve's angle range");
}

}  // namespace

SupportHit edge_point(const Curve& curve, const PathEdge& e, Mode mode) {
  IntVec n = e.normal();
  return mode_is_convex(mode) ? support_argmax(curve, n) : support_argmin(curve, n);
}

long long edge_multiplicity(const Curve& curve, const PathEdge& e, Mode mode) {
  switch (classify_hit(curve, edge_point(curve, e, mode))) {
    case HitSite::x_end:
      return std::llabs(e.step.y) * e.mult;
    case HitSite::y_end:
      return std::llabs(e.step.x) * e.mult;
    default:
      return e.mult;
  }
}

SpectralDistribution spectral_distribution_for(const Curve& curve, const CapacityResult& cap,
                                               FacePolicy faces) {
  if (cap.optimal_paths.empty())
    fail(ErrorCode::InvalidArgument, "capacity result carries no optimal path");

  SpectralDistribution d{cap.k,  cap.mode, cap.optimal_paths.front(), cap.unique_optimum,
                         {},     0.0,      cap.exact,                 Rat(0)};

  std::vector<SpectralAtom> raw;
  for (const PathEdge& e : d.path.edges()) {
    SupportHit h = edge_point(curve, e, cap.mode);
    if (h.is_face && faces == FacePolicy::reject)
      fail(ErrorCode::FaceAmbiguity,
           "a run's support locus is a whole face; use the allow-faces policy");
    long long m = edge_multiplicity(curve, e, cap.mode);
    if (m == 0) continue;  // zero-action run (concave axis padding)

    SpectralAtom a;
    a.point = h.point;
    a.theta = h.theta;
    a.normal = e.normal();
    a.multiplicity = m;
    a.weight = static_cast<double>(e.mult) * h.value;
    a.exact = h.exact;
    if (h.exact) a.weight_exact = Rat(e.mult) * h.rat_value;
    a.is_face = h.is_face;
    if (h.is_face) {
      a.face_a = h.face_a;
      a.face_b = h.face_b;
      double ta = std::atan2(h.face_a.y, h.face_a.x);
      double tb = std::atan2(h.face_b.y, h.face_b.x);
      a.theta_lo = std::min(ta, tb);
      a.theta_hi = std::max(ta, tb);
    } else {
      a.theta_lo = a.theta_hi = a.theta;
    }
    raw.push_back(a);
  }

  std::sort(raw.begin(), raw.end(),
            [](const SpectralAtom& a, const SpectralAtom& b) { return a.theta < b.theta; });

  for (const auto& a : raw) {
    if (!d.atoms.empty() && same_atom_point(d.atoms.back(), a)) {
      SpectralAtom& t = d.atoms.back();
      t.multiplicity += a.multiplicity;
      t.weight += a.weight;
      if (t.exact && a.exact) t.weight_exact += a.weight_exact;
      t.exact = t.exact && a.exact;
    } else {
      d.atoms.push_back(a);
    }
  }

  d.total = 0;
  d.total_exact = Rat(0);
  bool all_exact = true;
  for (const auto& a : d.atoms) {
    d.total += a.weight;
    if (a.exact)
      d.total_exact += a.weight_exact;
    else
      all_exact = false;
  }
  d.exact = cap.exact && all_exact;
  return d;
}

SpectralDistribution spectral_distribution(const Curve& curve, int k, Mode mode,
                                           FacePolicy faces, const EngineOptions& opts) {
  return spectral_distribution_for(curve, capacity(curve, k, mode, opts), faces);
}

double distribution_mass(const SpectralDistribution& d, const AngleInterval& arc) {
  if (!(arc.lo <= arc.hi))
    fail(ErrorCode::InvalidArgument, "angular interval has lo > hi");
  // boundary window: numerically refined tangency angles of near-flat support
  // maxima are only located to about sqrt(integration tolerance)
  const double eps = 1e-6;
  double sum = 0;
  for (const auto& a : d.atoms) {
    bool out = a.theta_hi < arc.lo - eps || a.theta_lo > arc.hi + eps;
    if (out) continue;
    bool in = a.theta_lo >= arc.lo - eps && a.theta_hi <= arc.hi + eps;
    if (in) {
      sum += a.weight;
      continue;
    }
    fail(ErrorCode::FaceAmbiguity, "a face atom straddles the interval boundary");
  }
  return sum;
}

double weyl_residual(const Curve& curve, int k, double c_k) {
  return c_k / std::sqrt(static_cast<double>(k)) - std::sqrt(4.0 * area(curve));
}

std::vector<Vec2> restricted_path_polyline(const Curve& curve, const IntegralPath& path,
                                           const AngleInterval& arc, Mode mode) {
  std::vector<Vec2> out;
  if (path.is_single_vertex()) return out;
  const auto& vs = path.vertices();
  const auto& es = path.edges();
  const double eps = 1e-6;
  for (size_t i = 0; i < es.size(); ++i) {
    SupportHit h = edge_point(curve, es[i], mode);
    if (h.theta < arc.lo - eps || h.theta > arc.hi + eps) continue;
    Vec2 a{static_cast<double>(vs[i].x), static_cast<double>(vs[i].y)};
    Vec2 b{static_cast<double>(vs[i + 1].x), static_cast<double>(vs[i + 1].y)};
    if (out.empty() || out.back().x != a.x || out.back().y != a.y) out.push_back(a);
    out.push_back(b);
  }
  return out;
}

ExperimentReport equidistribution_report(const Curve& curve, const std::vector<int>& ks,
                                         const std::vector<AngleInterval>& sub_arcs,
                                         Mode mode, const EngineOptions& opts) {
  for (const auto& arc : sub_arcs) check_arc(curve, arc);

  ExperimentReport rep;
  if (curve.shape_class() != ShapeClass::strictly_convex &&
      curve.shape_class() != ShapeClass::strictly_concave)
    rep.warnings.push_back(
        "curve is not strictly curved; support loci can be faces and sub-arc "
        "masses may be coarse");

  double A = area(curve);
  double s2a = std::sqrt(2.0 * A);
  AngleInterval full{curve.theta_min(), curve.theta_max()};
  auto curve_pts = curve_polyline(curve);
  bool warned_faces = false;

  bool warned_ties = false;
  for (int k : ks) {
    if (k < 1) fail(ErrorCode::InvalidArgument, "k must be at least 1");
    CapacityResult cap = capacity(curve, k, mode, opts);

    // one distribution per tied optimum; rows report the best realization
    std::vector<SpectralDistribution> dists;
    dists.reserve(cap.optimal_paths.size());
    for (const auto& p : cap.optimal_paths) {
      CapacityResult one{cap.k,  cap.mode,        cap.value, cap.exact, cap.value_exact,
                         {p},    true,            cap.approx_ties, 0};
      dists.push_back(spectral_distribution_for(curve, one, FacePolicy::allow));
    }
    if (!warned_faces)
      for (const auto& a : dists.front().atoms)
        if (a.is_face) {
          rep.warnings.push_back("face-supported atoms appear at k = " + std::to_string(k));
          warned_faces = true;
          break;
        }
    if (!warned_ties && !cap.unique_optimum) {
      rep.warnings.push_back("non-unique optimal paths at k = " + std::to_string(k) +
                             "; rows use the best realization over ties");
      warned_ties = true;
    }

    double rt2k = std::sqrt(2.0 * k);
    double scale = 1.0 / std::sqrt(static_cast<double>(k));

    EquidistRow full_row;
    full_row.k = k;
    full_row.arc_id = "full";
    full_row.err = std::numeric_limits<double>::infinity();
    full_row.hausdorff = std::numeric_limits<double>::infinity();
    double full_target = arc_action(curve, full) / s2a;
    for (const auto& d : dists)
      full_row.err = std::min(full_row.err, std::fabs(d.total / rt2k - full_target));
    for (const auto& p : cap.optimal_paths)
      full_row.hausdorff = std::min(full_row.hausdorff,
                                    hausdorff_distance(scale_path(p, scale), curve_pts));
    rep.rows.push_back(full_row);

    for (size_t i = 0; i < sub_arcs.size(); ++i) {
      EquidistRow row;
      row.k = k;
      row.arc_id = "arc" + std::to_string(i + 1);
      double target = arc_action(curve, sub_arcs[i]) / s2a;
      row.err = std::numeric_limits<double>::infinity();
      for (const auto& d : dists)
        row.err = std::min(row.err,
                           std::fabs(distribution_mass(d, sub_arcs[i]) / rt2k - target));
      auto arc_pts = arc_polyline(curve, sub_arcs[i]);
      row.hausdorff = std::numeric_limits<double>::quiet_NaN();
      for (const auto& p : cap.optimal_paths) {
        auto restricted = restricted_path_polyline(curve, p, sub_arcs[i], mode);
        if (restricted.empty()) continue;
        double h = hausdorff_distance(scaled(std::move(restricted), scale), arc_pts);
        if (std::isnan(row.hausdorff) || h < row.hausdorff) row.hausdorff = h;
      }
      rep.rows.push_back(row);
    }
  }
  return rep;
}

}  // namespace echcap
