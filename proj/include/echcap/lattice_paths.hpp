#pragma once

#include <vector>

#include "echcap/geometry.hpp"

namespace echcap {

// A maximal run of equal primitive steps. step is the primitive direction
// (step.x >= 0, step.y <= 0, gcd 1); the run covers mult copies of it. The
// outward normal is (-step.y, step.x), primitive and in the closed positive
// quadrant for monotone paths.
struct PathEdge {
  IntVec step;
  long long mult = 1;
  IntVec normal() const { return {-step.y, step.x}; }
  IntVec displacement() const { return {step.x * mult, step.y * mult}; }
};

// Monotone lattice path from the y-axis to the x-axis: vertices at lattice
// points, x nondecreasing, y nonincreasing, run slopes strictly decreasing
// (convex) or strictly increasing (concave) after merging collinear runs. A
// single-vertex path at a lattice point is the degenerate case; its region is
// the point itself.
class IntegralPath {
 public:
  // errors: InvalidPath (non-lattice ordering, slope violations, endpoints off
  // the axes), EmptyInput
  static IntegralPath from_vertices(std::vector<IntVec> verts, Mode mode);
  // runs must already be slope-sorted for the mode; start is derived so the
  // path ends on the x-axis and starts on the y-axis
  static IntegralPath from_runs(const std::vector<PathEdge>& runs, Mode mode);
  static IntegralPath single_vertex(IntVec v, Mode mode);

  Mode mode() const { return mode_; }
  bool is_single_vertex() const { return verts_.size() == 1; }
  const std::vector<IntVec>& vertices() const { return verts_; }
  const std::vector<PathEdge>& edges() const { return runs_; }

  long long width() const;   // last x
  long long height() const;  // first y

  bool operator==(const IntegralPath& o) const {
    return mode_ == o.mode_ && verts_ == o.verts_;
  }
  // lexicographic order on vertex sequences; picks CSV/report representatives
  bool operator<(const IntegralPath& o) const;

 private:
  IntegralPath() = default;
  Mode mode_ = Mode::convex;
  std::vector<IntVec> verts_;
  std::vector<PathEdge> runs_;
};

// lattice points of the closed region bounded by the path and the axes,
// including points on the path and the axes; computed by column sums
long long count_L(const IntegralPath& p);

// same region, excluding points that lie on the path itself
long long count_L_prime(const IntegralPath& p);

long long lattice_points_on_path(const IntegralPath& p);

// sum over runs of mult * support(curve, normal); convex paths use support_max,
// concave support_min. Exact overload requires a polygonal curve.
Rat path_action_exact(const Curve& curve, const IntegralPath& p);
double path_action(const Curve& curve, const IntegralPath& p);

// vertices multiplied by factor (> 0), as a polyline for comparisons against
// the curve; errors: NonpositiveScale
std::vector<Vec2> scale_path(const IntegralPath& p, double factor);

}  // namespace echcap
