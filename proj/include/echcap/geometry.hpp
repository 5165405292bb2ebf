#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "echcap/errors.hpp"
#include "echcap/rational.hpp"

namespace echcap {

struct Vec2 {
  double x = 0;
  double y = 0;
};

struct RatPoint {
  Rat x;
  Rat y;
};

// integer vector, used for lattice directions and edge normals
struct IntVec {
  long long x = 0;
  long long y = 0;
  bool operator==(const IntVec&) const = default;
};

inline Vec2 to_vec2(const RatPoint& p) { return {rat_to_double(p.x), rat_to_double(p.y)}; }

enum class CurveKind { polygonal, parametric };

// convex/concave follow the determinant test on angle-ordered point triples:
// det(b-a, c-b) >= 0 everywhere for convex, <= 0 for concave.
enum class ShapeClass { convex, strictly_convex, concave, strictly_concave };

enum class Mode { convex, concave };

inline bool mode_is_convex(Mode m) { return m == Mode::convex; }

// Closed angular interval [lo, hi] inside [0, pi/2].
struct AngleInterval {
  double lo = 0;
  double hi = 0;
};

// A star-shaped curve in the closed positive quadrant, parameterized by polar
// angle. Polygonal curves carry exact rational vertices listed by strictly
// increasing angle; parametric curves carry a radial evaluator plus a dense
// sample grid. A curve is complete when its angle range is all of [0, pi/2],
// i.e. it runs from a point on the positive x-axis to one on the positive
// y-axis.
class Curve {
 public:
  CurveKind kind() const { return kind_; }
  ShapeClass shape_class() const { return shape_; }
  bool complete() const { return complete_; }

  // det test outcomes computed from the data (a straight segment passes both)
  bool convex_ok() const { return convex_ok_; }
  bool concave_ok() const { return concave_ok_; }
  bool matches_mode(Mode m) const { return mode_is_convex(m) ? convex_ok_ : concave_ok_; }

  const std::vector<RatPoint>& vertices() const;  // polygonal only
  const std::vector<double>& vertex_angles() const;

  double theta_min() const { return theta0_; }
  double theta_max() const { return theta1_; }

  double radial(double theta) const;  // rho(theta)
  Vec2 point_at(double theta) const;
  const std::function<double(double)>& radial_fn() const { return rho_; }  // parametric

  // curve endpoints: (rho(0), 0) and (0, rho(pi/2)) when complete
  RatPoint x_endpoint_exact() const;  // polygonal
  RatPoint y_endpoint_exact() const;
  Vec2 x_endpoint() const;
  Vec2 y_endpoint() const;

  const std::vector<double>& grid_theta() const { return grid_theta_; }
  const std::vector<Vec2>& grid_points() const { return grid_pts_; }

  std::string fingerprint() const;  // canonical content hash, used in CSV rows

  friend Curve make_polygonal_curve(std::vector<RatPoint> verts, ShapeClass cls);
  friend Curve make_parametric_curve(std::function<double(double)> rho, double theta0,
                                     double theta1, ShapeClass cls, int n_samples);

 private:
  Curve() = default;
  CurveKind kind_ = CurveKind::polygonal;
  ShapeClass shape_ = ShapeClass::convex;
  bool complete_ = false;
  bool convex_ok_ = false;
  bool concave_ok_ = false;
  std::vector<RatPoint> verts_;
  std::vector<double> vert_angles_;
  std::function<double(double)> rho_;
  double theta0_ = 0;
  double theta1_ = 0;
  std::vector<double> grid_theta_;
  std::vector<double> grid_rho_;
  std::vector<Vec2> grid_pts_;
};

// errors: EmptyInput (< 2 vertices), NonMonotoneAngles, ShapeClassViolation
Curve make_polygonal_curve(std::vector<RatPoint> verts, ShapeClass cls);

// rho must be positive on [theta0, theta1]; the declared shape class is
// verified on the sample grid (n_samples >= 4096)
Curve make_parametric_curve(std::function<double(double)> rho, double theta0, double theta1,
                            ShapeClass cls, int n_samples = 8192);

// the triangle with legs a, b: vertices (a,0),(0,b); both convex and concave
Curve make_triangle(const Rat& a, const Rat& b);
Curve make_quarter_circle(double radius = 1.0, int n_samples = 8192);

Curve scale_curve(const Curve& c, const Rat& factor);     // polygonal, exact
Curve scale_curve_real(const Curve& c, double factor);    // parametric

// ---- support functions -----------------------------------------------------

struct RatVec {
  Rat x;
  Rat y;
};

// max/min of q . n over the curve; exact overloads require a polygonal curve
Rat support_max_exact(const Curve& c, const RatVec& n);
Rat support_min_exact(const Curve& c, const RatVec& n);
Rat support_max_exact(const Curve& c, const IntVec& n);
Rat support_min_exact(const Curve& c, const IntVec& n);
double support_max(const Curve& c, Vec2 dir);
double support_min(const Curve& c, Vec2 dir);

// argmax/argmin. On polygonal curves the optimizer can be a whole edge (face);
// consumers must branch on is_face explicitly.
struct SupportHit {
  bool is_face = false;
  Vec2 point{};             // the optimizer (face: its midpoint)
  double theta = 0;         // polar angle of `point`
  double value = 0;
  bool exact = false;       // rat_point/rat_value valid (polygonal curves)
  RatPoint rat_point{};
  Rat rat_value{};
  Vec2 face_a{}, face_b{};  // face endpoints when is_face
  int vertex_index = -1;    // polygonal point hits: index into vertices()
};

SupportHit support_argmax(const Curve& c, const IntVec& n);
SupportHit support_argmin(const Curve& c, const IntVec& n);

// ---- areas and actions -----------------------------------------------------

// area of the region bounded by the curve and the axes; pre: complete
Rat area_exact(const Curve& c);  // polygonal
double area(const Curve& c);

// action of a sub-arc against the curve itself: integral of the support of the
// outward normal over the sub-arc. Equals 2*area over the full range. Partially
// covered polygonal edges are prorated by exact length fraction so that
// partition sums telescope exactly.
double arc_action(const Curve& c, const AngleInterval& arc);

// action of `target` measured against supports of `base` (max for convex mode,
// min for concave). pre: base complete, both curves pass the mode's det test.
double cross_action(const Curve& base, const Curve& target, Mode mode);
Rat cross_action_exact(const Curve& base, const Curve& target, Mode mode);  // both polygonal

// ---- Hausdorff distance ----------------------------------------------------

std::vector<Vec2> curve_polyline(const Curve& c, int n_samples = 4096);

// symmetric Hausdorff distance between polylines (point sets with segments);
// errors: EmptyInput
double hausdorff_distance(const std::vector<Vec2>& a, const std::vector<Vec2>& b);
double hausdorff_distance(const Curve& a, const Curve& b, int n_samples = 4096);

// ---- rational-normal points and niceness -----------------------------------

struct RationalNormalPoint {
  SupportHit hit;       // tangency point, or a face on polygonal curves
  IntVec normal;        // primitive; endpoints carry (1,0) and (0,1) by definition
  bool is_endpoint = false;
  double weight = 0;    // p . n (faces share one well-defined value)
  bool exact = false;
  Rat weight_exact{};
};

// all points of the curve whose outward normal direction is a primitive integer
// vector with components in [0, l], plus the two endpoints.
// pre: complete, convex or concave; errors: NotCompleteOrNotStrict, ZeroVector
std::vector<RationalNormalPoint> rational_normal_points(const Curve& c, int l);

enum class NiceVerdict { not_nice, plausibly_nice };

struct NiceResult {
  NiceVerdict verdict = NiceVerdict::plausibly_nice;
  std::vector<RationalNormalPoint> points;
  std::vector<long long> witness;  // coefficients aligned with points; empty if none
  bool face_witness = false;       // dependence forced by a face (polygonal)
  int face_index = -1;
  std::string summary;
};

// searches for an integer relation sum_i a_i w(p_i) = 0 with |a_i| <= l over
// the truncated weight list; exact when all weights are rational, otherwise
// thresholded at 10^-precision relative to the largest weight.
NiceResult nice_check(const Curve& c, int l, int precision = 9);

// ---- containment helpers (exact, polygonal convex) -------------------------

bool region_contains(const Curve& convex_curve, const RatPoint& p);

// largest t such that t*dir lies in the region; pre: convex polygonal, dir != 0
Rat radial_reach(const Curve& convex_curve, const RatPoint& dir);

}  // namespace echcap
