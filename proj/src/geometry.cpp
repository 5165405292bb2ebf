#include "echcap/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace echcap {

const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::NonMonotoneAngles: return "NonMonotoneAngles";
    case ErrorCode::ShapeClassViolation: return "ShapeClassViolation";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::IncompleteCurve: return "IncompleteCurve";
    case ErrorCode::ArcOutOfRange: return "ArcOutOfRange";
    case ErrorCode::ModeMismatch: return "ModeMismatch";
    case ErrorCode::NotCompleteOrNotStrict: return "NotCompleteOrNotStrict";
    case ErrorCode::InvalidPath: return "InvalidPath";
    case ErrorCode::NonpositiveScale: return "NonpositiveScale";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::SearchBudgetExceeded: return "SearchBudgetExceeded";
    case ErrorCode::BoxTooSmall: return "BoxTooSmall";
    case ErrorCode::FaceAmbiguity: return "FaceAmbiguity";
    case ErrorCode::GenerationFailed: return "GenerationFailed";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "UnknownError";
}

double rat_to_double(const Rat& q) { return q.convert_to<double>(); }

namespace {

// always base 10: BigInt's string constructor treats a leading 0 as octal
BigInt big_decimal(std::string s) {
  bool neg = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    neg = s[0] == '-';
    s.erase(0, 1);
  }
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    throw std::invalid_argument(s);
  size_t nz = s.find_first_not_of('0');
  s = nz == std::string::npos ? "0" : s.substr(nz);
  BigInt v(s);
  return neg ? -v : v;
}

}  // namespace

Rat parse_rat(const std::string& text) {
  std::string s = text;
  s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return c == ' ' || c == '\t'; }),
          s.end());
  if (s.empty()) fail(ErrorCode::InvalidArgument, "empty rational literal");
  auto slash = s.find('/');
  try {
    if (slash != std::string::npos) {
      BigInt num = big_decimal(s.substr(0, slash));
      BigInt den = big_decimal(s.substr(slash + 1));
      if (den == 0) fail(ErrorCode::InvalidArgument, "zero denominator in '" + text + "'");
      return Rat(num, den);
    }
    auto dot = s.find('.');
    if (dot != std::string::npos) {
      std::string digits = s.substr(0, dot) + s.substr(dot + 1);
      size_t frac_len = s.size() - dot - 1;
      if (digits.empty() || digits == "-" || digits == "+")
        fail(ErrorCode::InvalidArgument, "bad rational literal '" + text + "'");
      BigInt num = big_decimal(digits);
      BigInt den = 1;
      for (size_t i = 0; i < frac_len; ++i) den *= 10;
      return Rat(num, den);
    }
    return Rat(big_decimal(s));
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    fail(ErrorCode::InvalidArgument, "bad rational literal '" + text + "'");
  }
}

std::string format_rat(const Rat& q) {
  std::ostringstream os;
  os << numerator(q);
  if (denominator(q) != 1) os << "/" << denominator(q);
  return os.str();
}

BigInt rat_floor(const Rat& q) {
  BigInt num = numerator(q), den = denominator(q);
  BigInt d = num / den;
  if (num < 0 && d * den != num) --d;
  return d;
}

BigInt rat_ceil(const Rat& q) { return -rat_floor(-q); }

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = kPi / 2;

Rat rcross(const RatPoint& a, const RatPoint& b) { return a.x * b.y - a.y * b.x; }
Rat rdot(const RatPoint& a, const RatVec& n) { return a.x * n.x + a.y * n.y; }
double ddot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
double dnorm(const Vec2& a) { return std::hypot(a.x, a.y); }

RatPoint rsub(const RatPoint& a, const RatPoint& b) { return {a.x - b.x, a.y - b.y}; }

double point_angle(const RatPoint& p) {
  return std::atan2(rat_to_double(p.y), rat_to_double(p.x));
}

// generic adaptive Simpson quadrature
double simpson_step(double a, double fa, double b, double fb, double fm) {
  return (b - a) / 6.0 * (fa + 4 * fm + fb);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double fa, double b,
                        double fb, double m, double fm, double whole, double tol, int depth) {
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = simpson_step(a, fa, m, fm, flm);
  double right = simpson_step(m, fm, b, fb, frm);
  double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15 * tol) return left + right + delta / 15.0;
  return adaptive_simpson(f, a, fa, m, fm, lm, flm, left, tol / 2, depth - 1) +
         adaptive_simpson(f, m, fm, b, fb, rm, frm, right, tol / 2, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol = 1e-12) {
  if (b <= a) return 0.0;
  // seed with a coarse split so short features are not missed
  const int seed = 32;
  double total = 0, h = (b - a) / seed;
  for (int i = 0; i < seed; ++i) {
    double lo = a + i * h, hi = lo + h, mid = 0.5 * (lo + hi);
    double flo = f(lo), fhi = f(hi), fmid = f(mid);
    double whole = simpson_step(lo, flo, hi, fhi, fmid);
    total += adaptive_simpson(f, lo, flo, hi, fhi, mid, fmid, whole, tol / seed, 48);
  }
  return total;
}

// golden-section refinement of an extremum bracketed in [lo, hi]
double refine_extremum(const std::function<double(double)>& f, double lo, double hi,
                       bool maximize, double* arg_out) {
  const double phi = (std::sqrt(5.0) - 1) / 2;
  double a = lo, b = hi;
  double c = b - phi * (b - a), d = a + phi * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < 160 && (b - a) > 1e-15 * (1 + std::abs(a) + std::abs(b)); ++i) {
    bool pick_left = maximize ? (fc > fd) : (fc < fd);
    if (pick_left) {
      b = d;
      d = c;
      fd = fc;
      c = b - phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + phi * (b - a);
      fd = f(d);
    }
  }
  double mid = 0.5 * (a + b), fm = f(mid);
  if (arg_out) *arg_out = mid;
  return fm;
}

long long gcd_ll(long long a, long long b) {
  a = std::abs(a);
  b = std::abs(b);
  while (b) {
    long long t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace

// ---- Curve -----------------------------------------------------------------

const std::vector<RatPoint>& Curve::vertices() const {
  if (kind_ != CurveKind::polygonal)
    fail(ErrorCode::InvalidArgument, "vertices() requires a polygonal curve");
  return verts_;
}

const std::vector<double>& Curve::vertex_angles() const { return vert_angles_; }

double Curve::radial(double theta) const {
  Vec2 p = point_at(theta);
  return dnorm(p);
}

Vec2 Curve::point_at(double theta) const {
  if (theta < theta0_ - 1e-12 || theta > theta1_ + 1e-12)
    fail(ErrorCode::ArcOutOfRange, "angle outside the curve's range");
  theta = std::clamp(theta, theta0_, theta1_);
  if (kind_ == CurveKind::parametric) {
    double r = rho_(theta);
    if (std::abs(theta) < 1e-15) return {r, 0.0};
    if (std::abs(theta - kHalfPi) < 1e-15) return {0.0, r};
    return {r * std::cos(theta), r * std::sin(theta)};
  }
  // polygonal: intersect the ray with the edge covering theta
  const auto& ang = vert_angles_;
  size_t i = std::upper_bound(ang.begin(), ang.end(), theta) - ang.begin();
  if (i == 0) i = 1;
  if (i >= ang.size()) i = ang.size() - 1;
  Vec2 P = to_vec2(verts_[i - 1]), Q = to_vec2(verts_[i]);
  Vec2 u{std::cos(theta), std::sin(theta)};
  Vec2 v{Q.x - P.x, Q.y - P.y};
  double denom = u.x * v.y - u.y * v.x;
  if (std::abs(denom) < 1e-300) return P;
  double s = -(u.x * P.y - u.y * P.x) / denom;
  s = std::clamp(s, 0.0, 1.0);
  return {P.x + s * v.x, P.y + s * v.y};
}

RatPoint Curve::x_endpoint_exact() const {
  if (kind_ != CurveKind::polygonal || !complete_)
    fail(ErrorCode::IncompleteCurve, "exact endpoint requires a complete polygonal curve");
  return verts_.front();
}

RatPoint Curve::y_endpoint_exact() const {
  if (kind_ != CurveKind::polygonal || !complete_)
    fail(ErrorCode::IncompleteCurve, "exact endpoint requires a complete polygonal curve");
  return verts_.back();
}

Vec2 Curve::x_endpoint() const {
  if (!complete_) fail(ErrorCode::IncompleteCurve, "endpoint requires a complete curve");
  return kind_ == CurveKind::polygonal ? to_vec2(verts_.front()) : Vec2{rho_(0.0), 0.0};
}

Vec2 Curve::y_endpoint() const {
  if (!complete_) fail(ErrorCode::IncompleteCurve, "endpoint requires a complete curve");
  return kind_ == CurveKind::polygonal ? to_vec2(verts_.back()) : Vec2{0.0, rho_(kHalfPi)};
}

std::string Curve::fingerprint() const {
  std::string blob = kind_ == CurveKind::polygonal ? "poly|" : "param|";
  switch (shape_) {
    case ShapeClass::convex: blob += "cv|"; break;
    case ShapeClass::strictly_convex: blob += "scv|"; break;
    case ShapeClass::concave: blob += "cc|"; break;
    case ShapeClass::strictly_concave: blob += "scc|"; break;
  }
  char buf[64];
  if (kind_ == CurveKind::polygonal) {
    for (const auto& v : verts_) blob += format_rat(v.x) + "," + format_rat(v.y) + ";";
  } else {
    std::snprintf(buf, sizeof buf, "%.17g:%.17g:%zu|", theta0_, theta1_, grid_theta_.size());
    blob += buf;
    for (size_t i = 0; i < grid_rho_.size(); i += 64) {
      std::snprintf(buf, sizeof buf, "%.17g;", grid_rho_[i]);
      blob += buf;
    }
  }
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : blob) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Curve make_polygonal_curve(std::vector<RatPoint> verts, ShapeClass cls) {
  if (verts.size() < 2) fail(ErrorCode::EmptyInput, "a polygonal curve needs >= 2 vertices");
  for (const auto& v : verts) {
    if (v.x < 0 || v.y < 0)
      fail(ErrorCode::InvalidArgument, "vertex outside the closed positive quadrant");
    if (v.x == 0 && v.y == 0) fail(ErrorCode::NonMonotoneAngles, "vertex at the origin");
  }
  for (size_t i = 0; i + 1 < verts.size(); ++i) {
    if (rcross(verts[i], verts[i + 1]) <= 0)
      fail(ErrorCode::NonMonotoneAngles, "vertex angles must be strictly increasing");
  }
  bool conv = true, conc = true, strict_conv = true, strict_conc = true;
  for (size_t i = 0; i + 2 < verts.size(); ++i) {
    Rat det = rcross(rsub(verts[i + 1], verts[i]), rsub(verts[i + 2], verts[i + 1]));
    if (det < 0) conv = false;
    if (det > 0) conc = false;
    if (det <= 0) strict_conv = false;
    if (det >= 0) strict_conc = false;
  }
  bool ok = false;
  switch (cls) {
    case ShapeClass::convex: ok = conv; break;
    case ShapeClass::strictly_convex: ok = verts.size() == 2 || strict_conv; break;
    case ShapeClass::concave: ok = conc; break;
    case ShapeClass::strictly_concave: ok = verts.size() == 2 || strict_conc; break;
  }
  if (!ok)
    fail(ErrorCode::ShapeClassViolation, "vertex triple fails the determinant test for the "
                                         "declared shape class");
  Curve c;
  c.kind_ = CurveKind::polygonal;
  c.shape_ = cls;
  c.convex_ok_ = conv;
  c.concave_ok_ = conc;
  c.verts_ = std::move(verts);
  c.vert_angles_.reserve(c.verts_.size());
  for (const auto& v : c.verts_) c.vert_angles_.push_back(point_angle(v));
  if (!c.vert_angles_.empty()) {
    if (c.verts_.front().y == 0) c.vert_angles_.front() = 0.0;
    if (c.verts_.back().x == 0) c.vert_angles_.back() = kHalfPi;
  }
  c.theta0_ = c.vert_angles_.front();
  c.theta1_ = c.vert_angles_.back();
  c.complete_ = c.verts_.front().y == 0 && c.verts_.front().x > 0 && c.verts_.back().x == 0 &&
                c.verts_.back().y > 0;
  return c;
}

Curve make_parametric_curve(std::function<double(double)> rho, double theta0, double theta1,
                            ShapeClass cls, int n_samples) {
  if (!rho) fail(ErrorCode::EmptyInput, "missing radial evaluator");
  if (!(theta0 >= -1e-12 && theta1 <= kHalfPi + 1e-12 && theta0 < theta1))
    fail(ErrorCode::NonMonotoneAngles, "theta range must be inside [0, pi/2]");
  theta0 = std::clamp(theta0, 0.0, kHalfPi);
  theta1 = std::clamp(theta1, 0.0, kHalfPi);
  n_samples = std::max(n_samples, 4096);

  Curve c;
  c.kind_ = CurveKind::parametric;
  c.shape_ = cls;
  c.rho_ = std::move(rho);
  c.theta0_ = theta0;
  c.theta1_ = theta1;
  c.complete_ = theta0 == 0.0 && theta1 == kHalfPi;
  c.grid_theta_.resize(n_samples + 1);
  c.grid_rho_.resize(n_samples + 1);
  c.grid_pts_.resize(n_samples + 1);
  for (int i = 0; i <= n_samples; ++i) {
    double t = theta0 + (theta1 - theta0) * i / n_samples;
    if (i == n_samples) t = theta1;
    double r = c.rho_(t);
    if (!(r > 0) || !std::isfinite(r))
      fail(ErrorCode::InvalidArgument, "radial evaluator must be positive and finite");
    c.grid_theta_[i] = t;
    c.grid_rho_[i] = r;
    c.grid_pts_[i] = {r * std::cos(t), r * std::sin(t)};
  }
  if (c.complete_) {
    c.grid_pts_.front() = {c.grid_rho_.front(), 0.0};
    c.grid_pts_.back() = {0.0, c.grid_rho_.back()};
  }

  bool conv = true, conc = true;
  double scale = 0;
  for (const auto& p : c.grid_pts_) scale = std::max(scale, std::max(std::abs(p.x), std::abs(p.y)));
  double eps = 1e-13 * scale * scale;
  for (size_t i = 0; i + 2 < c.grid_pts_.size(); ++i) {
    const Vec2 &a = c.grid_pts_[i], &b = c.grid_pts_[i + 1], &d = c.grid_pts_[i + 2];
    double det = (b.x - a.x) * (d.y - b.y) - (b.y - a.y) * (d.x - b.x);
    if (det < -eps) conv = false;
    if (det > eps) conc = false;
  }
  c.convex_ok_ = conv;
  c.concave_ok_ = conc;
  bool want_convex = cls == ShapeClass::convex || cls == ShapeClass::strictly_convex;
  if ((want_convex && !conv) || (!want_convex && !conc))
    fail(ErrorCode::ShapeClassViolation, "sampled determinant test fails for the declared "
                                         "shape class");
  return c;
}

Curve make_triangle(const Rat& a, const Rat& b) {
  if (a <= 0 || b <= 0) fail(ErrorCode::InvalidArgument, "triangle legs must be positive");
  return make_polygonal_curve({{a, Rat(0)}, {Rat(0), b}}, ShapeClass::convex);
}

Curve make_quarter_circle(double radius, int n_samples) {
  if (!(radius > 0)) fail(ErrorCode::NonpositiveScale, "radius must be positive");
  return make_parametric_curve([radius](double) { return radius; }, 0.0, kHalfPi,
                               ShapeClass::strictly_convex, n_samples);
}

Curve scale_curve(const Curve& c, const Rat& factor) {
  if (factor <= 0) fail(ErrorCode::NonpositiveScale, "scale factor must be positive");
  if (c.kind() != CurveKind::polygonal)
    fail(ErrorCode::InvalidArgument, "exact scaling requires a polygonal curve");
  std::vector<RatPoint> verts = c.vertices();
  for (auto& v : verts) {
    v.x *= factor;
    v.y *= factor;
  }
  return make_polygonal_curve(std::move(verts), c.shape_class());
}

Curve scale_curve_real(const Curve& c, double factor) {
  if (!(factor > 0)) fail(ErrorCode::NonpositiveScale, "scale factor must be positive");
  if (c.kind() == CurveKind::polygonal) return scale_curve(c, Rat(factor));
  auto rho = c.radial_fn();
  int n = static_cast<int>(c.grid_theta().size()) - 1;
  return make_parametric_curve([rho, factor](double t) { return factor * rho(t); },
                               c.theta_min(), c.theta_max(), c.shape_class(), n);
}

// ---- support ---------------------------------------------------------------

Rat support_max_exact(const Curve& c, const RatVec& n) {
  if (n.x == 0 && n.y == 0) fail(ErrorCode::ZeroVector, "support of the zero vector");
  const auto& vs = c.vertices();
  Rat best = rdot(vs[0], n);
  for (size_t i = 1; i < vs.size(); ++i) best = std::max(best, rdot(vs[i], n));
  return best;
}

Rat support_min_exact(const Curve& c, const RatVec& n) {
  if (n.x == 0 && n.y == 0) fail(ErrorCode::ZeroVector, "support of the zero vector");
  const auto& vs = c.vertices();
  Rat best = rdot(vs[0], n);
  for (size_t i = 1; i < vs.size(); ++i) best = std::min(best, rdot(vs[i], n));
  return best;
}

Rat support_max_exact(const Curve& c, const IntVec& n) {
  return support_max_exact(c, RatVec{Rat(n.x), Rat(n.y)});
}

Rat support_min_exact(const Curve& c, const IntVec& n) {
  return support_min_exact(c, RatVec{Rat(n.x), Rat(n.y)});
}

namespace {

double param_support(const Curve& c, Vec2 dir, bool maximize, double* theta_out) {
  const auto& pts = c.grid_points();
  const auto& ths = c.grid_theta();
  size_t best = 0;
  double fbest = ddot(pts[0], dir);
  for (size_t i = 1; i < pts.size(); ++i) {
    double f = ddot(pts[i], dir);
    if (maximize ? f > fbest : f < fbest) {
      fbest = f;
      best = i;
    }
  }
  double lo = ths[best == 0 ? 0 : best - 1];
  double hi = ths[std::min(best + 1, ths.size() - 1)];
  auto f = [&](double t) { return ddot(c.point_at(t), dir); };
  double arg = ths[best];
  double refined = refine_extremum(f, lo, hi, maximize, &arg);
  if (maximize ? refined < fbest : refined > fbest) {
    refined = fbest;
    arg = ths[best];
  }
  if (theta_out) *theta_out = arg;
  return refined;
}

}  // namespace

double support_max(const Curve& c, Vec2 dir) {
  if (dir.x == 0 && dir.y == 0) fail(ErrorCode::ZeroVector, "support of the zero vector");
  if (c.kind() == CurveKind::polygonal) {
    const auto& vs = c.vertices();
    double best = -1e300;
    for (const auto& v : vs) best = std::max(best, ddot(to_vec2(v), dir));
    return best;
  }
  return param_support(c, dir, true, nullptr);
}

double support_min(const Curve& c, Vec2 dir) {
  if (dir.x == 0 && dir.y == 0) fail(ErrorCode::ZeroVector, "support of the zero vector");
  if (c.kind() == CurveKind::polygonal) {
    const auto& vs = c.vertices();
    double best = 1e300;
    for (const auto& v : vs) best = std::min(best, ddot(to_vec2(v), dir));
    return best;
  }
  return param_support(c, dir, false, nullptr);
}

namespace {

SupportHit poly_arg_support(const Curve& c, const IntVec& n, bool maximize) {
  const auto& vs = c.vertices();
  RatVec rn{Rat(n.x), Rat(n.y)};
  Rat best = rdot(vs[0], rn);
  for (size_t i = 1; i < vs.size(); ++i) {
    Rat v = rdot(vs[i], rn);
    if (maximize ? v > best : v < best) best = v;
  }
  std::vector<int> hits;
  for (size_t i = 0; i < vs.size(); ++i)
    if (rdot(vs[i], rn) == best) hits.push_back(static_cast<int>(i));
  SupportHit h;
  h.exact = true;
  h.rat_value = best;
  h.value = rat_to_double(best);
  if (hits.size() == 1) {
    h.is_face = false;
    h.vertex_index = hits[0];
    h.rat_point = vs[hits[0]];
    h.point = to_vec2(h.rat_point);
    h.theta = c.vertex_angles()[hits[0]];
    return h;
  }
  // a tie on a convex/concave curve is a contiguous chain: a face
  h.is_face = true;
  h.face_a = to_vec2(vs[hits.front()]);
  h.face_b = to_vec2(vs[hits.back()]);
  h.point = {(h.face_a.x + h.face_b.x) / 2, (h.face_a.y + h.face_b.y) / 2};
  h.theta = std::atan2(h.point.y, h.point.x);
  h.rat_point = {(vs[hits.front()].x + vs[hits.back()].x) / 2,
                 (vs[hits.front()].y + vs[hits.back()].y) / 2};
  return h;
}

SupportHit param_arg_support(const Curve& c, const IntVec& n, bool maximize) {
  Vec2 dir{static_cast<double>(n.x), static_cast<double>(n.y)};
  double theta = 0;
  double value = param_support(c, dir, maximize, &theta);
  SupportHit h;
  h.is_face = false;
  h.exact = false;
  h.value = value;
  h.theta = theta;
  h.point = c.point_at(theta);
  return h;
}

}  // namespace

SupportHit support_argmax(const Curve& c, const IntVec& n) {
  if (n.x == 0 && n.y == 0) fail(ErrorCode::ZeroVector, "support of the zero vector");
  return c.kind() == CurveKind::polygonal ? poly_arg_support(c, n, true)
                                          : param_arg_support(c, n, true);
}

SupportHit support_argmin(const Curve& c, const IntVec& n) {
  if (n.x == 0 && n.y == 0) fail(ErrorCode::ZeroVector, "support of the zero vector");
  return c.kind() == CurveKind::polygonal ? poly_arg_support(c, n, false)
                                          : param_arg_support(c, n, false);
}

// ---- areas and actions -----------------------------------------------------

Rat area_exact(const Curve& c) {
  if (!c.complete()) fail(ErrorCode::IncompleteCurve, "area requires a complete curve");
  if (c.kind() != CurveKind::polygonal)
    fail(ErrorCode::InvalidArgument, "exact area requires a polygonal curve");
  const auto& vs = c.vertices();
  Rat twice = 0;
  for (size_t i = 0; i + 1 < vs.size(); ++i) twice += rcross(vs[i], vs[i + 1]);
  return twice / 2;
}

double area(const Curve& c) {
  if (!c.complete()) fail(ErrorCode::IncompleteCurve, "area requires a complete curve");
  if (c.kind() == CurveKind::polygonal) return rat_to_double(area_exact(c));
  auto rho2 = [&](double t) {
    double r = c.radial(t);
    return r * r;
  };
  return 0.5 * integrate(rho2, c.theta_min(), c.theta_max());
}

namespace {

// exact parameter along edge P + t v at which the polar angle equals phi;
// the direction vector is rationalized from its binary64 value so both sides
// of a partition agree exactly
Rat edge_cut_parameter(const RatPoint& P, const RatPoint& v, double phi) {
  Rat ux(std::cos(phi)), uy(std::sin(phi));
  Rat num = P.x * uy - P.y * ux;   // cross(P, u)
  Rat den = v.y * ux - v.x * uy;   // -cross(v, u)
  if (den == 0) return Rat(0);
  Rat t = num / den;
  if (t < 0) t = 0;
  if (t > 1) t = 1;
  return t;
}

}  // namespace

double arc_action(const Curve& c, const AngleInterval& arc) {
  if (!(c.convex_ok() || c.concave_ok()))
    fail(ErrorCode::ModeMismatch, "arc_action needs a convex or concave curve");
  if (arc.lo > arc.hi + 1e-15) fail(ErrorCode::ArcOutOfRange, "arc.lo > arc.hi");
  double lo = arc.lo, hi = arc.hi;
  if (lo < c.theta_min() - 1e-9 || hi > c.theta_max() + 1e-9)
    fail(ErrorCode::ArcOutOfRange, "sub-arc leaves the curve's angle range");
  lo = std::clamp(lo, c.theta_min(), c.theta_max());
  hi = std::clamp(hi, c.theta_min(), c.theta_max());
  if (hi <= lo) return 0.0;

  if (c.kind() == CurveKind::parametric) {
    // h(nu(p)) |gamma'| dtheta collapses to rho^2 dtheta: the support in the
    // direction of the outward normal at p is attained at p itself
    auto rho2 = [&](double t) {
      double r = c.radial(t);
      return r * r;
    };
    return integrate(rho2, lo, hi);
  }

  const auto& vs = c.vertices();
  const auto& ang = c.vertex_angles();
  Rat total = 0;
  for (size_t i = 0; i + 1 < vs.size(); ++i) {
    double a = ang[i], b = ang[i + 1];
    double olo = std::max(lo, a), ohi = std::min(hi, b);
    if (ohi <= olo) continue;
    RatPoint v = rsub(vs[i + 1], vs[i]);
    RatVec n{v.y, -v.x};  // outward normal, |n| = edge length
    Rat value = rdot(vs[i], n);
    Rat t0 = (olo == a) ? Rat(0) : edge_cut_parameter(vs[i], v, olo);
    Rat t1 = (ohi == b) ? Rat(1) : edge_cut_parameter(vs[i], v, ohi);
    if (t1 > t0) total += (t1 - t0) * value;
  }
  return rat_to_double(total);
}

Rat cross_action_exact(const Curve& base, const Curve& target, Mode mode) {
  if (!base.complete()) fail(ErrorCode::IncompleteCurve, "base curve must be complete");
  if (base.kind() != CurveKind::polygonal || target.kind() != CurveKind::polygonal)
    fail(ErrorCode::InvalidArgument, "exact cross action requires polygonal curves");
  if (!base.matches_mode(mode) || !target.matches_mode(mode))
    fail(ErrorCode::ModeMismatch, "curve shape does not match the requested mode");
  const auto& vs = target.vertices();
  Rat total = 0;
  for (size_t i = 0; i + 1 < vs.size(); ++i) {
    RatPoint v = rsub(vs[i + 1], vs[i]);
    RatVec n{v.y, -v.x};
    total += mode_is_convex(mode) ? support_max_exact(base, n) : support_min_exact(base, n);
  }
  return total;
}

double cross_action(const Curve& base, const Curve& target, Mode mode) {
  if (!base.complete()) fail(ErrorCode::IncompleteCurve, "base curve must be complete");
  if (!base.matches_mode(mode) || !target.matches_mode(mode))
    fail(ErrorCode::ModeMismatch, "curve shape does not match the requested mode");
  if (base.kind() == CurveKind::polygonal && target.kind() == CurveKind::polygonal)
    return rat_to_double(cross_action_exact(base, target, mode));

  if (target.kind() == CurveKind::polygonal) {
    const auto& vs = target.vertices();
    double total = 0;
    for (size_t i = 0; i + 1 < vs.size(); ++i) {
      Vec2 P = to_vec2(vs[i]), Q = to_vec2(vs[i + 1]);
      Vec2 n{Q.y - P.y, P.x - Q.x};
      total += mode_is_convex(mode) ? support_max(base, n) : support_min(base, n);
    }
    return total;
  }

  // parametric target: integrate support(base, nu(theta)) |gamma'(theta)|
  auto f = [&](double t) {
    double t0 = target.theta_min(), t1 = target.theta_max();
    double h = std::min(1e-6, (t1 - t0) / 16);
    double ta = std::max(t0, t - h), tb = std::min(t1, t + h);
    double r = target.radial(t);
    double dr = (target.radial(tb) - target.radial(ta)) / (tb - ta);
    double ct = std::cos(t), st = std::sin(t);
    Vec2 g{r * ct, r * st};
    Vec2 gp{dr * ct - r * st, dr * st + r * ct};
    double speed = dnorm(gp);
    if (speed == 0) return 0.0;
    Vec2 nu{gp.y / speed, -gp.x / speed};
    if (ddot(g, nu) < 0) {
      nu.x = -nu.x;
      nu.y = -nu.y;
    }
    double s = mode_is_convex(mode) ? support_max(base, nu) : support_min(base, nu);
    return s * speed;
  };
  return integrate(f, target.theta_min(), target.theta_max());
}

// ---- Hausdorff -------------------------------------------------------------

std::vector<Vec2> curve_polyline(const Curve& c, int n_samples) {
  n_samples = std::max(n_samples, 16);
  std::vector<Vec2> out;
  if (c.kind() == CurveKind::parametric) {
    out.reserve(n_samples + 1);
    for (int i = 0; i <= n_samples; ++i) {
      double t = c.theta_min() + (c.theta_max() - c.theta_min()) * i / n_samples;
      out.push_back(c.point_at(i == n_samples ? c.theta_max() : t));
    }
    return out;
  }
  const auto& vs = c.vertices();
  double total_len = 0;
  std::vector<double> lens(vs.size() - 1);
  for (size_t i = 0; i + 1 < vs.size(); ++i) {
    Vec2 a = to_vec2(vs[i]), b = to_vec2(vs[i + 1]);
    lens[i] = std::hypot(b.x - a.x, b.y - a.y);
    total_len += lens[i];
  }
  for (size_t i = 0; i + 1 < vs.size(); ++i) {
    Vec2 a = to_vec2(vs[i]), b = to_vec2(vs[i + 1]);
    int pieces = std::max(1, static_cast<int>(std::lround(n_samples * lens[i] / total_len)));
    for (int j = 0; j < pieces; ++j)
      out.push_back({a.x + (b.x - a.x) * j / pieces, a.y + (b.y - a.y) * j / pieces});
  }
  out.push_back(to_vec2(vs.back()));
  return out;
}

namespace {

double point_segment_dist(const Vec2& p, const Vec2& a, const Vec2& b) {
  Vec2 ab{b.x - a.x, b.y - a.y};
  Vec2 ap{p.x - a.x, p.y - a.y};
  double len2 = ab.x * ab.x + ab.y * ab.y;
  double t = len2 == 0 ? 0.0 : std::clamp((ap.x * ab.x + ap.y * ab.y) / len2, 0.0, 1.0);
  double dx = p.x - (a.x + t * ab.x), dy = p.y - (a.y + t * ab.y);
  return std::hypot(dx, dy);
}

double point_polyline_dist(const Vec2& p, const std::vector<Vec2>& poly) {
  if (poly.size() == 1) return std::hypot(p.x - poly[0].x, p.y - poly[0].y);
  double best = 1e300;
  for (size_t i = 0; i + 1 < poly.size(); ++i)
    best = std::min(best, point_segment_dist(p, poly[i], poly[i + 1]));
  return best;
}

// sup over a of dist(a, B), a running over the polyline with local refinement
double directed_hausdorff(const std::vector<Vec2>& a, const std::vector<Vec2>& b) {
  const int kSub = 8;
  double best = 0;
  size_t best_seg = 0;
  double best_t = 0;
  auto consider = [&](size_t seg, double t, const Vec2& p) {
    double d = point_polyline_dist(p, b);
    if (d > best) {
      best = d;
      best_seg = seg;
      best_t = t;
    }
  };
  if (a.size() == 1) return point_polyline_dist(a[0], b);
  for (size_t i = 0; i + 1 < a.size(); ++i) {
    for (int j = 0; j <= kSub; ++j) {
      double t = static_cast<double>(j) / kSub;
      Vec2 p{a[i].x + (a[i + 1].x - a[i].x) * t, a[i].y + (a[i + 1].y - a[i].y) * t};
      consider(i, t, p);
    }
  }
  // refine inside the winning segment
  auto at = [&](double t) {
    const Vec2 &p0 = a[best_seg], &p1 = a[best_seg + 1];
    return Vec2{p0.x + (p1.x - p0.x) * t, p0.y + (p1.y - p0.y) * t};
  };
  double lo = std::max(0.0, best_t - 1.0 / kSub), hi = std::min(1.0, best_t + 1.0 / kSub);
  double refined = refine_extremum([&](double t) { return point_polyline_dist(at(t), b); }, lo,
                                   hi, true, nullptr);
  return std::max(best, refined);
}

}  // namespace

double hausdorff_distance(const std::vector<Vec2>& a, const std::vector<Vec2>& b) {
  if (a.empty() || b.empty()) fail(ErrorCode::EmptyInput, "hausdorff of an empty set");
  return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

double hausdorff_distance(const Curve& a, const Curve& b, int n_samples) {
  return hausdorff_distance(curve_polyline(a, n_samples), curve_polyline(b, n_samples));
}

// ---- rational-normal points ------------------------------------------------

std::vector<RationalNormalPoint> rational_normal_points(const Curve& c, int l) {
  if (l < 1) fail(ErrorCode::InvalidArgument, "truncation level must be >= 1");
  if (!c.complete())
    fail(ErrorCode::NotCompleteOrNotStrict, "rational-normal points need a complete curve");
  bool convex = c.convex_ok();
  if (!convex && !c.concave_ok())
    fail(ErrorCode::NotCompleteOrNotStrict, "curve is neither convex nor concave");
  if (c.kind() == CurveKind::parametric && c.shape_class() != ShapeClass::strictly_convex &&
      c.shape_class() != ShapeClass::strictly_concave)
    fail(ErrorCode::NotCompleteOrNotStrict, "parametric curves must be declared strict");

  std::vector<RationalNormalPoint> out;
  auto push_endpoint = [&](bool on_x) {
    RationalNormalPoint e;
    e.is_endpoint = true;
    e.normal = on_x ? IntVec{1, 0} : IntVec{0, 1};
    e.hit.is_face = false;
    if (c.kind() == CurveKind::polygonal) {
      e.hit.exact = true;
      e.hit.rat_point = on_x ? c.x_endpoint_exact() : c.y_endpoint_exact();
      e.hit.point = to_vec2(e.hit.rat_point);
      e.hit.vertex_index = on_x ? 0 : static_cast<int>(c.vertices().size()) - 1;
      e.weight_exact = on_x ? e.hit.rat_point.x : e.hit.rat_point.y;
      e.exact = true;
      e.weight = rat_to_double(e.weight_exact);
    } else {
      e.hit.point = on_x ? c.x_endpoint() : c.y_endpoint();
      e.weight = on_x ? e.hit.point.x : e.hit.point.y;
    }
    e.hit.theta = on_x ? 0.0 : kHalfPi;
    e.hit.value = e.weight;
    out.push_back(std::move(e));
  };
  push_endpoint(true);
  push_endpoint(false);

  std::vector<IntVec> normals;
  for (int i = 1; i <= l; ++i)
    for (int j = 1; j <= l; ++j)
      if (gcd_ll(i, j) == 1) normals.push_back({i, j});
  std::sort(normals.begin(), normals.end(), [](const IntVec& a, const IntVec& b) {
    return a.x * b.y - a.y * b.x > 0;  // increasing normal angle
  });

  Vec2 ex = c.x_endpoint(), ey = c.y_endpoint();
  for (const auto& n : normals) {
    SupportHit hit = convex ? support_argmax(c, n) : support_argmin(c, n);
    if (!hit.is_face) {
      auto near = [](const Vec2& a, const Vec2& b) {
        return std::abs(a.x - b.x) + std::abs(a.y - b.y) < 1e-11;
      };
      if (near(hit.point, ex) || near(hit.point, ey)) continue;  // endpoint already listed
    }
    RationalNormalPoint r;
    r.hit = hit;
    r.normal = n;
    r.weight = hit.value;
    if (hit.exact) {
      r.exact = true;
      r.weight_exact = hit.rat_value;
    }
    out.push_back(std::move(r));
  }
  return out;
}

NiceResult nice_check(const Curve& c, int l, int precision) {
  NiceResult res;
  res.points = rational_normal_points(c, l);
  const int n = static_cast<int>(res.points.size());
  bool all_exact = true;
  for (const auto& p : res.points) all_exact &= p.exact;
  double wmax = 0;
  for (const auto& p : res.points) wmax = std::max(wmax, std::abs(p.weight));
  double threshold = std::pow(10.0, -precision) * std::max(1.0, wmax);

  // enumerate coefficient vectors by increasing max-norm, first nonzero > 0
  auto relation_holds = [&](const std::vector<long long>& a) {
    if (all_exact) {
      Rat s = 0;
      for (int i = 0; i < n; ++i)
        if (a[i] != 0) s += Rat(a[i]) * res.points[i].weight_exact;
      return s == 0;
    }
    double s = 0;
    for (int i = 0; i < n; ++i) s += static_cast<double>(a[i]) * res.points[i].weight;
    return std::abs(s) < threshold;
  };

  double combos = std::pow(2.0 * l + 1, n);
  bool exhaustive = combos <= 3e6;
  std::vector<long long> a(n, 0);
  bool found = false;

  if (exhaustive) {
    for (int radius = 1; radius <= l && !found; ++radius) {
      std::fill(a.begin(), a.end(), -radius);
      while (true) {
        long long mx = 0;
        for (long long v : a) mx = std::max(mx, std::llabs(v));
        bool canonical = false;
        for (long long v : a) {
          if (v != 0) {
            canonical = v > 0;
            break;
          }
        }
        if (mx == radius && canonical && relation_holds(a)) {
          found = true;
          break;
        }
        int i = n - 1;
        while (i >= 0 && a[i] == radius) a[i--] = -radius;
        if (i < 0) break;
        ++a[i];
      }
    }
  } else {
    // bounded fallback: pairs and triples only
    for (int i = 0; i < n && !found; ++i)
      for (int j = i + 1; j < n && !found; ++j)
        for (long long ci = 1; ci <= l && !found; ++ci)
          for (long long cj = -l; cj <= l && !found; ++cj) {
            if (cj == 0) continue;
            std::fill(a.begin(), a.end(), 0);
            a[i] = ci;
            a[j] = cj;
            if (relation_holds(a)) found = true;
          }
  }

  int face_idx = -1;
  for (int i = 0; i < n; ++i)
    if (res.points[i].hit.is_face) {
      face_idx = i;
      break;
    }

  std::ostringstream os;
  if (found) {
    res.verdict = NiceVerdict::not_nice;
    res.witness = a;
    os << "not_nice: ";
    bool first = true;
    for (int i = 0; i < n; ++i) {
      if (a[i] == 0) continue;
      if (!first) os << " + ";
      os << a[i] << "*w[" << i << "]";
      first = false;
    }
    os << " = 0";
  } else if (face_idx >= 0) {
    res.verdict = NiceVerdict::not_nice;
    res.face_witness = true;
    res.face_index = face_idx;
    os << "not_nice: a whole edge supports normal (" << res.points[face_idx].normal.x << ","
       << res.points[face_idx].normal.y << "); distinct points on it share one weight";
  } else {
    res.verdict = NiceVerdict::plausibly_nice;
    os << "plausibly_nice: no integer relation with coefficients bounded by " << l;
    if (!exhaustive) os << " (pairs and triples only)";
  }
  res.summary = os.str();
  return res;
}

// ---- containment -----------------------------------------------------------

bool region_contains(const Curve& curve, const RatPoint& p) {
  if (!curve.complete() || !curve.convex_ok() || curve.kind() != CurveKind::polygonal)
    fail(ErrorCode::InvalidArgument, "containment needs a complete convex polygonal curve");
  if (p.x < 0 || p.y < 0) return false;
  const auto& vs = curve.vertices();
  for (size_t i = 0; i + 1 < vs.size(); ++i) {
    RatPoint v = rsub(vs[i + 1], vs[i]);
    RatVec n{v.y, -v.x};
    if (rdot(p, n) > rdot(vs[i], n)) return false;
  }
  return true;
}

Rat radial_reach(const Curve& curve, const RatPoint& dir) {
  if (!curve.complete() || !curve.convex_ok() || curve.kind() != CurveKind::polygonal)
    fail(ErrorCode::InvalidArgument, "radial reach needs a complete convex polygonal curve");
  if (dir.x == 0 && dir.y == 0) fail(ErrorCode::ZeroVector, "zero direction");
  if (dir.x < 0 || dir.y < 0) fail(ErrorCode::InvalidArgument, "direction must be nonnegative");
  const auto& vs = curve.vertices();
  bool have = false;
  Rat best = 0;
  for (size_t i = 0; i + 1 < vs.size(); ++i) {
    RatPoint v = rsub(vs[i + 1], vs[i]);
    RatVec n{v.y, -v.x};
    Rat dn = rdot(dir, n);
    if (dn <= 0) continue;
    Rat t = rdot(vs[i], n) / dn;
    if (!have || t < best) {
      best = t;
      have = true;
    }
  }
  if (!have) fail(ErrorCode::InvalidArgument, "direction does not meet the curve");
  return best;
}

}  // namespace echcap
