#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "echcap/geometry.hpp"

namespace echcap {

struct CurveGenParams {
  int n_points = 8;          // raw samples before the hull pass
  long long denominator = 48;  // rational grid resolution
  double radius_lo = 0.5;
  double radius_hi = 1.5;
};

// seeded, deterministic; always returns a valid complete curve of the class or
// raises GenerationFailed after bounded retries
Curve random_convex_curve(std::uint64_t seed, const CurveGenParams& params = {});
// concave curves are built inside the unit square (endpoints on the axes,
// curve through [0,1]^2), via the reflection of a random convex curve
Curve random_concave_curve(std::uint64_t seed, const CurveGenParams& params = {});

// cross_action(base, target, mode) / sqrt(area(target))
double isoperimetric_ratio(const Curve& base, const Curve& target, Mode mode);

struct InequalityCheck {
  double ratio_target = 0;
  double ratio_base = 0;     // the self ratio, the conjectured extremum
  double slack = 0;          // convex: target - base >= 0; concave: base - target >= 0
  bool holds = false;
  bool exact = false;        // slack sign decided in exact arithmetic
  bool equality = false;     // exact equality (scaling pairs)
};

// convex mode: A_base(target)/sqrt(A(target)) >= A_base(base)/sqrt(A(base));
// concave mode: the mirrored <=. Exact decision for polygonal pairs via
// cross-multiplied squares.
InequalityCheck check_inequality(const Curve& base, const Curve& target, Mode mode);

// the reflected convex partner of a concave curve in the unit square,
// including the two axis-completion segments
Curve unit_square_reflection(const Curve& concave_in_unit_square);

// A_{refl(base)}(refl(target)) + A_base(target); equals 2 for concave curves in
// the unit square
double reflection_identity_value(const Curve& base, const Curve& target);
Rat reflection_identity_value_exact(const Curve& base, const Curve& target);

struct ContinuityRow {
  int index = 0;
  double value = 0;   // A_base(target_j)
  double gap = 0;     // |value - limit_value|
};

// |A_base(target_j) - A_base(limit)| along a refining family
std::vector<ContinuityRow> continuity_probe(const Curve& base, const std::vector<Curve>& targets,
                                            const Curve& limit, Mode mode);

struct TrialRow {
  std::uint64_t seed = 0;
  Mode mode = Mode::convex;
  double slack = 0;
  bool holds = false;
  bool equality = false;
  std::string base_fingerprint;
  std::string target_fingerprint;
};

// deterministic batch: trial i uses seed_base + i; pairs are independent draws,
// every 8th trial is an exact scaling pair (equality case). OpenMP parallel,
// results indexed by trial.
std::vector<TrialRow> inequality_trials(std::uint64_t seed_base, int n_trials, Mode mode,
                                        int jobs = 0);

}  // namespace echcap
