#pragma once

#include <optional>
#include <string>
#include <vector>

#include "echcap/capacity.hpp"
#include "echcap/geometry.hpp"
#include "echcap/lattice_paths.hpp"

namespace echcap {

// support location of a path edge's normal on the curve
SupportHit edge_point(const Curve& curve, const PathEdge& e, Mode mode);

// multiplicity rule: interior hits keep the run multiplicity; runs mapped to
// the x-endpoint weigh |total y-displacement|, to the y-endpoint |total
// x-displacement|
long long edge_multiplicity(const Curve& curve, const PathEdge& e, Mode mode);

struct SpectralAtom {
  Vec2 point{};
  double theta = 0;
  IntVec normal{};       // primitive normal of the run that produced the atom
  long long multiplicity = 0;
  double weight = 0;     // multiplicity * w(p)
  bool exact = false;
  Rat weight_exact{};
  bool is_face = false;  // allow_faces policy only
  Vec2 face_a{}, face_b{};
  double theta_lo = 0, theta_hi = 0;  // angular extent (faces)
};

struct SpectralDistribution {
  int k = 0;
  Mode mode = Mode::convex;
  IntegralPath path;               // lexicographically smallest optimal path
  bool unique_optimum = false;
  std::vector<SpectralAtom> atoms; // merged by point, sorted by angle
  double total = 0;                // equals the capacity value
  bool exact = false;
  Rat total_exact{};
};

enum class FacePolicy { reject, allow };

// distribution attached to the k-th capacity. Atoms at the same point merge.
// FacePolicy::reject raises FaceAmbiguity when a support argmax is a whole
// edge; FacePolicy::allow books the face with its well-defined weight h(n).
SpectralDistribution spectral_distribution(const Curve& curve, int k, Mode mode,
                                           FacePolicy faces = FacePolicy::reject,
                                           const EngineOptions& opts = {});
SpectralDistribution spectral_distribution_for(const Curve& curve, const CapacityResult& cap,
                                               FacePolicy faces = FacePolicy::reject);

// total atom weight inside the closed angular interval; boundary atoms count
// fully. errors: FaceAmbiguity if a face straddles the interval boundary
double distribution_mass(const SpectralDistribution& d, const AngleInterval& arc);

// c_k / sqrt(k) - sqrt(4 * area); the square root of twice the symplectic
// volume of the domain is sqrt(4 * area)
double weyl_residual(const Curve& curve, int k, double c_k);

// Rows report the best realization under ties: when several optimal paths
// share the capacity value the attached distribution is not unique, so err and
// hausdorff take the min over all optima. With a unique optimum this is the
// canonical value.
struct EquidistRow {
  int k = 0;
  std::string arc_id;          // "full" or "arcN"
  double err = 0;              // |mass/sqrt(2k) - arc_action/sqrt(2*area)|
  double hausdorff = 0;        // full: d_H(path/sqrt(k), curve)
                               // arcN: d_H(restricted path/sqrt(k), sub-arc); nan if empty
};

struct ExperimentReport {
  std::vector<EquidistRow> rows;
  std::vector<std::string> warnings;
};

// per k: the full-curve row plus one row per sub-arc. Non-strict curves are
// reported in warnings and processed anyway.
ExperimentReport equidistribution_report(const Curve& curve, const std::vector<int>& ks,
                                         const std::vector<AngleInterval>& sub_arcs,
                                         Mode mode = Mode::convex,
                                         const EngineOptions& opts = {});

// edges of the path whose support point lies inside the closed sub-arc, as a
// polyline (empty when no edge qualifies)
std::vector<Vec2> restricted_path_polyline(const Curve& curve, const IntegralPath& path,
                                           const AngleInterval& arc, Mode mode);

}  // namespace echcap
