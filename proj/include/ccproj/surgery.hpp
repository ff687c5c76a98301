#pragma once

#include <array>
#include <vector>

#include "ccproj/fan.hpp"

namespace ccproj {

struct SurgerySpec {
  enum class Kind { S, P };
  Kind kind = Kind::S;
  /// Pencil parameters for S, directions on L for P.
  ArcSegment arc;
};

/// Replaces the body over the pencil arc by the hull of its two end sections.
/// Throws InvalidInput for an arc of length >= pi.
SectionFan surgery_s(const SectionFan& fan, const ArcSegment& arc,
                     const Tolerances& tol = Tolerances::defaults());

/// Smallest convex superset of `section` pointed relative to `arc`.
ConvexPolygon pointify(const ConvexPolygon& section, const ArcSegment& arc,
                       const Tolerances& tol = Tolerances::defaults());

SectionFan surgery_p(const SectionFan& fan, const ArcSegment& arc,
                     const Tolerances& tol = Tolerances::defaults());

SectionFan apply(const SectionFan& fan, const SurgerySpec& spec,
                 const Tolerances& tol = Tolerances::defaults());

/// Each section replaced by the intersection of its support slabs in the four
/// directions. Throws DuplicateDirections unless the directions are distinct mod pi.
SectionFan octagonalize(const SectionFan& fan, const std::array<double, 4>& dirs,
                        const Tolerances& tol = Tolerances::defaults());

/// The four P-surgery arcs: for sorted directions a1 < ... < a4, arc i runs
/// ccw from a_{i+1} to a_i (the long way round).
std::array<ArcSegment, 4> octagon_arcs(const std::array<double, 4>& dirs);

/// Octagonalization as the composition of the four P-surgeries.
SectionFan octagonalize_via_p(const SectionFan& fan, const std::array<double, 4>& dirs,
                              const Tolerances& tol = Tolerances::defaults());

/// Largest sectionwise Hausdorff distance, over the union of sample parameters.
double fan_distance(const SectionFan& a, const SectionFan& b);

struct SPDualityReport {
  double distance = 0.0;
  double diameter = 0.0;
  bool ok = false;
};

/// Compares l_dual(surgery_p(fan, arc)) with surgery_s(l_dual(fan), dual arc).
/// Passes when the distance is at most eps * max(1, diameter); eps defaults to eps_dual.
SPDualityReport sp_duality(const SectionFan& fan, const ArcSegment& arc,
                           const std::vector<double>& extra_params = {}, double eps = -1.0,
                           const Tolerances& tol = Tolerances::defaults());

bool sp_duality_check(const SectionFan& fan, const ArcSegment& arc,
                      const std::vector<double>& extra_params = {}, double eps = -1.0,
                      const Tolerances& tol = Tolerances::defaults());

/// Sorted, wrapped directions; throws DuplicateDirections on repeats.
std::array<double, 4> sorted_directions(const std::array<double, 4>& dirs);

}  // namespace ccproj
