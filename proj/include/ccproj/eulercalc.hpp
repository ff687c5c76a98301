#pragma once

#include <optional>
#include <vector>

#include "ccproj/fan.hpp"

namespace ccproj {

struct ChiReport {
  int chi = 0;
  std::optional<ArcSegment> empty_arc;  // pencil parameters where the slice is empty
  bool membership = false;              // plane belongs to the L-dual set
  bool pencil_plane = false;            // plane contains L
};

/// Euler characteristic of the plane section of the body. The slice by each
/// pencil plane is a segment, a point, or empty; chi is 0 when it is never
/// empty and 1 when it is empty over one open arc. Throws NonIntervalEmptySet
/// when the empty parameters do not form a single arc.
ChiReport chi_section(const SectionFan& fan, const HPlane& pi,
                      const Tolerances& tol = Tolerances::defaults());

/// Emptiness gap at theta: positive iff pi misses section_at(theta).
double slice_gap(const SectionFan& fan, const Vec4& pi, double theta);

struct DualPoint {
  double psi = 0.0;
  Vec2 beta;
};

/// Coordinates of the plane as a point of the dual pencil; nullopt for planes containing L.
std::optional<DualPoint> dual_coordinates(const PencilFrame& frame, const Vec4& pi,
                                          const Tolerances& tol = Tolerances::defaults());

/// Signed margin of beta in the dual fan's section at psi: positive inside.
double dual_margin(const SectionFan& dual, const DualPoint& q);

struct ChiMismatch {
  std::size_t index;
  int chi;
  double margin;
};

struct ChiCrosscheck {
  std::size_t planes = 0;
  std::size_t in_band = 0;
  std::size_t compared = 0;
  std::size_t members = 0;
  std::vector<ChiMismatch> mismatches;
  double band = 0.0;
};

/// chi_section membership against point membership in l_dual(fan). Planes
/// whose dual margin is within band * max(1, dual diameter) are not compared.
ChiCrosscheck chi_dual_crosscheck(const SectionFan& fan, const SectionFan& dual,
                                  const std::vector<HPlane>& planes, double band = 5e-2,
                                  const Tolerances& tol = Tolerances::defaults());

}  // namespace ccproj
