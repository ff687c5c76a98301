#pragma once

#include <optional>
#include <vector>

#include "ccproj/fan.hpp"

namespace ccproj {

/// Frames of L and L* and the parameter maps between them.
///
/// A center t(psi) on L is the pencil plane with parameter psi in the dual
/// frame, and the pencil plane(theta) through L is the point with parameter
/// theta on L*. With the frames built by PencilFrame::dual both maps are the
/// identity on parameters.
struct DualCorrespondence {
  PencilFrame source;
  PencilFrame target;

  explicit DualCorrespondence(const PencilFrame& f) : source(f), target(f.dual()) {}

  /// Dual-pencil parameter of the plane dual to center t(psi).
  double plane_of_center(double psi) const { return wrap_angle(psi); }
  /// Parameter on L* of the point dual to plane(theta).
  double point_of_plane(double theta) const { return wrap_angle(theta); }
  /// Dual arc of an arc [a, b] on L. In these coordinates it is [b, a].
  static ArcSegment dual_arc(const ArcSegment& arc) { return arc.complement(); }
};

/// Dual section at pencil parameter psi: all beta with the plane (psi, beta)
/// meeting every section of the fan. Exact for fans with interpolated gaps.
/// Returns nullopt when empty.
std::optional<ConvexPolygon> dual_section(const SectionFan& fan, double psi,
                                          const Tolerances& tol = Tolerances::defaults());

/// Dual section computed as the polar of the closed shadow complement from the
/// center t(psi), with the centroid of the dual section as reference.
/// Falls back to dual_section when the complement has empty interior.
ConvexPolygon dual_section_polar(const SectionFan& fan, double psi,
                                 const Tolerances& tol = Tolerances::defaults());

/// The L-dual fan over L*. Sampled at the source sample parameters plus
/// `extra_params`. Throws InvalidInput when the fan fails validation (only
/// checked when `check` is true).
SectionFan l_dual(const SectionFan& fan, const std::vector<double>& extra_params = {},
                  const Tolerances& tol = Tolerances::defaults(), bool check = true);

struct InvolutionResidual {
  std::vector<double> per_section;
  double max = 0.0;
  double diameter = 0.0;
};

InvolutionResidual involution_residual(const SectionFan& fan,
                                       const std::vector<double>& extra_params = {},
                                       const Tolerances& tol = Tolerances::defaults());

/// Section at an angle that may lie outside [0, pi): beyond pi the section reads -S.
ConvexPolygon signed_section(const SectionFan& fan, double angle);
double signed_support(const SectionFan& fan, double angle, const Vec2& d);

/// True iff every sample strictly inside `arc` equals the sine-weighted
/// combination of the endpoint sections. With `t_dir`, only the widths
/// orthogonal to unit_dir(*t_dir) are compared.
bool affine_dependence_check(const SectionFan& fan, const ArcSegment& arc,
                             std::optional<double> t_dir = std::nullopt,
                             const Tolerances& tol = Tolerances::defaults());

struct PointednessRow {
  double theta;
  bool pointed;
  bool dual_affine;
};

std::vector<PointednessRow> pointedness_table(const SectionFan& fan, const ArcSegment& arc,
                                              const std::vector<double>& extra_params = {},
                                              const Tolerances& tol = Tolerances::defaults());

/// is_pointed agrees with the directional affine check of the dual fan over
/// DualCorrespondence::dual_arc(arc) on every sample.
bool pointedness_duality_check(const SectionFan& fan, const ArcSegment& arc,
                               const std::vector<double>& extra_params = {},
                               const Tolerances& tol = Tolerances::defaults());

/// The primal line dual to a line of the dual space. Throws IntersectsDualL
/// if `l` meets L*.
ProjLine dual_of_found_line(const PencilFrame& frame, const ProjLine& l,
                            const Tolerances& tol = Tolerances::defaults());

/// Matrix form: the line with traces M c(theta) is dual to the one with -M^T.
inline Mat2 dual_matrix(const Mat2& M) { return -M.transpose(); }

}  // namespace ccproj
