#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ccproj/planar.hpp"
#include "ccproj/projcore.hpp"

namespace ccproj {

/// One sample of a fan: the section of the body by pencil plane(theta).
struct Section {
  double theta = 0.0;
  ConvexPolygon poly;
  bool touches_L = false;  // set by importers when a source point lay on L
};

/// Weights expressing section_at(theta) = a * si * S_i + b * sj * S_j.
struct GapWeights {
  std::size_t i = 0, j = 0;
  double a = 1.0, b = 0.0;
  double si = 1.0, sj = 1.0;  // +-1: sections continue as -S past theta = pi
};

/// A body in RP^3 given by convex sections over the pencil of planes through L.
///
/// Samples are sorted by theta in [0, pi). Between neighbors the body is the
/// convex hull of the two neighboring sections, which in section coordinates
/// is the Minkowski combination
///     S(theta) = sin(theta_j - theta)/sin(gap) * S_i + sin(theta - theta_i)/sin(gap) * S_j.
/// The last gap wraps to theta_0 + pi, where the section reads -S_0.
class SectionFan {
 public:
  SectionFan(PencilFrame frame, std::vector<Section> samples,
             const Tolerances& tol = Tolerances::defaults());

  const PencilFrame& frame() const { return frame_; }
  const std::vector<Section>& samples() const { return samples_; }
  std::size_t size() const { return samples_.size(); }
  const Section& operator[](std::size_t i) const { return samples_[i]; }
  std::vector<double> thetas() const;

  /// Index of a sample at theta (within eps), if any.
  std::optional<std::size_t> find_sample(double theta, double eps = 1e-12) const;

  GapWeights weights(double theta) const;
  ConvexPolygon section_at(double theta) const;
  /// Support function of section_at(theta) in direction d.
  double support_at(double theta, const Vec2& d) const;

  /// Largest sample diameter (the scale used for relative tolerances).
  double diameter() const;
  /// Largest |vertex| over all samples.
  double extent() const;

 private:
  GapWeights weights_mod_pi(double t) const;

  PencilFrame frame_;
  std::vector<Section> samples_;
};

/// Shadow of the body projected from a center t on L onto RP^3/t = RP^2.
///
/// RP^2 carries coordinates (r : y0 : y1) with r = <p, unit_normal(psi)> and
/// (y0, y1) = unit_normal(theta); pi(L) = (1 : 0 : 0). On each line l_theta
/// through pi(L) the projected section occupies rho = r/s in [lo, hi].
struct ProjectionProfile {
  double psi = 0.0;  // center t = point_on_line(psi)
  std::vector<double> thetas;
  std::vector<double> lo, hi;
  Vec3 marked_point{1.0, 0.0, 0.0};

  /// True iff RP^2 point X is strictly inside the shadow (beyond eps).
  bool covers(const SectionFan& fan, const Vec3& X, double eps) const;
};

ProjectionProfile project_from(const SectionFan& fan, const HPoint& t,
                               const std::vector<double>& directions = {},
                               const Tolerances& tol = Tolerances::defaults());
ProjectionProfile project_from_parameter(const SectionFan& fan, double psi,
                                         const std::vector<double>& directions = {});

struct ValidationReport {
  bool convex_ok = true;
  bool disjoint_ok = true;
  bool concave_ok = true;
  bool enough_sections = true;
  std::vector<std::size_t> nonconvex_sections;
  std::vector<std::size_t> touching_sections;
  std::vector<double> failing_centers;
  int n_centers = 0;
  int n_probe = 0;
  long probes = 0;
  double worst_margin = 0.0;  // most negative coverage margin seen (concavity)
  std::vector<std::string> messages;

  bool valid() const { return convex_ok && disjoint_ok && concave_ok && enough_sections; }
};

ValidationReport validate(const SectionFan& fan, const Tolerances& tol = Tolerances::defaults());

/// The two corners of the support quadrangle spanned by the tangent lines in
/// directions arc.start and arc.end whose support directions avoid the open arc.
/// Throws DegenerateQuadrangle when the endpoints coincide.
std::pair<Vec2, Vec2> pointed_corners(const ConvexPolygon& section, const ArcSegment& arc,
                                      const Tolerances& tol = Tolerances::defaults());

/// Vertices (a_v, b_v) if `section` is pointed relative to `arc`.
std::optional<std::pair<Vec2, Vec2>> is_pointed(const ConvexPolygon& section,
                                                const ArcSegment& arc,
                                                const Tolerances& tol = Tolerances::defaults());

}  // namespace ccproj
