#include "ccproj/surgery.hpp"

#include <algorithm>
#include <cmath>

#include "ccproj/dualize.hpp"

namespace ccproj {

SectionFan surgery_s(const SectionFan& fan, const ArcSegment& arc, const Tolerances& tol) {
  const double len = arc.length();
  if (len >= kPi - 1e-12) {
    throw GeometryError(ErrorCode::InvalidInput, "S-surgery arc must be shorter than the pencil");
  }
  const double a = wrap_angle(arc.start), b = wrap_angle(arc.start + len);
  std::vector<Section> out;
  for (const Section& s : fan.samples()) {
    if (!arc.contains(s.theta, false, 1e-12)) out.push_back(s);
  }
  for (double t : {a, b}) {
    if (!fan.find_sample(t)) out.push_back({t, fan.section_at(t), false});
  }
  if (out.size() < 3) {
    // Only the endpoints survive: the rest of the pencil is one gap whose
    // sections are unchanged, so sampling its midpoint keeps k >= 3 exactly.
    const double mid = wrap_angle(b + 0.5 * (kPi - len));
    out.push_back({mid, fan.section_at(mid), false});
  }
  return SectionFan(fan.frame(), std::move(out), tol);
}

ConvexPolygon pointify(const ConvexPolygon& section, const ArcSegment& arc, const Tolerances& tol) {
  const auto [A, B] = pointed_corners(section, arc, tol);
  std::vector<Vec2> pts = section.vertices();
  pts.push_back(A);
  pts.push_back(B);
  return convex_hull(pts);
}

SectionFan surgery_p(const SectionFan& fan, const ArcSegment& arc, const Tolerances& tol) {
  std::vector<Section> out;
  for (const Section& s : fan.samples()) out.push_back({s.theta, pointify(s.poly, arc, tol), s.touches_L});
  return SectionFan(fan.frame(), std::move(out), tol);
}

SectionFan apply(const SectionFan& fan, const SurgerySpec& spec, const Tolerances& tol) {
  return spec.kind == SurgerySpec::Kind::S ? surgery_s(fan, spec.arc, tol)
                                           : surgery_p(fan, spec.arc, tol);
}

std::array<double, 4> sorted_directions(const std::array<double, 4>& dirs) {
  std::array<double, 4> d;
  for (int i = 0; i < 4; ++i) d[i] = wrap_angle(dirs[i]);
  std::sort(d.begin(), d.end());
  for (int i = 0; i < 4; ++i) {
    const double gap = i < 3 ? d[i + 1] - d[i] : d[0] + kPi - d[3];
    if (gap <= 1e-12) throw GeometryError(ErrorCode::DuplicateDirections, "directions must be distinct");
  }
  return d;
}

SectionFan octagonalize(const SectionFan& fan, const std::array<double, 4>& dirs, const Tolerances& tol) {
  const auto d = sorted_directions(dirs);
  std::vector<Section> out;
  for (const Section& s : fan.samples()) {
    std::vector<HalfPlane> hps;
    for (double di : d) {
      const Vec2 n = unit_normal(di);
      hps.push_back({n, s.poly.support(n)});
      hps.push_back({-n, s.poly.support(-n)});
    }
    const double scale = std::max(1.0, s.poly.extent());
    auto oct = halfplane_intersection(hps, 4.0 * scale + 1.0, 1e-13 * scale);
    out.push_back({s.theta, oct ? *oct : s.poly, s.touches_L});
  }
  return SectionFan(fan.frame(), std::move(out), tol);
}

std::array<ArcSegment, 4> octagon_arcs(const std::array<double, 4>& dirs) {
  const auto d = sorted_directions(dirs);
  std::array<ArcSegment, 4> arcs;
  for (int i = 0; i < 4; ++i) arcs[i] = ArcSegment(d[(i + 1) % 4], d[i]);
  return arcs;
}

SectionFan octagonalize_via_p(const SectionFan& fan, const std::array<double, 4>& dirs,
                              const Tolerances& tol) {
  SectionFan f = fan;
  for (const ArcSegment& arc : octagon_arcs(dirs)) f = surgery_p(f, arc, tol);
  return f;
}

double fan_distance(const SectionFan& a, const SectionFan& b) {
  std::vector<double> params = a.thetas();
  for (double t : b.thetas()) params.push_back(t);
  double worst = 0.0;
  for (double t : params) worst = std::max(worst, hausdorff(a.section_at(t), b.section_at(t)));
  return worst;
}

SPDualityReport sp_duality(const SectionFan& fan, const ArcSegment& arc,
                           const std::vector<double>& extra_params, double eps, const Tolerances& tol) {
  std::vector<double> params = extra_params;
  params.push_back(arc.start);
  params.push_back(arc.end);
  const SectionFan lhs = l_dual(surgery_p(fan, arc, tol), params, tol);
  const SectionFan rhs = surgery_s(l_dual(fan, params, tol), DualCorrespondence::dual_arc(arc), tol);
  SPDualityReport r;
  r.distance = fan_distance(lhs, rhs);
  r.diameter = std::max(lhs.diameter(), rhs.diameter());
  r.ok = r.distance <= (eps < 0 ? tol.eps_dual : eps) * std::max(1.0, r.diameter);
  return r;
}

bool sp_duality_check(const SectionFan& fan, const ArcSegment& arc,
                      const std::vector<double>& extra_params, double eps, const Tolerances& tol) {
  return sp_duality(fan, arc, extra_params, eps, tol).ok;
}

}  // namespace ccproj
