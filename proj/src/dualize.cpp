#include "ccproj/dualize.hpp"

#include <algorithm>
#include <cmath>

namespace ccproj {

namespace {

struct Offsets {
  std::vector<Vec2> c;       // unit_normal(theta_i)
  std::vector<double> hp;    // h_{S_i}(unit_normal(psi))
  std::vector<double> hm;    // h_{S_i}(-unit_normal(psi))
};

Offsets offsets(const SectionFan& fan, double psi) {
  Offsets o;
  const Vec2 n = unit_normal(psi);
  for (std::size_t i = 0; i < fan.size(); ++i) {
    o.c.push_back(unit_normal(fan[i].theta));
    o.hp.push_back(fan[i].poly.support(n));
    o.hm.push_back(fan[i].poly.support(-n));
  }
  return o;
}

std::vector<double> merged_params(const std::vector<double>& base, const std::vector<double>& extra) {
  std::vector<double> all;
  for (double t : base) all.push_back(wrap_angle(t));
  for (double t : extra) all.push_back(wrap_angle(t));
  std::sort(all.begin(), all.end());
  std::vector<double> out;
  for (double t : all) {
    if (out.empty() || t - out.back() > 1e-12) out.push_back(t);
  }
  if (out.size() > 1 && out.front() + kPi - out.back() <= 1e-12) out.pop_back();
  return out;
}

}  // namespace

std::optional<ConvexPolygon> dual_section(const SectionFan& fan, double psi, const Tolerances& tol) {
  (void)tol;
  // The plane (psi, beta) meets S_i iff -<beta, c_i> lies in the range of
  // <p, unit_normal(psi)> over S_i. Interpolated gaps add no constraints.
  const Offsets o = offsets(fan, psi);
  std::vector<HalfPlane> hps;
  for (std::size_t i = 0; i < o.c.size(); ++i) {
    hps.push_back({o.c[i], o.hm[i]});
    hps.push_back({-o.c[i], o.hp[i]});
  }
  const double scale = std::max(1.0, fan.extent());
  return halfplane_intersection(hps, 1e6 * scale, 1e-13 * scale);
}

ConvexPolygon dual_section_polar(const SectionFan& fan, double psi, const Tolerances& tol) {
  const auto D = dual_section(fan, psi, tol);
  if (!D) throw GeometryError(ErrorCode::InvalidInput, "empty dual section");
  if (D->degenerate()) return *D;
  const Offsets o = offsets(fan, psi);
  const Vec2 beta = D->centroid();
  const double scale = std::max(1.0, fan.extent());
  std::vector<Vec2> pts;
  for (std::size_t i = 0; i < o.c.size(); ++i) {
    const double g1 = o.hm[i] - beta.dot(o.c[i]);
    const double g2 = o.hp[i] + beta.dot(o.c[i]);
    if (g1 <= 1e-9 * scale || g2 <= 1e-9 * scale) return *D;
    // Shadow boundary points in the chart centered on the dual line of beta.
    pts.push_back(o.c[i] / g1);
    pts.push_back(-o.c[i] / g2);
  }
  const ConvexPolygon closure = convex_hull(pts);
  try {
    return polar_dual(closure, Vec2::Zero(), tol).translated(beta);
  } catch (const GeometryError&) {
    return *D;
  }
}

SectionFan l_dual(const SectionFan& fan, const std::vector<double>& extra_params,
                  const Tolerances& tol, bool check) {
  if (check) {
    const ValidationReport rep = validate(fan, tol);
    if (!rep.valid()) {
      throw GeometryError(ErrorCode::InvalidInput,
                          "fan is not L-convex-concave: " +
                              (rep.messages.empty() ? std::string("invalid") : rep.messages.front()));
    }
  }
  const DualCorrespondence corr(fan.frame());
  std::vector<Section> out;
  for (double psi : merged_params(fan.thetas(), extra_params)) {
    out.push_back({corr.plane_of_center(psi), dual_section_polar(fan, psi, tol), false});
  }
  return SectionFan(corr.target, std::move(out), tol);
}

InvolutionResidual involution_residual(const SectionFan& fan, const std::vector<double>& extra_params,
                                       const Tolerances& tol) {
  const SectionFan d = l_dual(fan, extra_params, tol);
  const SectionFan dd = l_dual(d, extra_params, tol, false);
  InvolutionResidual r;
  r.diameter = fan.diameter();
  for (std::size_t i = 0; i < fan.size(); ++i) {
    const double h = hausdorff(fan[i].poly, dd.section_at(fan[i].theta));
    r.per_section.push_back(h);
    r.max = std::max(r.max, h);
  }
  return r;
}

ConvexPolygon signed_section(const SectionFan& fan, double angle) { return fan.section_at(angle); }

double signed_support(const SectionFan& fan, double angle, const Vec2& d) {
  return fan.support_at(angle, d);
}

bool affine_dependence_check(const SectionFan& fan, const ArcSegment& arc, std::optional<double> t_dir,
                             const Tolerances& tol) {
  const double s = wrap_angle(arc.start);
  const double len = arc.length();
  std::vector<double> inner;
  for (std::size_t i = 0; i < fan.size(); ++i) {
    if (arc.contains(fan[i].theta, false, 1e-12)) inner.push_back(s + arc.offset(fan[i].theta));
  }
  if (inner.empty()) return true;
  if (len >= kPi - 1e-12) return false;
  const double e = s + len;
  const double sl = std::sin(len);
  const double eps = tol.eps_affine * std::max(1.0, fan.diameter());
  if (t_dir) {
    const Vec2 d = unit_normal(*t_dir);
    for (double u : inner) {
      const double a = std::sin(e - u) / sl, b = std::sin(u - s) / sl;
      for (const Vec2& dd : {d, Vec2(-d)}) {
        const double want = a * signed_support(fan, s, dd) + b * signed_support(fan, e, dd);
        if (std::abs(signed_support(fan, u, dd) - want) > eps) return false;
      }
    }
    return true;
  }
  const ConvexPolygon A = signed_section(fan, s), B = signed_section(fan, e);
  for (double u : inner) {
    const double a = std::sin(e - u) / sl, b = std::sin(u - s) / sl;
    if (hausdorff(signed_section(fan, u), minkowski_sum(a, A, b, B)) > eps) return false;
  }
  return true;
}

std::vector<PointednessRow> pointedness_table(const SectionFan& fan, const ArcSegment& arc,
                                              const std::vector<double>& extra_params,
                                              const Tolerances& tol) {
  std::vector<double> params = extra_params;
  params.push_back(arc.start);
  params.push_back(arc.end);
  const SectionFan dual = l_dual(fan, params, tol);
  std::vector<PointednessRow> rows;
  for (std::size_t i = 0; i < fan.size(); ++i) {
    PointednessRow r;
    r.theta = fan[i].theta;
    r.pointed = is_pointed(fan[i].poly, arc, tol).has_value();
    r.dual_affine =
        affine_dependence_check(dual, DualCorrespondence::dual_arc(arc), fan[i].theta, tol);
    rows.push_back(r);
  }
  return rows;
}

bool pointedness_duality_check(const SectionFan& fan, const ArcSegment& arc,
                               const std::vector<double>& extra_params, const Tolerances& tol) {
  for (const PointednessRow& r : pointedness_table(fan, arc, extra_params, tol)) {
    if (r.pointed != r.dual_affine) return false;
  }
  return true;
}

ProjLine dual_of_found_line(const PencilFrame& frame, const ProjLine& l, const Tolerances& tol) {
  const ProjLine Lstar = dual_line(frame.line());
  if (l.meets(Lstar, tol)) {
    throw GeometryError(ErrorCode::IntersectsDualL, "line meets the dual of L");
  }
  return dual_line(l);
}

}  // namespace ccproj
