#include "ccproj/eulercalc.hpp"

#include <algorithm>
#include <cmath>

namespace ccproj {

namespace {

struct PlaneParts {
  Vec2 g;  // (pi(g0), pi(g1))
  Vec2 m;  // (pi(m0), pi(m1))
};

PlaneParts parts(const PencilFrame& frame, const Vec4& pi) {
  const Vec4 r = frame.basis().transpose() * pi;
  return {Vec2(r[0], r[1]), Vec2(r[2], r[3])};
}

/// Roots in (0, gap) of sin(gap - x) A + sin(x) B.
void gap_roots(double ti, double gap, double A, double B, std::vector<double>& out) {
  const double den = A * std::cos(gap) - B;
  const double num = A * std::sin(gap);
  double x = std::atan2(num, den);
  for (int s = 0; s < 2; ++s, x += kPi) {
    const double w = wrap_angle(x, 2 * kPi);
    if (w > 0 && w < gap) out.push_back(wrap_angle(ti + w));
  }
}

}  // namespace

double slice_gap(const SectionFan& fan, const Vec4& pi, double theta) {
  const PlaneParts p = parts(fan.frame(), pi);
  const double target = -p.m.dot(unit_normal(theta));
  const double hi = fan.support_at(theta, p.g);
  const double lo = -fan.support_at(theta, -p.g);
  return std::max(lo - target, target - hi);
}

ChiReport chi_section(const SectionFan& fan, const HPlane& plane, const Tolerances& tol) {
  ChiReport rep;
  const Vec4& pi = plane.coords();
  const PlaneParts p = parts(fan.frame(), pi);
  if (p.g.norm() <= tol.eps_incid * std::max(1.0, p.m.norm())) {
    rep.pencil_plane = true;
    rep.chi = 1;
    rep.membership = false;
    return rep;
  }
  // Event parameters: grid, samples, and the zeros of both gap branches per gap.
  std::vector<double> ev;
  const int grid = 512;
  for (int j = 0; j < grid; ++j) ev.push_back(kPi * j / grid);
  const std::size_t k = fan.size();
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = (i + 1) % k;
    const double ti = fan[i].theta;
    const double tj = j == 0 ? fan[0].theta + kPi : fan[j].theta;
    const double sj = j == 0 ? -1.0 : 1.0;
    const Vec2 ci = unit_normal(ti), cj = sj * unit_normal(fan[j].theta);
    ev.push_back(ti);
    // lo - target and target - hi are sine-weighted combinations of their endpoint values.
    const double loA = -fan[i].poly.support(-p.g) + p.m.dot(ci);
    const double loB = -fan[j].poly.support(-sj * p.g) + p.m.dot(cj);
    const double hiA = -p.m.dot(ci) - fan[i].poly.support(p.g);
    const double hiB = -p.m.dot(cj) - fan[j].poly.support(sj * p.g);
    gap_roots(ti, tj - ti, loA, loB, ev);
    gap_roots(ti, tj - ti, hiA, hiB, ev);
  }
  for (double& t : ev) t = wrap_angle(t);
  std::sort(ev.begin(), ev.end());
  ev.erase(std::unique(ev.begin(), ev.end(), [](double a, double b) { return b - a <= 1e-13; }), ev.end());

  const double scale = std::max(1.0, fan.extent()) * (p.g.norm() + p.m.norm());
  const double eps = 1e-12 * scale;
  const std::size_t n = ev.size();
  std::vector<char> empty(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double a = ev[j];
    const double b = j + 1 < n ? ev[j + 1] : ev[0] + kPi;
    empty[j] = slice_gap(fan, pi, 0.5 * (a + b)) > eps;
  }
  std::size_t count = 0, first = n;
  for (std::size_t j = 0; j < n; ++j) {
    if (empty[j] && !empty[(j + n - 1) % n]) {
      ++count;
      first = j;
    }
  }
  const bool all_empty = std::all_of(empty.begin(), empty.end(), [](char c) { return c != 0; });
  if (all_empty) {
    throw GeometryError(ErrorCode::NonIntervalEmptySet, "plane misses every section");
  }
  if (count > 1) {
    throw GeometryError(ErrorCode::NonIntervalEmptySet, "empty pencil parameters form several arcs");
  }
  if (count == 0) {
    rep.chi = 0;
    rep.membership = true;
    return rep;
  }
  std::size_t last = first;
  while (empty[(last + 1) % n]) last = (last + 1) % n;
  rep.chi = 1;
  rep.membership = false;
  rep.empty_arc = ArcSegment(ev[first], ev[(last + 1) % n]);
  return rep;
}

std::optional<DualPoint> dual_coordinates(const PencilFrame& frame, const Vec4& pi, const Tolerances& tol) {
  const PlaneParts p = parts(frame, pi);
  const double s0 = p.g.norm();
  if (s0 <= tol.eps_incid * std::max(1.0, p.m.norm())) return std::nullopt;
  // pi_g = s unit_normal(psi) with psi in [0, pi).
  double psi = std::atan2(-p.g[0], p.g[1]);
  double s = s0;
  if (psi < 0) {
    psi += kPi;
    s = -s0;
  }
  if (psi >= kPi) {
    psi -= kPi;
    s = -s;
  }
  return DualPoint{psi, p.m / s};
}

double dual_margin(const SectionFan& dual, const DualPoint& q) {
  const ConvexPolygon D = dual.section_at(q.psi);
  const double d = distance(q.beta, D);
  if (d > 0 || D.degenerate()) return -d;
  const auto& v = D.vertices();
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < v.size(); ++j) {
    const Vec2 e = v[(j + 1) % v.size()] - v[j];
    const Vec2 nrm = Vec2(e[1], -e[0]).normalized();
    m = std::min(m, nrm.dot(v[j]) - nrm.dot(q.beta));
  }
  return m;
}

ChiCrosscheck chi_dual_crosscheck(const SectionFan& fan, const SectionFan& dual,
                                  const std::vector<HPlane>& planes, double band, const Tolerances& tol) {
  ChiCrosscheck rep;
  rep.planes = planes.size();
  rep.band = band * std::max(1.0, dual.diameter());
  for (std::size_t i = 0; i < planes.size(); ++i) {
    const auto q = dual_coordinates(fan.frame(), planes[i].coords(), tol);
    const ChiReport c = chi_section(fan, planes[i], tol);
    if (!q) {
      ++rep.in_band;
      continue;
    }
    const double m = dual_margin(dual, *q);
    if (std::abs(m) < rep.band) {
      ++rep.in_band;
      continue;
    }
    ++rep.compared;
    const bool dual_member = m > 0;
    rep.members += dual_member ? 1 : 0;
    if (dual_member != c.membership) rep.mismatches.push_back({i, c.chi, m});
  }
  return rep;
}

}  // namespace ccproj
