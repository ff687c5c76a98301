// Independent reference computations shared by the tests.
#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "ccproj/fan.hpp"

namespace oracle {

using ccproj::ConvexPolygon;
using ccproj::kPi;
using ccproj::Section;
using ccproj::SectionFan;
using ccproj::Vec2;

/// Regular m-gon through the points r (cos(2 pi j/m), sin(2 pi j/m)) + c.
inline std::vector<Vec2> ngon_points(int m, double r, Vec2 c = Vec2::Zero()) {
  std::vector<Vec2> p;
  for (int j = 0; j < m; ++j) {
    const double a = 2 * kPi * j / m;
    p.push_back(c + r * Vec2(std::cos(a), std::sin(a)));
  }
  return p;
}

/// Fan of the standard hyperboloid built by hand: unit-circle m-gons at theta_i = i pi / k.
inline SectionFan hyperboloid_fan(int k, int m, double r = 1.0) {
  std::vector<Section> s;
  for (int i = 0; i < k; ++i) {
    const auto pts = ngon_points(m, r);
    s.push_back({kPi * i / k, ccproj::convex_hull(pts), false});
  }
  return SectionFan(ccproj::PencilFrame::standard(), s);
}

/// Support function of a finite point set.
inline double support(const std::vector<Vec2>& pts, const Vec2& d) {
  double h = -1e300;
  for (const Vec2& p : pts) h = std::max(h, p.dot(d));
  return h;
}

/// Max over `dirs` sample directions of |h_P - h_Q|: equals Hausdorff distance for convex sets (in the limit).
inline double support_gap(const ConvexPolygon& P, const ConvexPolygon& Q, int dirs = 720) {
  double g = 0;
  for (int j = 0; j < dirs; ++j) {
    const Vec2 d(std::cos(2 * kPi * j / dirs), std::sin(2 * kPi * j / dirs));
    g = std::max(g, std::abs(P.support(d) - Q.support(d)));
  }
  return g;
}

/// Brute-force distance from p to the boundary-or-interior of a convex polygon via dense edge sampling.
inline double brute_distance(const Vec2& p, const ConvexPolygon& P, int per_edge = 2000) {
  const auto& v = P.vertices();
  if (v.size() >= 3) {
    bool inside = true;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const Vec2 e = v[(i + 1) % v.size()] - v[i];
      const Vec2 w = p - v[i];
      if (e[0] * w[1] - e[1] * w[0] < 0) inside = false;
    }
    if (inside) return 0.0;
  }
  double d = 1e300;
  const std::size_t edges = v.size() == 1 ? 1 : (v.size() == 2 ? 1 : v.size());
  for (std::size_t i = 0; i < edges; ++i) {
    const Vec2 a = v[i], b = v[(i + 1) % v.size()];
    for (int s = 0; s <= per_edge; ++s) {
      const double t = double(s) / per_edge;
      d = std::min(d, (p - ((1 - t) * a + t * b)).norm());
    }
  }
  return d;
}

}  // namespace oracle
