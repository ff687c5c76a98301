#include "ccproj/planar.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ccproj {

namespace {

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b, Vec2* nearest) {
  const Vec2 ab = b - a;
  const double len2 = ab.squaredNorm();
  double t = len2 > 0 ? (p - a).dot(ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  const Vec2 q = a + t * ab;
  if (nearest) *nearest = q;
  return (p - q).norm();
}

bool lex_less(const Vec2& a, const Vec2& b) { return a[0] < b[0] || (a[0] == b[0] && a[1] < b[1]); }

using Ring = std::vector<Vec2>;

Ring clip(const Ring& ring, const HalfPlane& hp, double slack) {
  Ring out;
  const std::size_t n = ring.size();
  if (n == 0) return out;
  if (n == 1) {
    if (hp.normal.dot(ring[0]) <= hp.offset + slack) out.push_back(ring[0]);
    return out;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a = ring[i];
    const Vec2& b = ring[(i + 1) % n];
    const double da = hp.normal.dot(a) - hp.offset;
    const double db = hp.normal.dot(b) - hp.offset;
    const bool ina = da <= slack, inb = db <= slack;
    if (ina) out.push_back(a);
    if (ina != inb) {
      const double t = da / (da - db);
      out.push_back(a + t * (b - a));
    }
  }
  return out;
}

std::vector<HalfPlane> to_halfplanes(const ConvexPolygon& P) {
  std::vector<HalfPlane> hps;
  const auto& v = P.vertices();
  if (v.size() >= 3) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      const Vec2 e = v[(i + 1) % v.size()] - v[i];
      Vec2 n(e[1], -e[0]);
      n.normalize();
      hps.push_back({n, n.dot(v[i])});
    }
    return hps;
  }
  // Degenerate: slab along the segment plus caps; a point gets an axis box.
  Vec2 d = v.size() == 2 ? Vec2(v[1] - v[0]) : Vec2(1, 0);
  if (d.norm() == 0) d = Vec2(1, 0);
  d.normalize();
  const Vec2 n(-d[1], d[0]);
  for (const Vec2& u : {d, Vec2(-d), n, Vec2(-n)}) hps.push_back({u, P.support(u)});
  return hps;
}

}  // namespace

// ---------------------------------------------------------- ConvexPolygon

ConvexPolygon ConvexPolygon::from_canonical(std::vector<Vec2> vertices) {
  if (vertices.empty()) throw GeometryError(ErrorCode::InvalidInput, "empty polygon");
  return ConvexPolygon(std::move(vertices));
}

ConvexPolygon::Kind ConvexPolygon::kind() const {
  if (v_.size() == 1) return Kind::Point;
  if (v_.size() == 2) return Kind::Segment;
  return Kind::Polygon;
}

double ConvexPolygon::support(const Vec2& dir) const {
  double best = -std::numeric_limits<double>::infinity();
  for (const Vec2& p : v_) best = std::max(best, p.dot(dir));
  return best;
}

const Vec2& ConvexPolygon::support_point(const Vec2& dir) const {
  std::size_t best = 0;
  double bv = v_[0].dot(dir);
  for (std::size_t i = 1; i < v_.size(); ++i) {
    const double d = v_[i].dot(dir);
    if (d > bv) {
      bv = d;
      best = i;
    }
  }
  return v_[best];
}

double ConvexPolygon::diameter() const {
  double d = 0;
  for (std::size_t i = 0; i < v_.size(); ++i)
    for (std::size_t j = i + 1; j < v_.size(); ++j) d = std::max(d, (v_[i] - v_[j]).norm());
  return d;
}

double ConvexPolygon::area() const {
  if (v_.size() < 3) return 0.0;
  double a = 0;
  for (std::size_t i = 0; i < v_.size(); ++i) a += cross2(v_[i], v_[(i + 1) % v_.size()]);
  return 0.5 * a;
}

Vec2 ConvexPolygon::centroid() const {
  Vec2 mean = Vec2::Zero();
  for (const Vec2& p : v_) mean += p;
  mean /= double(v_.size());
  const double A = area();
  if (v_.size() < 3 || A <= 1e-14 * std::max(1.0, diameter() * diameter())) return mean;
  Vec2 c = Vec2::Zero();
  for (std::size_t i = 0; i < v_.size(); ++i) {
    const Vec2 a = v_[i] - mean, b = v_[(i + 1) % v_.size()] - mean;
    c += (a + b) * cross2(a, b);
  }
  return mean + c / (6.0 * A);
}

double ConvexPolygon::extent() const {
  double e = 0;
  for (const Vec2& p : v_) e = std::max(e, p.norm());
  return e;
}

bool ConvexPolygon::contains(const Vec2& p, double eps) const {
  if (v_.size() < 3) return distance(p, *this) <= eps;
  for (std::size_t i = 0; i < v_.size(); ++i) {
    const Vec2& a = v_[i];
    const Vec2 e = v_[(i + 1) % v_.size()] - a;
    if (cross2(e, p - a) < -eps * e.norm()) return false;
  }
  return true;
}

ConvexPolygon ConvexPolygon::scaled(double s) const {
  std::vector<Vec2> w;
  w.reserve(v_.size());
  for (const Vec2& p : v_) w.push_back(s * p);
  return convex_hull(w);
}

ConvexPolygon ConvexPolygon::translated(const Vec2& t) const {
  std::vector<Vec2> w = v_;
  for (Vec2& p : w) p += t;
  return ConvexPolygon(std::move(w));
}

ConvexPolygon ConvexPolygon::transformed(const Mat2& A, const Vec2& t) const {
  std::vector<Vec2> w;
  w.reserve(v_.size());
  for (const Vec2& p : v_) w.push_back(A * p + t);
  return convex_hull(w);
}

// ------------------------------------------------------------------ hulls

ConvexPolygon convex_hull(std::span<const Vec2> points, double eps) {
  if (points.empty()) throw GeometryError(ErrorCode::InvalidInput, "convex hull of nothing");
  std::vector<Vec2> p(points.begin(), points.end());
  std::sort(p.begin(), p.end(), lex_less);
  Vec2 lo = p.front(), hi = p.front();
  for (const Vec2& q : p) {
    lo = lo.cwiseMin(q);
    hi = hi.cwiseMax(q);
  }
  const double scale = (hi - lo).norm();
  if (scale == 0.0) return ConvexPolygon::from_canonical({p.front()});
  const double ceps = eps * scale * scale;
  const double deps = eps * scale;

  std::vector<Vec2> hull(2 * p.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    while (k >= 2 && cross2(hull[k - 1] - hull[k - 2], p[i] - hull[k - 2]) <= ceps) --k;
    hull[k++] = p[i];
  }
  for (std::size_t i = p.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross2(hull[k - 1] - hull[k - 2], p[i] - hull[k - 2]) <= ceps) --k;
    hull[k++] = p[i];
  }
  hull.resize(k > 1 ? k - 1 : k);
  // Drop near-duplicates left by the chain.
  std::vector<Vec2> out;
  for (const Vec2& q : hull) {
    if (out.empty() || (q - out.back()).norm() > deps) out.push_back(q);
  }
  while (out.size() > 1 && (out.back() - out.front()).norm() <= deps) out.pop_back();
  if (out.size() == 2 && (out[1] - out[0]).norm() <= deps) out.pop_back();
  return ConvexPolygon::from_canonical(std::move(out));
}

ConvexPolygon regular_polygon(int m, double r, const Vec2& c, double phase) {
  std::vector<Vec2> v;
  v.reserve(m);
  for (int j = 0; j < m; ++j) {
    const double a = phase + 2.0 * kPi * j / m;
    v.push_back(c + r * Vec2(std::cos(a), std::sin(a)));
  }
  return convex_hull(v);
}

// ----------------------------------------------------------------- support

SupportSlab support_lines_through(const ConvexPolygon& poly, double d, const Tolerances& tol) {
  SupportSlab s;
  s.direction = wrap_angle(d);
  s.normal = unit_normal(s.direction);
  s.hi = poly.support(s.normal);
  s.lo = -poly.support(-s.normal);
  s.touch_hi = poly.support_point(s.normal);
  s.touch_lo = poly.support_point(-s.normal);
  const double scale = std::max(poly.diameter(), poly.extent());
  s.degenerate = (s.hi - s.lo) <= tol.eps_convex * std::max(scale, 1e-300) && poly.size() > 1;
  return s;
}

ConvexPolygon polar_dual(const ConvexPolygon& poly, const Vec2& ref, const Tolerances& tol) {
  if (poly.degenerate()) {
    throw GeometryError(ErrorCode::RefNotInterior, "degenerate polygon has no interior");
  }
  const auto& v = poly.vertices();
  const double diam = poly.diameter();
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Vec2 e = v[(i + 1) % v.size()] - v[i];
    if (cross2(e, ref - v[i]) / e.norm() <= tol.eps_convex * diam) {
      throw GeometryError(ErrorCode::RefNotInterior, "reference point not strictly interior");
    }
  }
  std::vector<Vec2> w;
  w.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    // xi with <xi, a> = <xi, b> = 1, by Cramer's rule.
    const Vec2 a = v[i] - ref;
    const Vec2 b = v[(i + 1) % v.size()] - ref;
    const double det = cross2(a, b);
    w.emplace_back((b.y() - a.y()) / det, (a.x() - b.x()) / det);
  }
  return convex_hull(w);
}

// --------------------------------------------------------------- Minkowski

ConvexPolygon minkowski_sum(double a, const ConvexPolygon& P, double b, const ConvexPolygon& Q) {
  std::vector<double> angles = {0.0, 0.5 * kPi, kPi, 1.5 * kPi};
  auto add_normals = [&](const ConvexPolygon& X, double s) {
    if (s == 0.0) return;
    const auto& v = X.vertices();
    if (v.size() < 2) return;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const Vec2 e = v[(i + 1) % v.size()] - v[i];
      angles.push_back(wrap_angle(std::atan2(-e[0], e[1]), 2 * kPi));
      if (v.size() == 2) angles.push_back(wrap_angle(std::atan2(e[0], -e[1]), 2 * kPi));
    }
  };
  add_normals(P, a);
  add_normals(Q, b);
  std::sort(angles.begin(), angles.end());
  std::vector<Vec2> pts;
  pts.reserve(angles.size());
  for (std::size_t i = 0; i < angles.size(); ++i) {
    const double next = i + 1 < angles.size() ? angles[i + 1] : angles[0] + 2 * kPi;
    if (next - angles[i] <= 0.0) continue;
    const Vec2 u = unit_dir(0.5 * (angles[i] + next));
    Vec2 x = Vec2::Zero();
    if (a != 0.0) x += a * P.support_point(u);
    if (b != 0.0) x += b * Q.support_point(u);
    pts.push_back(x);
  }
  return convex_hull(pts);
}

ConvexPolygon minkowski_combine(double t, const ConvexPolygon& P, const ConvexPolygon& Q) {
  if (t == 0.0) return Q;
  if (t == 1.0) return P;
  return minkowski_sum(t, P, 1.0 - t, Q);
}

// ---------------------------------------------------------------- distance

double distance(const Vec2& p, const ConvexPolygon& poly) {
  const auto& v = poly.vertices();
  if (v.size() == 1) return (p - v[0]).norm();
  if (v.size() == 2) return point_segment_distance(p, v[0], v[1], nullptr);
  if (poly.contains(p)) return 0.0;
  double d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < v.size(); ++i)
    d = std::min(d, point_segment_distance(p, v[i], v[(i + 1) % v.size()], nullptr));
  return d;
}

Vec2 nearest_point(const Vec2& p, const ConvexPolygon& poly) {
  const auto& v = poly.vertices();
  if (v.size() == 1) return v[0];
  if (v.size() >= 3 && poly.contains(p)) return p;
  double d = std::numeric_limits<double>::infinity();
  Vec2 best = v[0];
  const std::size_t edges = v.size() == 2 ? 1 : v.size();
  for (std::size_t i = 0; i < edges; ++i) {
    Vec2 q;
    const double di = point_segment_distance(p, v[i], v[(i + 1) % v.size()], &q);
    if (di < d) {
      d = di;
      best = q;
    }
  }
  return best;
}

double hausdorff(const ConvexPolygon& P, const ConvexPolygon& Q) {
  double h = 0;
  for (const Vec2& p : P.vertices()) h = std::max(h, distance(p, Q));
  for (const Vec2& q : Q.vertices()) h = std::max(h, distance(q, P));
  return h;
}

// --------------------------------------------------------------- clipping

std::optional<ConvexPolygon> halfplane_intersection(std::span<const HalfPlane> hps, double bound,
                                                    double eps) {
  auto run = [&](const Vec2& lo, const Vec2& hi) -> std::optional<Ring> {
    Ring ring = {lo, Vec2(hi[0], lo[1]), hi, Vec2(lo[0], hi[1])};
    const double scale = (hi - lo).norm();
    for (const HalfPlane& hp : hps) {
      ring = clip(ring, hp, eps * scale * hp.normal.norm());
      if (ring.empty()) return std::nullopt;
    }
    return ring;
  };
  auto first = run(Vec2(-bound, -bound), Vec2(bound, bound));
  if (!first) return std::nullopt;
  // Second pass in a tight box keeps the vertex arithmetic at the polygon's scale.
  Vec2 lo = first->front(), hi = first->front();
  for (const Vec2& q : *first) {
    lo = lo.cwiseMin(q);
    hi = hi.cwiseMax(q);
  }
  const double pad = std::max(1.0, (hi - lo).norm()) * 0.5 + 1e-9 * bound;
  auto second = run(lo - Vec2(pad, pad), hi + Vec2(pad, pad));
  if (!second) return std::nullopt;
  return convex_hull(*second, eps);
}

std::optional<ConvexPolygon> intersect(const ConvexPolygon& P, const ConvexPolygon& Q, double eps) {
  Ring ring = P.vertices();
  const double scale = std::max({P.diameter(), Q.diameter(), P.extent(), Q.extent(), 1e-300});
  for (const HalfPlane& hp : to_halfplanes(Q)) {
    ring = clip(ring, hp, eps * scale);
    if (ring.empty()) return std::nullopt;
  }
  return convex_hull(ring, eps);
}

}  // namespace ccproj
