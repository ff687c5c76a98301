#pragma once

#include <optional>
#include <span>
#include <vector>

#include "ccproj/projcore.hpp"

namespace ccproj {

inline double cross2(const Vec2& a, const Vec2& b) { return a[0] * b[1] - a[1] * b[0]; }

/// Compact convex polygon in section coordinates.
///
/// Vertices are strictly convex, counterclockwise, and start at the
/// lexicographic minimum. One or two vertices denote a point or a segment;
/// such degenerate polygons are legal values.
class ConvexPolygon {
 public:
  enum class Kind { Point, Segment, Polygon };

  ConvexPolygon() : v_{Vec2::Zero()} {}
  /// Takes vertices that are already canonical (use convex_hull otherwise).
  static ConvexPolygon from_canonical(std::vector<Vec2> vertices);

  const std::vector<Vec2>& vertices() const { return v_; }
  std::size_t size() const { return v_.size(); }
  Kind kind() const;
  bool degenerate() const { return v_.size() < 3; }

  double support(const Vec2& dir) const;
  const Vec2& support_point(const Vec2& dir) const;

  double diameter() const;
  double area() const;
  /// Area centroid; vertex mean for degenerate polygons.
  Vec2 centroid() const;
  /// Max |vertex| (used to scale tolerances).
  double extent() const;

  bool contains(const Vec2& p, double eps = 0.0) const;

  ConvexPolygon scaled(double s) const;
  ConvexPolygon translated(const Vec2& t) const;
  /// Image under x -> A x + t.
  ConvexPolygon transformed(const Mat2& A, const Vec2& t) const;

 private:
  explicit ConvexPolygon(std::vector<Vec2> v) : v_(std::move(v)) {}
  std::vector<Vec2> v_;
};

/// Convex hull (collinear and duplicate points removed, within `eps` relative
/// to the squared point scale). Throws InvalidInput on an empty input.
ConvexPolygon convex_hull(std::span<const Vec2> points, double eps = 1e-12);

struct SupportSlab {
  double direction = 0.0;  // angle of the point at infinity
  Vec2 normal;             // unit_normal(direction)
  double lo = 0.0;         // min <x, normal>
  double hi = 0.0;         // max <x, normal>
  Vec2 touch_lo, touch_hi;
  bool degenerate = false;  // lines coincide: polygon is a segment parallel to d
};

/// The two support lines with direction `d`: {<x, normal> = lo} and {= hi}.
SupportSlab support_lines_through(const ConvexPolygon& poly, double d,
                                  const Tolerances& tol = Tolerances::defaults());

/// Polar body {xi : <xi, x - ref> <= 1 for x in poly}, in coordinates xi.
/// Throws RefNotInterior unless ref is strictly inside.
ConvexPolygon polar_dual(const ConvexPolygon& poly, const Vec2& ref,
                         const Tolerances& tol = Tolerances::defaults());

/// a * P + b * Q for a, b >= 0 (Minkowski).
ConvexPolygon minkowski_sum(double a, const ConvexPolygon& P, double b, const ConvexPolygon& Q);
/// t * P + (1 - t) * Q.
ConvexPolygon minkowski_combine(double t, const ConvexPolygon& P, const ConvexPolygon& Q);

/// Euclidean distance from p to poly (0 inside).
double distance(const Vec2& p, const ConvexPolygon& poly);
/// Nearest point of poly to p.
Vec2 nearest_point(const Vec2& p, const ConvexPolygon& poly);

double hausdorff(const ConvexPolygon& P, const ConvexPolygon& Q);

/// {x : <normal, x> <= offset}.
struct HalfPlane {
  Vec2 normal;
  double offset;
};

/// Intersection of half-planes, clipped against a box of half-width `bound`.
/// Returns nullopt when empty (beyond `eps` slack).
std::optional<ConvexPolygon> halfplane_intersection(std::span<const HalfPlane> hps,
                                                    double bound = 1e6, double eps = 1e-12);

/// Intersection of two convex polygons.
std::optional<ConvexPolygon> intersect(const ConvexPolygon& P, const ConvexPolygon& Q,
                                       double eps = 1e-12);

/// Regular m-gon of circumradius r centered at c, first vertex at angle phase.
ConvexPolygon regular_polygon(int m, double r, const Vec2& c = Vec2::Zero(), double phase = 0.0);

}  // namespace ccproj
