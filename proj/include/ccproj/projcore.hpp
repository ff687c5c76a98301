#pragma once

#include <Eigen/Dense>

#include <array>
#include <numbers>
#include <optional>

#include "ccproj/tolerance.hpp"

namespace ccproj {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Mat2 = Eigen::Matrix2d;
using Mat4 = Eigen::Matrix4d;

inline constexpr double kPi = std::numbers::pi;

/// Reduce an angle into [0, period).
double wrap_angle(double angle, double period = kPi);

/// Unit normal of the pencil parameter: (-sin t, cos t).
inline Vec2 unit_normal(double t) { return {-std::sin(t), std::cos(t)}; }
/// Unit direction of a point at infinity: (cos t, sin t).
inline Vec2 unit_dir(double t) { return {std::cos(t), std::sin(t)}; }

/// Scale a homogeneous 4-vector to canonical form: max |component| is 1 and
/// the first nonzero component is positive. Throws DegenerateInput on zero.
Vec4 canonical4(const Vec4& v);

namespace detail {
struct PointTag {};
struct PlaneTag {};
}  // namespace detail

/// Homogeneous coordinates stored in canonical form.
template <class Tag>
class Homogeneous {
 public:
  Homogeneous() : c_(Vec4::UnitX()) {}
  explicit Homogeneous(const Vec4& v) : c_(canonical4(v)) {}
  Homogeneous(double a, double b, double c, double d) : Homogeneous(Vec4(a, b, c, d)) {}

  const Vec4& coords() const { return c_; }
  double operator[](int i) const { return c_[i]; }

  bool operator==(const Homogeneous& o) const { return c_ == o.c_; }
  bool approx_equal(const Homogeneous& o, double eps = 1e-9) const {
    return (c_ - o.c_).cwiseAbs().maxCoeff() <= eps;
  }

 private:
  Vec4 c_;
};

using HPoint = Homogeneous<detail::PointTag>;
using HPlane = Homogeneous<detail::PlaneTag>;

/// Incidence: |<plane, point>| <= eps_incid * |plane| * |point|.
bool incident(const HPlane& plane, const HPoint& point,
              const Tolerances& tol = Tolerances::defaults());
bool incident_raw(const Vec4& covector, const Vec4& vector,
                  const Tolerances& tol = Tolerances::defaults());

/// A projective line, stored as an orthonormal 4x2 generator basis. The same
/// type serves lines of the dual space (generators are then covectors).
class ProjLine {
 public:
  ProjLine() = default;
  /// Join of two generators; throws DegenerateInput if they coincide.
  ProjLine(const Vec4& a, const Vec4& b, const Tolerances& tol = Tolerances::defaults());

  static ProjLine join(const HPoint& a, const HPoint& b,
                       const Tolerances& tol = Tolerances::defaults());
  /// Line of the primal space cut out by two planes.
  static ProjLine meet(const HPlane& a, const HPlane& b,
                       const Tolerances& tol = Tolerances::defaults());

  const Eigen::Matrix<double, 4, 2>& basis() const { return basis_; }
  Vec4 generator(int i) const { return basis_.col(i); }

  /// Two independent vectors of the annihilator (covectors vanishing on the line).
  Eigen::Matrix<double, 4, 2> annihilator() const;

  bool contains(const Vec4& v, const Tolerances& tol = Tolerances::defaults()) const;
  bool same_as(const ProjLine& o, const Tolerances& tol = Tolerances::defaults()) const;
  /// True iff the two lines share a point.
  bool meets(const ProjLine& o, const Tolerances& tol = Tolerances::defaults()) const;

  /// Canonical Pluecker 6-vector.
  Eigen::Matrix<double, 6, 1> plucker() const;

 private:
  Eigen::Matrix<double, 4, 2> basis_ = Eigen::Matrix<double, 4, 2>::Zero();
};

/// Meet of a line with a plane; throws DegenerateInput if the line lies in the plane.
HPoint meet(const ProjLine& line, const HPlane& plane,
            const Tolerances& tol = Tolerances::defaults());

/// Dual line: the annihilator of `l`, as a line of the dual space.
ProjLine dual_line(const ProjLine& l);

/// Pencil of planes through a line L.
///
/// The frame stores a basis (g0, g1, m0, m1) of R^4 with L = span(g0, g1) and
/// its dual cobasis (g0*, g1*, P0, P1). Every point off L is written uniquely
/// as  s * (p0 g0 + p1 g1 + n(theta)),  n(theta) = -sin(theta) m0 + cos(theta) m1,
/// with theta in [0, pi); (p0, p1) are the section coordinates in pencil plane
/// plane(theta) = cos(theta) P0 + sin(theta) P1. Swapping basis and cobasis
/// gives the frame of the dual pencil (see dual()).
class PencilFrame {
 public:
  PencilFrame(const ProjLine& L, const HPlane& P0, const HPlane& P1,
              const Tolerances& tol = Tolerances::defaults());

  /// L = {x2 = x3 = 0}, P0 = {x2 = 0}, P1 = {x3 = 0}.
  static PencilFrame standard();
  /// Frame with the given basis columns (g0, g1, m0, m1); throws DegenerateInput if singular.
  static PencilFrame from_basis(const Mat4& basis, const Tolerances& tol = Tolerances::defaults());

  /// Columns g0, g1, m0, m1.
  const Mat4& basis() const { return basis_; }
  /// Rows g0*, g1*, P0, P1 (the inverse of basis()).
  const Mat4& cobasis() const { return cobasis_; }

  ProjLine line() const;
  Vec4 P0() const { return cobasis_.row(2).transpose(); }
  Vec4 P1() const { return cobasis_.row(3).transpose(); }

  /// plane(theta) = cos(theta) P0 + sin(theta) P1.
  HPlane pencil_plane(double theta) const;
  Vec4 pencil_covector(double theta) const;

  /// Point t(psi) = cos(psi) g0 + sin(psi) g1 of L.
  Vec4 point_on_line(double psi) const;
  /// Inverse of point_on_line for a vector lying on L.
  double line_parameter(const Vec4& t, const Tolerances& tol = Tolerances::defaults()) const;

  /// Homogeneous vector of the section point (theta, p).
  Vec4 embed(double theta, const Vec2& p) const;

  struct Located {
    double theta;
    Vec2 p;
  };
  /// Section coordinates of a vector; throws AtInfinity if it lies on L.
  Located locate(const Vec4& x, const Tolerances& tol = Tolerances::defaults()) const;

  /// Line disjoint from L whose trace is p(theta) = M * unit_normal(theta).
  ProjLine line_from_matrix(const Mat2& M) const;
  /// Inverse of line_from_matrix; nullopt if the line meets L.
  std::optional<Mat2> matrix_from_line(const ProjLine& l,
                                       const Tolerances& tol = Tolerances::defaults()) const;

  /// Frame of the dual pencil: L* = span(P0, P1), pencil "planes" g0, g1.
  PencilFrame dual() const;

 private:
  PencilFrame(const Mat4& basis, const Mat4& cobasis) : basis_(basis), cobasis_(cobasis) {}
  Mat4 basis_;
  Mat4 cobasis_;
};

/// Affine chart: an infinity plane and an affine frame (origin + 3 basis points).
class Chart {
 public:
  Chart(const HPlane& inf_plane, const HPoint& origin, const std::array<HPoint, 3>& axes,
        const Tolerances& tol = Tolerances::defaults());

  /// Infinity plane {x3 = 0}, origin (0:0:0:1), axes e0, e1, e2.
  static Chart standard();

  const HPlane& inf_plane() const { return inf_; }

  /// Throws AtInfinity for points on the infinity plane.
  Vec3 map(const HPoint& p, const Tolerances& tol = Tolerances::defaults()) const;
  Vec3 map_raw(const Vec4& v, const Tolerances& tol = Tolerances::defaults()) const;
  HPoint unmap(const Vec3& a) const;

 private:
  HPlane inf_;
  Vec4 origin_;              // normalized so <inf, origin> = 1
  Eigen::Matrix<double, 4, 3> edges_;  // axis_i - origin, all in ker(inf)
  Eigen::Matrix<double, 3, 4> pinv_;
};

/// Counterclockwise arc [start, end] on a circle of the given period.
struct ArcSegment {
  double start = 0.0;
  double end = 0.0;
  double period = kPi;

  ArcSegment() = default;
  ArcSegment(double s, double e, double p = kPi);

  double length() const;
  double midpoint() const;
  /// Membership; `closed` includes both endpoints (up to eps).
  bool contains(double angle, bool closed = true, double eps = 1e-12) const;
  /// Offset of `angle` from start along the arc, in [0, period).
  double offset(double angle) const;
  /// Complementary arc [end, start].
  ArcSegment complement() const { return {end, start, period}; }
};

}  // namespace ccproj
