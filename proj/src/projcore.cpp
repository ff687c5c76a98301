#include "ccproj/projcore.hpp"

#include <cmath>

namespace ccproj {

const Tolerances& Tolerances::defaults() {
  static const Tolerances tol{};
  return tol;
}

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::AtInfinity: return "AtInfinity";
    case ErrorCode::RefNotInterior: return "RefNotInterior";
    case ErrorCode::DegenerateSupport: return "DegenerateSupport";
    case ErrorCode::DegenerateQuadrangle: return "DegenerateQuadrangle";
    case ErrorCode::DuplicateDirections: return "DuplicateDirections";
    case ErrorCode::CenterNotOnL: return "CenterNotOnL";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::IntersectsDualL: return "IntersectsDualL";
    case ErrorCode::NoAdmissibleChart: return "NoAdmissibleChart";
    case ErrorCode::EmptySelection: return "EmptySelection";
    case ErrorCode::NotSupporting: return "NotSupporting";
    case ErrorCode::TooManyDirections: return "TooManyDirections";
    case ErrorCode::NonIntervalEmptySet: return "NonIntervalEmptySet";
  }
  return "UnknownError";
}

double wrap_angle(double angle, double period) {
  double r = std::fmod(angle, period);
  if (r < 0) r += period;
  if (r >= period) r -= period;
  return r;
}

Vec4 canonical4(const Vec4& v) {
  const double m = v.cwiseAbs().maxCoeff();
  if (!(m > 0.0) || !std::isfinite(m)) {
    throw GeometryError(ErrorCode::DegenerateInput, "zero or non-finite homogeneous vector");
  }
  // Sign is taken from the first component that is not rounding noise, so
  // that rescaled copies of a computed vector agree on orientation.
  double sign = 1.0;
  for (int i = 0; i < 4; ++i) {
    if (std::abs(v[i]) > 1e-12 * m) {
      sign = v[i] > 0 ? 1.0 : -1.0;
      break;
    }
  }
  Vec4 out = v / (sign * m);
  for (int i = 0; i < 4; ++i) {
    if (std::abs(out[i]) == 1.0) out[i] = std::copysign(1.0, out[i]);
  }
  return out;
}

bool incident_raw(const Vec4& covector, const Vec4& vector, const Tolerances& tol) {
  return std::abs(covector.dot(vector)) <= tol.eps_incid * covector.norm() * vector.norm();
}

bool incident(const HPlane& plane, const HPoint& point, const Tolerances& tol) {
  return incident_raw(plane.coords(), point.coords(), tol);
}

// ---------------------------------------------------------------- ProjLine

namespace {

Eigen::Matrix<double, 4, 2> orthonormal_span(const Vec4& a, const Vec4& b, const Tolerances& tol) {
  Eigen::Matrix<double, 4, 2> G;
  G.col(0) = a;
  G.col(1) = b;
  Eigen::JacobiSVD<Eigen::Matrix<double, 4, 2>> svd(G, Eigen::ComputeFullU);
  const auto s = svd.singularValues();
  if (!(s[0] > 0.0) || s[1] <= tol.eps_rank * s[0]) {
    throw GeometryError(ErrorCode::DegenerateInput, "generators do not span a line");
  }
  return svd.matrixU().leftCols<2>();
}

Eigen::Matrix<double, 4, 2> complement_of(const Eigen::Matrix<double, 4, 2>& B) {
  Eigen::JacobiSVD<Mat4> svd(B * B.transpose(), Eigen::ComputeFullU);
  // Smallest two singular values span the orthogonal complement.
  return svd.matrixU().block<4, 2>(0, 2);
}

}  // namespace

ProjLine::ProjLine(const Vec4& a, const Vec4& b, const Tolerances& tol)
    : basis_(orthonormal_span(a, b, tol)) {}

ProjLine ProjLine::join(const HPoint& a, const HPoint& b, const Tolerances& tol) {
  return ProjLine(a.coords(), b.coords(), tol);
}

ProjLine ProjLine::meet(const HPlane& a, const HPlane& b, const Tolerances& tol) {
  ProjLine planes(a.coords(), b.coords(), tol);
  return dual_line(planes);
}

Eigen::Matrix<double, 4, 2> ProjLine::annihilator() const { return complement_of(basis_); }

bool ProjLine::contains(const Vec4& v, const Tolerances& tol) const {
  const Vec4 residual = v - basis_ * (basis_.transpose() * v);
  return residual.norm() <= tol.eps_incid * v.norm();
}

bool ProjLine::same_as(const ProjLine& o, const Tolerances& tol) const {
  return contains(o.generator(0), tol) && contains(o.generator(1), tol);
}

bool ProjLine::meets(const ProjLine& o, const Tolerances& tol) const {
  Mat4 G;
  G << basis_, o.basis_;
  Eigen::JacobiSVD<Mat4> svd(G);
  const auto s = svd.singularValues();
  return s[3] <= std::sqrt(tol.eps_incid) * s[0];
}

Eigen::Matrix<double, 6, 1> ProjLine::plucker() const {
  const Vec4 a = basis_.col(0), b = basis_.col(1);
  Eigen::Matrix<double, 6, 1> L;
  L << a[0] * b[1] - a[1] * b[0], a[0] * b[2] - a[2] * b[0], a[0] * b[3] - a[3] * b[0],
      a[1] * b[2] - a[2] * b[1], a[1] * b[3] - a[3] * b[1], a[2] * b[3] - a[3] * b[2];
  const double m = L.cwiseAbs().maxCoeff();
  for (int i = 0; i < 6; ++i) {
    if (std::abs(L[i]) > 1e-12 * m) {
      if (L[i] < 0) L = -L;
      break;
    }
  }
  return L / m;
}

HPoint meet(const ProjLine& line, const HPlane& plane, const Tolerances& tol) {
  const Vec4 a = line.generator(0), b = line.generator(1);
  const double pa = plane.coords().dot(a), pb = plane.coords().dot(b);
  const Vec4 x = pb * a - pa * b;
  if (x.norm() <= tol.eps_incid * plane.coords().norm()) {
    throw GeometryError(ErrorCode::DegenerateInput, "line lies in the plane");
  }
  return HPoint(x);
}

ProjLine dual_line(const ProjLine& l) {
  const auto A = l.annihilator();
  return ProjLine(Vec4(A.col(0)), Vec4(A.col(1)));
}

// ------------------------------------------------------------- PencilFrame

PencilFrame::PencilFrame(const ProjLine& L, const HPlane& P0, const HPlane& P1,
                         const Tolerances& tol) {
  const Vec4 g0 = L.generator(0), g1 = L.generator(1);
  for (const Vec4* p : {&P0.coords(), &P1.coords()}) {
    if (!incident_raw(*p, g0, tol) || !incident_raw(*p, g1, tol)) {
      throw GeometryError(ErrorCode::DegenerateInput, "pencil plane does not contain L");
    }
  }
  // m0, m1: P_i(m_j) = delta_ij and orthogonal to L.
  Mat4 S;
  S.row(0) = P0.coords().transpose();
  S.row(1) = P1.coords().transpose();
  S.row(2) = g0.transpose();
  S.row(3) = g1.transpose();
  Eigen::JacobiSVD<Mat4> svd(S);
  const auto sv = svd.singularValues();
  if (sv[3] <= tol.eps_rank * sv[0]) {
    throw GeometryError(ErrorCode::DegenerateInput, "pencil planes are dependent");
  }
  const Mat4 Sinv = S.inverse();
  basis_.col(0) = g0;
  basis_.col(1) = g1;
  basis_.col(2) = Sinv.col(0);
  basis_.col(3) = Sinv.col(1);
  cobasis_ = basis_.inverse();
}

PencilFrame PencilFrame::standard() { return PencilFrame(Mat4::Identity(), Mat4::Identity()); }

ProjLine PencilFrame::line() const {
  return ProjLine(Vec4(basis_.col(0)), Vec4(basis_.col(1)));
}

Vec4 PencilFrame::pencil_covector(double theta) const {
  return std::cos(theta) * P0() + std::sin(theta) * P1();
}

HPlane PencilFrame::pencil_plane(double theta) const { return HPlane(pencil_covector(theta)); }

Vec4 PencilFrame::point_on_line(double psi) const {
  return std::cos(psi) * basis_.col(0) + std::sin(psi) * basis_.col(1);
}

double PencilFrame::line_parameter(const Vec4& t, const Tolerances& tol) const {
  const Vec4 c = cobasis_ * t;
  if (std::hypot(c[2], c[3]) > tol.eps_incid * c.norm() * 1e3) {
    throw GeometryError(ErrorCode::CenterNotOnL, "point is not on L");
  }
  return wrap_angle(std::atan2(c[1], c[0]));
}

Vec4 PencilFrame::embed(double theta, const Vec2& p) const {
  return p[0] * basis_.col(0) + p[1] * basis_.col(1) - std::sin(theta) * basis_.col(2) +
         std::cos(theta) * basis_.col(3);
}

PencilFrame::Located PencilFrame::locate(const Vec4& x, const Tolerances& tol) const {
  const Vec4 c = cobasis_ * x;
  const double r = std::hypot(c[2], c[3]);
  if (r <= tol.eps_incid * c.norm()) {
    throw GeometryError(ErrorCode::AtInfinity, "point lies on L");
  }
  // (c2, c3) = s * (-sin theta, cos theta) with theta in [0, pi).
  double theta = std::atan2(-c[2], c[3]);
  double s = r;
  if (theta < 0) {
    theta += kPi;
    s = -r;
  }
  if (theta >= kPi) {
    theta -= kPi;
    s = -s;
  }
  return {theta, Vec2(c[0] / s, c[1] / s)};
}

ProjLine PencilFrame::line_from_matrix(const Mat2& M) const {
  const Vec4 a = M(0, 0) * basis_.col(0) + M(1, 0) * basis_.col(1) + basis_.col(2);
  const Vec4 b = M(0, 1) * basis_.col(0) + M(1, 1) * basis_.col(1) + basis_.col(3);
  return ProjLine(a, b);
}

std::optional<Mat2> PencilFrame::matrix_from_line(const ProjLine& l, const Tolerances& tol) const {
  const Eigen::Matrix<double, 4, 2> C = cobasis_ * l.basis();
  const Mat2 Y = C.bottomRows<2>();
  Eigen::JacobiSVD<Mat2> svd(Y);
  const auto s = svd.singularValues();
  const double scale = C.norm();
  if (s[1] <= tol.eps_rank * scale) return std::nullopt;
  return Mat2(C.topRows<2>() * Y.inverse());
}

PencilFrame PencilFrame::from_basis(const Mat4& basis, const Tolerances& tol) {
  Eigen::JacobiSVD<Mat4> svd(basis);
  const auto sv = svd.singularValues();
  if (!(sv[0] > 0.0) || sv[3] <= tol.eps_rank * sv[0]) {
    throw GeometryError(ErrorCode::DegenerateInput, "frame basis is singular");
  }
  return PencilFrame(basis, basis.inverse());
}

PencilFrame PencilFrame::dual() const {
  // basis' = (P0, P1, g0*, g1*), cobasis' = (m0, m1, g0, g1)^T.
  Mat4 b, cb;
  b.col(0) = cobasis_.row(2).transpose();
  b.col(1) = cobasis_.row(3).transpose();
  b.col(2) = cobasis_.row(0).transpose();
  b.col(3) = cobasis_.row(1).transpose();
  cb.row(0) = basis_.col(2).transpose();
  cb.row(1) = basis_.col(3).transpose();
  cb.row(2) = basis_.col(0).transpose();
  cb.row(3) = basis_.col(1).transpose();
  return PencilFrame(b, cb);
}

// ------------------------------------------------------------------- Chart

Chart::Chart(const HPlane& inf_plane, const HPoint& origin, const std::array<HPoint, 3>& axes,
             const Tolerances& tol)
    : inf_(inf_plane) {
  const Vec4& f = inf_.coords();
  auto normalized = [&](const HPoint& p) {
    const double d = f.dot(p.coords());
    if (std::abs(d) <= tol.eps_incid * f.norm() * p.coords().norm()) {
      throw GeometryError(ErrorCode::AtInfinity, "chart frame point on infinity plane");
    }
    return Vec4(p.coords() / d);
  };
  origin_ = normalized(origin);
  for (int i = 0; i < 3; ++i) edges_.col(i) = normalized(axes[i]) - origin_;
  Eigen::JacobiSVD<Eigen::Matrix<double, 4, 3>> svd(edges_, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto s = svd.singularValues();
  if (s[2] <= tol.eps_rank * s[0]) {
    throw GeometryError(ErrorCode::DegenerateInput, "chart frame is affinely dependent");
  }
  pinv_ = svd.matrixV() * s.cwiseInverse().asDiagonal() * svd.matrixU().leftCols<3>().transpose();
}

Chart Chart::standard() {
  return Chart(HPlane(0, 0, 0, 1), HPoint(0, 0, 0, 1),
               {HPoint(1, 0, 0, 1), HPoint(0, 1, 0, 1), HPoint(0, 0, 1, 1)});
}

Vec3 Chart::map_raw(const Vec4& v, const Tolerances& tol) const {
  const Vec4& f = inf_.coords();
  const double d = f.dot(v);
  if (std::abs(d) <= tol.eps_incid * f.norm() * v.norm()) {
    throw GeometryError(ErrorCode::AtInfinity, "point lies on the infinity plane");
  }
  return pinv_ * (v / d - origin_);
}

Vec3 Chart::map(const HPoint& p, const Tolerances& tol) const { return map_raw(p.coords(), tol); }

HPoint Chart::unmap(const Vec3& a) const { return HPoint(Vec4(origin_ + edges_ * a)); }

// -------------------------------------------------------------- ArcSegment

ArcSegment::ArcSegment(double s, double e, double p)
    : start(wrap_angle(s, p)), end(wrap_angle(e, p)), period(p) {}

double ArcSegment::offset(double angle) const { return wrap_angle(angle - start, period); }

double ArcSegment::length() const {
  const double l = offset(end);
  return l == 0.0 ? period : l;
}

double ArcSegment::midpoint() const { return wrap_angle(start + 0.5 * length(), period); }

bool ArcSegment::contains(double angle, bool closed, double eps) const {
  const double off = offset(angle);
  const double len = length();
  if (closed) {
    return off <= len + eps || off >= period - eps;
  }
  return off > eps && off < len - eps;
}

}  // namespace ccproj
