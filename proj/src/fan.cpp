#include "ccproj/fan.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <sstream>

namespace ccproj {

// -------------------------------------------------------------- SectionFan

SectionFan::SectionFan(PencilFrame frame, std::vector<Section> samples, const Tolerances& tol)
    : frame_(std::move(frame)), samples_(std::move(samples)) {
  (void)tol;
  if (samples_.size() < 2) {
    throw GeometryError(ErrorCode::InvalidInput, "a fan needs at least two sections");
  }
  for (Section& s : samples_) {
    const double w = wrap_angle(s.theta);
    // theta + pi names the same plane with section coordinates negated.
    if (std::abs(wrap_angle(s.theta, 2 * kPi) - w) > 0.5 * kPi) s.poly = s.poly.scaled(-1.0);
    s.theta = w;
  }
  std::sort(samples_.begin(), samples_.end(),
            [](const Section& a, const Section& b) { return a.theta < b.theta; });
  for (std::size_t i = 0; i + 1 < samples_.size(); ++i) {
    if (samples_[i + 1].theta - samples_[i].theta <= 1e-12) {
      throw GeometryError(ErrorCode::InvalidInput, "duplicate pencil parameter in fan");
    }
  }
  if (samples_.front().theta + kPi - samples_.back().theta <= 1e-12) {
    throw GeometryError(ErrorCode::InvalidInput, "duplicate pencil parameter across wrap");
  }
}

std::vector<double> SectionFan::thetas() const {
  std::vector<double> t;
  t.reserve(samples_.size());
  for (const Section& s : samples_) t.push_back(s.theta);
  return t;
}

std::optional<std::size_t> SectionFan::find_sample(double theta, double eps) const {
  const double w = wrap_angle(theta);
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    const double d = std::abs(samples_[i].theta - w);
    if (d <= eps || kPi - d <= eps) return i;
  }
  return std::nullopt;
}

GapWeights SectionFan::weights(double theta) const {
  GapWeights w = weights_mod_pi(wrap_angle(theta));
  // An odd number of half turns reads the antipodal section.
  if (wrap_angle(theta, 2 * kPi) >= kPi) {
    w.si = -w.si;
    w.sj = -w.sj;
  }
  return w;
}

GapWeights SectionFan::weights_mod_pi(double t) const {
  const std::size_t k = samples_.size();
  GapWeights w;
  auto it = std::upper_bound(samples_.begin(), samples_.end(), t,
                             [](double v, const Section& s) { return v < s.theta; });
  if (it != samples_.begin() && it != samples_.end()) {
    const std::size_t j = std::size_t(it - samples_.begin());
    const std::size_t i = j - 1;
    const double ti = samples_[i].theta, tj = samples_[j].theta;
    w.i = i;
    w.j = j;
    if (t == ti) return w;
    const double s = std::sin(tj - ti);
    w.a = std::sin(tj - t) / s;
    w.b = std::sin(t - ti) / s;
    return w;
  }
  // Wrap gap [theta_{k-1}, theta_0 + pi].
  const double ti = samples_[k - 1].theta, tj = samples_[0].theta + kPi;
  const bool below = t < samples_[0].theta;
  const double u = below ? t + kPi : t;
  w.i = k - 1;
  w.j = 0;
  const double flip = below ? -1.0 : 1.0;
  if (u == ti) {
    w.si = flip;
    return w;
  }
  const double s = std::sin(tj - ti);
  w.a = std::sin(tj - u) / s;
  w.b = std::sin(u - ti) / s;
  w.si = flip;
  w.sj = -flip;
  return w;
}

ConvexPolygon SectionFan::section_at(double theta) const {
  const GapWeights w = weights(theta);
  const ConvexPolygon& Si = samples_[w.i].poly;
  const ConvexPolygon& Sj = samples_[w.j].poly;
  if (w.b == 0.0) return (w.a == 1.0 && w.si == 1.0) ? Si : Si.scaled(w.a * w.si);
  return minkowski_sum(w.a, w.si > 0 ? Si : Si.scaled(-1.0), w.b,
                       w.sj > 0 ? Sj : Sj.scaled(-1.0));
}

double SectionFan::support_at(double theta, const Vec2& d) const {
  const GapWeights w = weights(theta);
  double h = w.a * samples_[w.i].poly.support(w.si * d);
  if (w.b != 0.0) h += w.b * samples_[w.j].poly.support(w.sj * d);
  return h;
}

double SectionFan::diameter() const {
  double d = 0;
  for (const Section& s : samples_) d = std::max(d, s.poly.diameter());
  return d;
}

double SectionFan::extent() const {
  double e = 0;
  for (const Section& s : samples_) e = std::max(e, s.poly.extent());
  return e;
}

// --------------------------------------------------------------- projection

namespace {

/// (theta, sigma) with y = sigma * unit_normal(theta), theta in [0, pi).
std::pair<double, double> ray_of(const Vec2& y) {
  const double r = y.norm();
  double theta = std::atan2(-y[0], y[1]);
  double sigma = r;
  if (theta < 0) {
    theta += kPi;
    sigma = -r;
  }
  if (theta >= kPi) {
    theta -= kPi;
    sigma = -sigma;
  }
  return {theta, sigma};
}

}  // namespace

bool ProjectionProfile::covers(const SectionFan& fan, const Vec3& X, double eps) const {
  const Vec2 y(X[1], X[2]);
  if (y.norm() <= 1e-300) return false;
  const auto [theta, sigma] = ray_of(y);
  const double rho = X[0] / sigma;
  const Vec2 n = unit_normal(psi);
  const double hi_t = fan.support_at(theta, n);
  const double lo_t = -fan.support_at(theta, -n);
  return rho > lo_t + eps && rho < hi_t - eps;
}

ProjectionProfile project_from_parameter(const SectionFan& fan, double psi,
                                         const std::vector<double>& directions) {
  ProjectionProfile prof;
  prof.psi = wrap_angle(psi);
  prof.thetas = directions.empty() ? fan.thetas() : directions;
  const Vec2 n = unit_normal(prof.psi);
  for (double th : prof.thetas) {
    prof.hi.push_back(fan.support_at(th, n));
    prof.lo.push_back(-fan.support_at(th, -n));
  }
  return prof;
}

ProjectionProfile project_from(const SectionFan& fan, const HPoint& t,
                               const std::vector<double>& directions, const Tolerances& tol) {
  const double psi = fan.frame().line_parameter(t.coords(), tol);
  return project_from_parameter(fan, psi, directions);
}

// --------------------------------------------------------------- validation

namespace {

struct CenterData {
  std::vector<double> hp, hm;  // h_{S_i}(n), h_{S_i}(-n) with n = unit_normal(psi)
};

/// Checks that the complement of the shadow from one center is convex.
/// Returns the worst normalized margin (negative means covered probe).
bool check_center(const SectionFan& fan, double psi, const Tolerances& tol, long& probes,
                  double& worst, std::string& why) {
  const std::size_t k = fan.size();
  const Vec2 n = unit_normal(psi);
  CenterData cd;
  std::vector<HalfPlane> hps;
  for (std::size_t i = 0; i < k; ++i) {
    cd.hp.push_back(fan[i].poly.support(n));
    cd.hm.push_back(fan[i].poly.support(-n));
    const Vec2 c = unit_normal(fan[i].theta);
    hps.push_back({c, cd.hm[i]});
    hps.push_back({-c, cd.hp[i]});
  }
  const double scale = std::max(1.0, fan.extent());
  const auto D = halfplane_intersection(hps, 1e6 * scale, 1e-13);
  if (!D) {
    why = "no line misses the complement of the shadow";
    return false;
  }
  const Vec2 beta = D->centroid();
  double min_margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < k; ++i) {
    const Vec2 c = unit_normal(fan[i].theta);
    min_margin = std::min({min_margin, cd.hm[i] - beta.dot(c), cd.hp[i] + beta.dot(c)});
  }

  if (D->degenerate() || min_margin <= 1e-9 * scale) {
    // Complement is unbounded in every chart: every constraint must be tight.
    for (std::size_t i = 0; i < k; ++i) {
      const Vec2 c = unit_normal(fan[i].theta);
      const double g1 = D->support(c) - cd.hm[i];
      const double g2 = D->support(-c) - cd.hp[i];
      const double slack = std::min(g1, g2) / scale;
      worst = std::min(worst, slack);
      if (slack < -1e-7) {
        std::ostringstream os;
        os << "shadow boundary not supporting at sample " << i;
        why = os.str();
        return false;
      }
    }
    return true;
  }

  // Boundary points of the complement in the chart RP^2 minus the line beta:
  //   Y = y / (r + <beta, y>).
  std::vector<Vec2> boundary;
  for (std::size_t i = 0; i < k; ++i) {
    const Vec2 c = unit_normal(fan[i].theta);
    boundary.push_back(c / (cd.hp[i] + beta.dot(c)));
    boundary.push_back(-c / (cd.hm[i] - beta.dot(c)));
  }
  auto margin_of = [&](const Vec2& Y) {
    // Back to RP^2: y = Y, r = 1 - <beta, Y>.
    if (Y.norm() <= 1e-300) return -1.0;
    const auto [theta, sigma] = ray_of(Y);
    const double rho = (1.0 - beta.dot(Y)) / sigma;
    const GapWeights w = fan.weights(theta);
    auto h = [&](std::size_t idx, double s, bool plus) {
      return (s > 0) == plus ? cd.hp[idx] : cd.hm[idx];
    };
    double hi = w.a * h(w.i, w.si, true), lo = -w.a * h(w.i, w.si, false);
    if (w.b != 0.0) {
      hi += w.b * h(w.j, w.sj, true);
      lo -= w.b * h(w.j, w.sj, false);
    }
    return std::min(rho - lo, hi - rho) / (std::abs(rho) + scale);
  };
  const int np = std::max(2, tol.n_probe);
  for (std::size_t a = 0; a < boundary.size(); ++a) {
    for (std::size_t b = a + 1; b < boundary.size(); ++b) {
      for (int s = 1; s < np; ++s) {
        const double t = double(s) / np;
        const Vec2 Y = (1.0 - t) * boundary[a] + t * boundary[b];
        const double m = margin_of(Y);
        ++probes;
        worst = std::min(worst, -m);
        if (m > 1e-7) {
          std::ostringstream os;
          os << "segment between shadow boundary points " << a << " and " << b
             << " enters the shadow";
          why = os.str();
          return false;
        }
      }
    }
  }
  return true;
}

}  // namespace

ValidationReport validate(const SectionFan& fan, const Tolerances& tol) {
  ValidationReport rep;
  rep.n_centers = tol.n_centers;
  rep.n_probe = tol.n_probe;
  int nondegenerate = 0;
  for (std::size_t i = 0; i < fan.size(); ++i) {
    const auto& v = fan[i].poly.vertices();
    const double sc = std::max(1.0, fan[i].poly.diameter());
    if (v.size() >= 3) {
      ++nondegenerate;
      for (std::size_t j = 0; j < v.size(); ++j) {
        const Vec2 e1 = v[(j + 1) % v.size()] - v[j];
        const Vec2 e2 = v[(j + 2) % v.size()] - v[(j + 1) % v.size()];
        if (cross2(e1, e2) < -tol.eps_convex * sc * sc) {
          rep.convex_ok = false;
          rep.nonconvex_sections.push_back(i);
          break;
        }
      }
    }
    if (fan[i].touches_L || fan[i].poly.extent() * tol.eps_convex > 1.0) {
      rep.disjoint_ok = false;
      rep.touching_sections.push_back(i);
    }
  }
  if (nondegenerate < 3) {
    rep.enough_sections = false;
    rep.messages.push_back("fewer than three non-degenerate sections");
  }
  if (!rep.disjoint_ok) rep.messages.push_back("a section meets L");
  if (!rep.convex_ok) rep.messages.push_back("a section is not convex");

  for (int c = 0; c < tol.n_centers; ++c) {
    const double psi = kPi * c / tol.n_centers;
    std::string why;
    if (!check_center(fan, psi, tol, rep.probes, rep.worst_margin, why)) {
      rep.concave_ok = false;
      rep.failing_centers.push_back(psi);
      rep.messages.push_back("center psi=" + std::to_string(psi) + ": " + why);
    }
  }
  return rep;
}

// ---------------------------------------------------------------- pointedness

std::pair<Vec2, Vec2> pointed_corners(const ConvexPolygon& section, const ArcSegment& arc,
                                      const Tolerances& tol) {
  const double a = wrap_angle(arc.start), b = wrap_angle(arc.end);
  const double sep = std::abs(std::sin(a - b));
  if (sep <= 1e-12) {
    throw GeometryError(ErrorCode::DegenerateQuadrangle, "arc endpoints coincide");
  }
  const SupportSlab sa = support_lines_through(section, a, tol);
  const SupportSlab sb = support_lines_through(section, b, tol);
  Mat2 N;
  N.row(0) = sa.normal.transpose();
  N.row(1) = sb.normal.transpose();
  const Mat2 Ninv = N.inverse();
  const Vec2 ea = unit_dir(a), eb = unit_dir(b);
  std::vector<Vec2> chosen;
  for (int ia = 0; ia < 2; ++ia) {
    for (int ib = 0; ib < 2; ++ib) {
      const Vec2 corner = Ninv * Vec2(ia ? sa.hi : sa.lo, ib ? sb.hi : sb.lo);
      // Rays into the quadrangle along the two sides meeting at this corner.
      const double want_b = ib ? -1.0 : 1.0;
      const double want_a = ia ? -1.0 : 1.0;
      const Vec2 r1 = ea * (want_b * (ea.dot(sb.normal) > 0 ? 1.0 : -1.0));
      const Vec2 r2 = eb * (want_a * (eb.dot(sa.normal) > 0 ? 1.0 : -1.0));
      const Vec2 bis = r1 + r2;
      const double dir = wrap_angle(std::atan2(bis[1], bis[0]));
      if (arc.contains(dir, false, 0.0)) chosen.push_back(corner);
    }
  }
  if (chosen.size() != 2) {
    throw GeometryError(ErrorCode::DegenerateQuadrangle, "corner selection failed");
  }
  if (chosen[1][0] < chosen[0][0] || (chosen[1][0] == chosen[0][0] && chosen[1][1] < chosen[0][1])) std::swap(chosen[0], chosen[1]);
  return {chosen[0], chosen[1]};
}

std::optional<std::pair<Vec2, Vec2>> is_pointed(const ConvexPolygon& section,
                                                const ArcSegment& arc, const Tolerances& tol) {
  const auto corners = pointed_corners(section, arc, tol);
  const double eps = tol.eps_affine * std::max(1.0, section.diameter());
  if (distance(corners.first, section) <= eps && distance(corners.second, section) <= eps) {
    return corners;
  }
  return std::nullopt;
}

}  // namespace ccproj
