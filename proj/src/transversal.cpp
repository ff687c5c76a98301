#include "ccproj/transversal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "ccproj/dualize.hpp"
#include "ccproj/surgery.hpp"

namespace ccproj {

// ------------------------------------------------------------ convex solver

MinimizeResult minimize_convex(const ConvexObjective& f, const Eigen::VectorXd& x0, double radius,
                               double tol, int max_iter) {
  const int n = int(x0.size());
  Eigen::VectorXd x = x0;
  Eigen::MatrixXd P = Eigen::MatrixXd::Identity(n, n) * radius * radius;
  Eigen::VectorXd g(n);
  MinimizeResult r;
  r.x = x0;
  r.value = std::numeric_limits<double>::infinity();
  r.lower_bound = -std::numeric_limits<double>::infinity();
  const double dn = n;
  for (int it = 0; it < max_iter; ++it) {
    g.setZero();
    const double fx = f(x, g);
    r.iterations = it + 1;
    if (fx < r.value) {
      r.value = fx;
      r.x = x;
    }
    const double gPg = g.dot(P * g);
    if (!(gPg > 0.0)) {
      // Zero subgradient: x is a minimizer.
      r.lower_bound = std::max(r.lower_bound, fx);
      r.converged = true;
      break;
    }
    const double w = std::sqrt(gPg);
    r.lower_bound = std::max(r.lower_bound, fx - w);
    if (r.value - r.lower_bound <= tol) {
      r.converged = true;
      break;
    }
    const Eigen::VectorXd Pg = P * g / w;
    x -= Pg / (dn + 1.0);
    P = (dn * dn / (dn * dn - 1.0)) * (P - (2.0 / (dn + 1.0)) * Pg * Pg.transpose());
    P = 0.5 * (P + P.transpose()).eval();
  }
  r.lower_bound = std::min(r.lower_bound, r.value);
  return r;
}

// ------------------------------------------------------------------ lines

namespace {

Eigen::VectorXd flat(const Mat2& M) {
  Eigen::VectorXd v(4);
  v << M(0, 0), M(0, 1), M(1, 0), M(1, 1);
  return v;
}

Mat2 unflat(const Eigen::VectorXd& v) {
  Mat2 M;
  M << v[0], v[1], v[2], v[3];
  return M;
}

/// M with M [c_a c_b] = [p_a p_b].
Mat2 matrix_through(double ta, const Vec2& pa, double tb, const Vec2& pb) {
  Mat2 C, Y;
  C.col(0) = unit_normal(ta);
  C.col(1) = unit_normal(tb);
  Y.col(0) = pa;
  Y.col(1) = pb;
  return Y * C.inverse();
}

std::vector<std::size_t> all_indices(const SectionFan& fan) {
  std::vector<std::size_t> v(fan.size());
  std::iota(v.begin(), v.end(), 0);
  return v;
}

}  // namespace

LineParam ParamChart::to_param(const Mat2& M) const {
  const Vec2 a = M * unit_normal(theta_ref1) / chart_factor(phi, theta_ref1);
  const Vec2 b = M * unit_normal(theta_ref2) / chart_factor(phi, theta_ref2);
  return {a[0], a[1], b[0], b[1]};
}

Mat2 ParamChart::to_matrix(const LineParam& q) const {
  return matrix_through(theta_ref1, Vec2(q.u1, q.v1) * chart_factor(phi, theta_ref1), theta_ref2,
                        Vec2(q.u2, q.v2) * chart_factor(phi, theta_ref2));
}

Chart ParamChart::chart(const PencilFrame& frame) const {
  const Vec4 origin = frame.embed(phi + 0.5 * kPi, Vec2::Zero());
  const Vec4 along = -std::sin(phi) * frame.basis().col(2) + std::cos(phi) * frame.basis().col(3);
  // <plane(phi), origin> = -1, so each axis point is origin minus a direction at infinity.
  return Chart(frame.pencil_plane(phi), HPoint(origin),
               {HPoint(Vec4(origin - frame.basis().col(0))), HPoint(Vec4(origin - frame.basis().col(1))),
                HPoint(Vec4(origin - along))});
}

int TransversalLine::active_count(double eps) const {
  int c = 0;
  for (double r : residuals) c += (r >= value - eps) ? 1 : 0;
  return c;
}

double chebyshev_objective(const SectionFan& fan, const std::vector<std::size_t>& subset, double phi,
                           const Mat2& M, Mat2* grad) {
  double best = -1.0;
  for (std::size_t i : subset) {
    const Vec2 c = unit_normal(fan[i].theta);
    const double s = std::abs(chart_factor(phi, fan[i].theta));
    const Vec2 p = M * c;
    const Vec2 q = nearest_point(p, fan[i].poly);
    const double dist = (p - q).norm();
    const double d = dist / s;
    if (d > best) {
      best = d;
      if (grad) {
        if (dist > 0) {
          *grad = ((p - q) / dist) * c.transpose() / s;
        } else {
          grad->setZero();
        }
      }
    }
  }
  return best;
}

ParamChart solver_chart(const SectionFan& fan, const std::vector<std::size_t>& subset) {
  if (subset.size() < 2) throw GeometryError(ErrorCode::InvalidInput, "need at least two sections");
  std::vector<double> t;
  for (std::size_t i : subset) {
    if (i >= fan.size()) throw GeometryError(ErrorCode::InvalidInput, "sample index out of range");
    if (fan[i].touches_L) {
      throw GeometryError(ErrorCode::NoAdmissibleChart, "a selected section meets L");
    }
    t.push_back(fan[i].theta);
  }
  std::sort(t.begin(), t.end());
  double best_gap = -1, phi = 0;
  for (std::size_t j = 0; j < t.size(); ++j) {
    const double gap = j + 1 < t.size() ? t[j + 1] - t[j] : t[0] + kPi - t[j];
    if (gap > best_gap) {
      best_gap = gap;
      phi = wrap_angle(t[j] + 0.5 * gap);
    }
  }
  for (std::size_t j = 0; j + 1 < t.size(); ++j) {
    if (t[j + 1] - t[j] <= 1e-12) {
      throw GeometryError(ErrorCode::NoAdmissibleChart, "repeated pencil parameter");
    }
  }
  ParamChart ch;
  ch.phi = phi;
  ch.theta_ref1 = t.front();
  ch.theta_ref2 = t.back();
  return ch;
}

namespace {

struct Problem {
  Mat2 M0;
  double radius;
};

Problem initial_guess(const SectionFan& fan, const std::vector<std::size_t>& subset, double phi) {
  Eigen::Matrix<double, 2, Eigen::Dynamic> C(2, subset.size()), Y(2, subset.size());
  double D = 0;
  for (std::size_t j = 0; j < subset.size(); ++j) {
    const auto& s = fan[subset[j]];
    C.col(j) = unit_normal(s.theta);
    Y.col(j) = s.poly.centroid();
    D = std::max(D, s.poly.diameter());
  }
  const Mat2 G = C * C.transpose();
  Problem p;
  p.M0 = Y * C.transpose() * G.inverse();
  const double F0 = chebyshev_objective(fan, subset, phi, p.M0);
  const double smin = std::sqrt(std::max(G.eigenvalues().real().minCoeff(), 1e-300));
  // Any M with objective <= F0 has |(M - M0) c_i| <= 2 (F0 + D).
  p.radius = 1.5 * std::sqrt(double(subset.size())) * 2.0 * (F0 + D) / smin + 1e-6;
  return p;
}

TransversalLine finish(const SectionFan& fan, const std::vector<std::size_t>& subset, const ParamChart& ch,
                       const Mat2& M) {
  TransversalLine t;
  t.M = M;
  t.chart = ch;
  t.indices = subset;
  t.line = fan.frame().line_from_matrix(M);
  t.value = 0;
  for (std::size_t i : subset) {
    const Vec2 p = M * unit_normal(fan[i].theta);
    const double r = distance(p, fan[i].poly) / std::abs(chart_factor(ch.phi, fan[i].theta));
    t.residuals.push_back(r);
    t.value = std::max(t.value, r);
  }
  return t;
}

MinimizeResult solve_from(const SectionFan& fan, const std::vector<std::size_t>& subset, double phi,
                          const Mat2& center, double radius, double tol, int max_iter) {
  const ConvexObjective f = [&](const Eigen::VectorXd& x, Eigen::VectorXd& g) {
    Mat2 gm = Mat2::Zero();
    const double v = chebyshev_objective(fan, subset, phi, unflat(x), &gm);
    g = flat(gm);
    return v;
  };
  return minimize_convex(f, flat(center), radius, tol, max_iter);
}

}  // namespace

TransversalLine chebyshev_line(const SectionFan& fan, const std::vector<std::size_t>& subset_in,
                               const ChebyshevOptions& opt, const Tolerances& tol) {
  const std::vector<std::size_t> subset = subset_in.empty() ? all_indices(fan) : subset_in;
  const ParamChart ch = solver_chart(fan, subset);
  const Problem pb = initial_guess(fan, subset, ch.phi);
  const double stol = opt.tol > 0 ? opt.tol : tol.tol_solver;

  MinimizeResult best = solve_from(fan, subset, ch.phi, pb.M0, pb.radius, stol, opt.max_iter);
  std::mt19937_64 rng(opt.seed);
  std::normal_distribution<double> nd;
  for (int s = 1; s < opt.starts; ++s) {
    Eigen::VectorXd dir(4);
    for (int j = 0; j < 4; ++j) dir[j] = nd(rng);
    dir.normalize();
    const Mat2 center = pb.M0 + unflat(dir * 0.5 * pb.radius);
    MinimizeResult r = solve_from(fan, subset, ch.phi, center, 1.5 * pb.radius, stol, opt.max_iter);
    if (r.value < best.value) {
      best.x = r.x;
      best.value = r.value;
    }
    best.lower_bound = std::max(best.lower_bound, r.lower_bound);
    best.converged = best.converged || r.converged;
    best.iterations += r.iterations;
  }
  TransversalLine t = finish(fan, subset, ch, unflat(best.x));
  t.lower_bound = best.lower_bound;
  t.iterations = best.iterations;
  t.converged = best.converged;
  return t;
}

std::vector<double> chebyshev_multistart_values(const SectionFan& fan, int starts, std::uint64_t seed,
                                                const Tolerances& tol) {
  const std::vector<std::size_t> subset = all_indices(fan);
  const ParamChart ch = solver_chart(fan, subset);
  const Problem pb = initial_guess(fan, subset, ch.phi);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  std::vector<double> values;
  for (int s = 0; s < starts; ++s) {
    Eigen::VectorXd dir(4);
    for (int j = 0; j < 4; ++j) dir[j] = nd(rng);
    dir.normalize();
    const Mat2 center = pb.M0 + unflat(dir * 0.5 * pb.radius);
    values.push_back(solve_from(fan, subset, ch.phi, center, 1.5 * pb.radius, tol.tol_solver, 50000).value);
  }
  return values;
}

// ------------------------------------------------------------------ Helly

namespace {

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

HellyReport helly_verify(const SectionFan& fan, std::size_t cap, std::uint64_t seed, double tol,
                         const Tolerances& tols) {
  HellyReport rep;
  rep.tol = tol;
  rep.in_scope = validate(fan, tols).valid();
  const std::size_t k = fan.size();
  rep.subsets_total = binomial(k, 5);
  std::vector<std::vector<std::size_t>> subsets;
  if (k >= 5 && rep.subsets_total <= cap) {
    std::vector<std::size_t> idx = {0, 1, 2, 3, 4};
    while (true) {
      subsets.push_back(idx);
      int j = 4;
      while (j >= 0 && idx[j] == k - 5 + std::size_t(j)) --j;
      if (j < 0) break;
      ++idx[j];
      for (int m = j + 1; m < 5; ++m) idx[m] = idx[m - 1] + 1;
    }
  } else if (k >= 5) {
    rep.sampled = true;
    std::mt19937_64 rng(seed);
    std::vector<std::size_t> all = all_indices(fan);
    for (std::size_t s = 0; s < cap; ++s) {
      std::shuffle(all.begin(), all.end(), rng);
      std::vector<std::size_t> sub(all.begin(), all.begin() + 5);
      std::sort(sub.begin(), sub.end());
      subsets.push_back(sub);
    }
  }
  for (const auto& sub : subsets) {
    rep.max_subset_residual = std::max(rep.max_subset_residual, chebyshev_line(fan, sub, {}, tols).value);
  }
  rep.subsets_checked = subsets.size();
  rep.full_residual = chebyshev_line(fan, {}, {}, tols).value;
  rep.consistent = !(rep.max_subset_residual <= tol) || rep.full_residual <= tol;
  return rep;
}

// ---------------------------------------------------------------- Browder

namespace {

/// Center of the largest inscribed disk (centroid for degenerate polygons).
Vec2 chebyshev_center(const ConvexPolygon& X) {
  if (X.degenerate()) return X.centroid();
  const auto& v = X.vertices();
  std::vector<Vec2> n;
  std::vector<double> b;
  for (std::size_t j = 0; j < v.size(); ++j) {
    const Vec2 e = v[(j + 1) % v.size()] - v[j];
    const Vec2 nj = Vec2(e[1], -e[0]).normalized();
    n.push_back(nj);
    b.push_back(nj.dot(v[j]));
  }
  const ConvexObjective f = [&](const Eigen::VectorXd& x, Eigen::VectorXd& g) {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n.size(); ++j) {
      const double val = n[j][0] * x[0] + n[j][1] * x[1] - b[j];
      if (val > best) {
        best = val;
        g = n[j];
      }
    }
    return best;
  };
  const double scale = std::max(X.diameter(), 1e-300);
  const MinimizeResult r = minimize_convex(f, X.centroid(), scale, 1e-12 * std::max(1.0, scale), 2000);
  return Vec2(r.x[0], r.x[1]);
}

/// {x : alpha * q + beta * x in A}.
ConvexPolygon preimage(const ConvexPolygon& A, double alpha, const Vec2& q, double beta) {
  return A.transformed(Mat2::Identity() / beta, -alpha * q / beta);
}

/// (alpha, beta) with c(t) = alpha c(ta) + beta c(tb).
Vec2 coefficients(double t, double ta, double tb) {
  Mat2 C;
  C.col(0) = unit_normal(ta);
  C.col(1) = unit_normal(tb);
  return C.inverse() * unit_normal(t);
}

}  // namespace

BrowderResult browder_four_sections(const PencilFrame& frame, const std::array<Section, 4>& s,
                                    const Tolerances& tol) {
  const double t1 = s[0].theta, t2 = s[1].theta, t3 = s[2].theta, t4 = s[3].theta;
  const Vec2 ab = coefficients(t3, t1, t2);   // c3 = alpha c1 + beta c2
  const Vec2 ab2 = coefficients(t4, t3, t1);  // c4 = alpha' c3 + beta' c1
  double scale = 1.0;
  for (const Section& x : s) scale = std::max(scale, x.poly.extent());
  const double eps = 1e-12 * scale;

  BrowderResult res;
  Vec2 a1 = s[0].poly.centroid();
  Vec2 q3 = Vec2::Zero();
  for (int it = 0; it < tol.max_iter_fp; ++it) {
    const auto X = intersect(s[1].poly, preimage(s[2].poly, ab[0], a1, ab[1]), eps);
    if (!X) throw GeometryError(ErrorCode::EmptySelection, "no line through a1 meets A2 and A3");
    const Vec2 p2 = chebyshev_center(*X);
    q3 = ab[0] * a1 + ab[1] * p2;
    const auto Y = intersect(s[0].poly, preimage(s[3].poly, ab2[0], q3, ab2[1]), eps);
    if (!Y) throw GeometryError(ErrorCode::EmptySelection, "no line through q3 meets A4 and A1");
    const Vec2 next = nearest_point(a1, *Y);
    res.last_step = (next - a1).norm();
    res.iterations = it + 1;
    a1 = next;
    if (res.last_step <= tol.tol_fp * scale) {
      res.converged = true;
      break;
    }
  }
  if (!res.converged) return res;

  std::vector<Section> four(s.begin(), s.end());
  const SectionFan mini(frame, four, tol);
  std::vector<std::size_t> idx = all_indices(mini);
  const ParamChart ch = solver_chart(mini, idx);
  TransversalLine t = finish(mini, idx, ch, matrix_through(t1, a1, t3, q3));
  t.converged = true;
  t.iterations = res.iterations;
  // Report residuals in the caller's order.
  std::vector<double> ordered;
  for (const Section& x : s) {
    const Vec2 p = t.M * unit_normal(x.theta);
    ordered.push_back(distance(p, x.poly) / std::abs(chart_factor(ch.phi, wrap_angle(x.theta))));
  }
  t.residuals = ordered;
  res.line = t;
  return res;
}

FourSectionLine four_section_line(const SectionFan& fan, const std::array<std::size_t, 4>& idx,
                                  const Tolerances& tol) {
  FourSectionLine out;
  std::array<Section, 4> secs;
  for (int j = 0; j < 4; ++j) secs[j] = fan[idx[j]];
  try {
    const BrowderResult b = browder_four_sections(fan.frame(), secs, tol);
    out.browder_iterations = b.iterations;
    if (b.converged && b.line && b.line->value <= tol.eps_certify * std::max(1.0, fan.diameter())) {
      out.line = *b.line;
      out.line.indices.assign(idx.begin(), idx.end());
      return out;
    }
  } catch (const GeometryError& e) {
    if (e.code() != ErrorCode::EmptySelection) throw;
  }
  out.used_fallback = true;
  out.line = chebyshev_line(fan, std::vector<std::size_t>(idx.begin(), idx.end()), {}, tol);
  return out;
}

// ---------------------------------------------------------- certification

Certificate certify_matrix(const SectionFan& fan, const Mat2& M, const Tolerances& tol) {
  Certificate c;
  const ParamChart ch = solver_chart(fan, all_indices(fan));
  double diam = 0.0;
  for (std::size_t i = 0; i < fan.size(); ++i) {
    const double s = std::abs(chart_factor(ch.phi, fan[i].theta));
    const double r = distance(M * unit_normal(fan[i].theta), fan[i].poly) / s;
    c.residuals.push_back(r);
    c.max_residual = std::max(c.max_residual, r);
    diam = std::max(diam, fan[i].poly.diameter() / s);
  }
  c.threshold = tol.eps_certify * std::max(1.0, diam);
  for (std::size_t i = 0; i < c.residuals.size(); ++i) {
    if (c.residuals[i] > c.threshold) c.failing.push_back(i);
  }
  c.contained = c.failing.empty();
  return c;
}

Certificate certify_line(const SectionFan& fan, const ProjLine& line, const Tolerances& tol) {
  const auto M = fan.frame().matrix_from_line(line, tol);
  if (!M) {
    Certificate c;
    c.meets_L = true;
    return c;
  }
  return certify_matrix(fan, *M, tol);
}

// ------------------------------------------------ supporting half-planes

double boundary_direction(const HalfPlane& hp) {
  return wrap_angle(std::atan2(-hp.normal[0], hp.normal[1]));
}

HalfPlaneTransversal support_halfplane_transversal(const SectionFan& fan,
                                                   const std::vector<SupportHalfPlane>& halfplanes,
                                                   const Tolerances& tol) {
  std::vector<double> dirs;
  std::vector<Section> samples = fan.samples();
  for (const SupportHalfPlane& h : halfplanes) {
    const double nn = h.hp.normal.norm();
    if (!(nn > 0)) throw GeometryError(ErrorCode::InvalidInput, "half-plane normal is zero");
    const ConvexPolygon S = fan.section_at(h.theta);
    const double gap = h.hp.offset / nn - S.support(h.hp.normal / nn);
    if (std::abs(gap) > tol.eps_certify * std::max(1.0, S.extent())) {
      throw GeometryError(ErrorCode::NotSupporting, "half-plane boundary does not support its section");
    }
    const double d = boundary_direction(h.hp);
    bool seen = false;
    for (double e : dirs) {
      const double diff = std::abs(e - d);
      seen = seen || diff <= 1e-9 || kPi - diff <= 1e-9;
    }
    if (!seen) dirs.push_back(d);
    if (!fan.find_sample(h.theta, 1e-12)) {
      bool dup = false;
      for (const Section& x : samples) dup = dup || std::abs(x.theta - wrap_angle(h.theta)) <= 1e-12;
      if (!dup) samples.push_back({wrap_angle(h.theta), S, false});
    }
  }
  if (dirs.size() > 4) {
    throw GeometryError(ErrorCode::TooManyDirections, "boundaries meet L in more than four points");
  }
  std::sort(dirs.begin(), dirs.end());
  while (dirs.size() < 4) {
    if (dirs.empty()) {
      dirs.push_back(0.0);
      continue;
    }
    double best = -1, at = 0;
    for (std::size_t j = 0; j < dirs.size(); ++j) {
      const double g = j + 1 < dirs.size() ? dirs[j + 1] - dirs[j] : dirs[0] + kPi - dirs[j];
      if (g > best) {
        best = g;
        at = wrap_angle(dirs[j] + 0.5 * g);
      }
    }
    dirs.push_back(at);
    std::sort(dirs.begin(), dirs.end());
  }
  HalfPlaneTransversal out;
  std::copy(dirs.begin(), dirs.end(), out.directions.begin());

  const SectionFan base(fan.frame(), samples, tol);
  const SectionFan oct = octagonalize(base, out.directions, tol);
  const SectionFan dual = l_dual(oct, dirs, tol);
  std::array<std::size_t, 4> idx{};
  for (int j = 0; j < 4; ++j) idx[j] = *dual.find_sample(dirs[j], 1e-12);
  const FourSectionLine dl = four_section_line(dual, idx, tol);
  out.used_fallback = dl.used_fallback;

  const Mat2 M = dual_matrix(dl.line.M);
  const Certificate cert = certify_matrix(oct, M, tol);
  out.line = finish(oct, all_indices(oct), solver_chart(oct, all_indices(oct)), M);
  out.line.converged = cert.contained;
  out.line.iterations = dl.line.iterations + dl.browder_iterations;
  for (const SupportHalfPlane& h : halfplanes) {
    const Vec2 p = M * unit_normal(h.theta);
    const double nn = h.hp.normal.norm();
    out.hits.push_back(p);
    out.margins.push_back((h.hp.offset - h.hp.normal.dot(p)) / nn);
  }
  return out;
}

}  // namespace ccproj
