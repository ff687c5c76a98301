#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "ccproj/dualize.hpp"
#include "ccproj/scene.hpp"
#include "ccproj/transversal.hpp"
#include "oracles.hpp"

using namespace ccproj;

namespace {

SectionFan disks(const std::vector<double>& th, const std::vector<Vec2>& c, double r, int m = 256) {
  std::vector<Section> s;
  for (std::size_t i = 0; i < th.size(); ++i) {
    const ConvexPolygon P = r > 0 ? convex_hull(oracle::ngon_points(m, r, c[i]))
                                  : convex_hull(std::vector<Vec2>{c[i]});
    s.push_back({th[i], P, false});
  }
  return SectionFan(PencilFrame::standard(), s);
}

// Closed-form minimax for three disks: the traces at theta_1, theta_2 fix the
// one at theta_3 = alpha c_1 + beta c_2, and the miss e is shared out along
// one direction in proportion to the chart factors.
double three_disk_value(const std::vector<double>& th, const std::vector<Vec2>& c, double r, double phi) {
  const double g = std::sin(th[1] - th[0]);
  const double alpha = std::sin(th[1] - th[2]) / g, beta = std::sin(th[2] - th[0]) / g;
  const double e = (c[2] - alpha * c[0] - beta * c[1]).norm();
  double s[3];
  for (int i = 0; i < 3; ++i) s[i] = std::abs(std::sin(phi - th[i]));
  const double num = e - (std::abs(alpha) + std::abs(beta) + 1) * r;
  return std::max(0.0, num / (std::abs(alpha) * s[0] + std::abs(beta) * s[1] + s[2]));
}

void check_code(ErrorCode code, const auto& fn) {
  try {
    fn();
    FAIL("expected a GeometryError");
  } catch (const GeometryError& e) {
    CHECK(e.code() == code);
  }
}

}  // namespace

TEST_CASE("ellipsoid method on simple convex functions") {
  const Eigen::Vector3d a(1.0, -2.0, 0.5);
  const ConvexObjective f = [&](const Eigen::VectorXd& x, Eigen::VectorXd& g) {
    const Eigen::VectorXd d = x - a;
    g = d.cwiseSign();
    return d.cwiseAbs().sum();
  };
  const MinimizeResult r = minimize_convex(f, Eigen::VectorXd::Zero(3), 10.0, 1e-9);
  CHECK(r.converged);
  CHECK(r.value < 1e-8);
  CHECK(r.lower_bound <= r.value);
  CHECK((r.x - a).norm() < 1e-7);

  const ConvexObjective q = [](const Eigen::VectorXd& x, Eigen::VectorXd& g) {
    g = 2 * x;
    return x.squaredNorm() + 3.0;
  };
  const MinimizeResult s = minimize_convex(q, Eigen::VectorXd::Constant(2, 1.0), 5.0, 1e-10);
  CHECK(s.value == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(s.value - s.lower_bound <= 1e-10 + 1e-12);
}

TEST_CASE("chart parametrization round trip") {
  const ParamChart ch{2.5, 0.3, 1.1};
  Mat2 M;
  M << 0.4, -1.0, 2.0, 0.7;
  CHECK((ch.to_matrix(ch.to_param(M)) - M).norm() < 1e-12);
  const Chart c = ch.chart(PencilFrame::standard());
  const ProjLine l = PencilFrame::standard().line_from_matrix(M);
  for (double t : {0.0, 1.0})
    CHECK(c.unmap(c.map(HPoint(l.generator(int(t))))).approx_equal(HPoint(l.generator(int(t))), 1e-9));
  CHECK(chart_factor(1.0, 0.25) == doctest::Approx(std::sin(0.75)));
}

TEST_CASE("the hyperboloid contains lines: every found trace matrix is a contraction") {
  const SectionFan f = oracle::hyperboloid_fan(24, 128);
  const TransversalLine t = chebyshev_line(f);
  CHECK(t.value <= 1e-6);
  const Eigen::SelfAdjointEigenSolver<Mat2> es(t.M.transpose() * t.M - Mat2::Identity());
  CHECK(es.eigenvalues().maxCoeff() <= 1.0 / std::pow(std::cos(kPi / 48), 2) - 1 + 1e-6);
  const Certificate c = certify_matrix(f, t.M);
  CHECK(c.contained);
  CHECK_FALSE(c.meets_L);
  CHECK(certify_line(f, t.line).contained);
}

TEST_CASE("two sections always admit a transversal") {
  const SectionFan f = disks({0.2, 1.9}, {{4, 1}, {-3, 2}}, 0.0);
  const TransversalLine t = chebyshev_line(f);
  CHECK(t.value <= 1e-7);
  CHECK((t.M * unit_normal(0.2) - Vec2(4, 1)).norm() < 1e-6);
}

TEST_CASE("three sections: solver value matches the closed form") {
  std::mt19937_64 g(12);
  std::uniform_real_distribution<double> u(-3, 3);
  int positive = 0;
  for (int trial = 0; trial < 12; ++trial) {
    const std::vector<double> th = {0.1, 1.2, 2.3 + 0.02 * trial};
    const std::vector<Vec2> c = {{u(g), u(g)}, {u(g), u(g)}, {u(g), u(g)}};
    const double r = trial % 2 ? 0.0 : 0.3;
    const SectionFan f = disks(th, c, r);
    const TransversalLine t = chebyshev_line(f, {}, {1, 1, 1e-10});
    const double expect = three_disk_value(th, c, r, t.chart.phi);
    // Polygonal disks sit inside the true disk by r (1 - cos(pi / 256)).
    CHECK(t.value == doctest::Approx(expect).epsilon(1e-3).scale(1e-6));
    if (expect > 1e-3) {
      ++positive;
      CHECK(t.active_count(1e-5) == 3);
    }
    CHECK(t.lower_bound <= t.value + 1e-12);
  }
  CHECK(positive >= 6);
}

TEST_CASE("objective is convex and multistarts agree") {
  const SectionFan far = disks({0.0, 0.6, 1.3, 2.0, 2.6}, {{3, 0}, {-1, 2}, {0.5, -2}, {2, 2}, {-2, -1}}, 0.4, 64);
  const std::vector<std::size_t> all = {0, 1, 2, 3, 4};
  std::mt19937_64 g(3);
  std::normal_distribution<double> n;
  for (int t = 0; t < 200; ++t) {
    Mat2 A, B;
    A << n(g), n(g), n(g), n(g);
    B << n(g), n(g), n(g), n(g);
    const double lam = std::uniform_real_distribution<double>(0, 1)(g);
    const double fa = chebyshev_objective(far, all, 1.0, A), fb = chebyshev_objective(far, all, 1.0, B);
    CHECK(chebyshev_objective(far, all, 1.0, lam * A + (1 - lam) * B) <= lam * fa + (1 - lam) * fb + 1e-10);
  }
  const auto v = chebyshev_multistart_values(far, 8, 5);
  REQUIRE(v.size() == 8);
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  CHECK(*lo > 1e-3);
  CHECK(*hi - *lo <= 1e-6);
  const TransversalLine t = chebyshev_line(far, {}, {8, 5});
  CHECK(t.value == doctest::Approx(*lo).epsilon(1e-6));
  CHECK(t.active_count(1e-5) >= 2);
}

TEST_CASE("Helly verification") {
  const Scene q = gen_quadric(8, 64);
  const HellyReport h = helly_verify(q.fan);
  CHECK(h.in_scope);
  CHECK(h.subsets_total == 56);
  CHECK(h.subsets_checked == 56);
  CHECK_FALSE(h.sampled);
  CHECK(h.consistent);
  CHECK(h.full_residual <= 1e-6);
  const HellyReport s = helly_verify(gen_quadric(12, 32).fan, 100, 3);
  CHECK(s.sampled);
  CHECK(s.subsets_checked == 100);
  CHECK(s.subsets_total == 792);
}

TEST_CASE("Browder iteration on four sections") {
  const SectionFan f = oracle::hyperboloid_fan(8, 64);
  const BrowderResult b = browder_four_sections(f.frame(), {f[0], f[2], f[4], f[6]});
  REQUIRE(b.converged);
  REQUIRE(b.line);
  CHECK(certify_matrix(f, b.line->M).contained);

  const auto fl = four_section_line(f, {0, 2, 4, 6});
  CHECK_FALSE(fl.used_fallback);
  CHECK(fl.line.value <= 1e-6);

  // Points no line meets: the intermediate selection is empty.
  const SectionFan pts = disks({0.0, 0.7, 1.5, 2.4}, {{0, 0}, {1, 0}, {5, 5}, {-3, 1}}, 0.0);
  check_code(ErrorCode::EmptySelection, [&] { browder_four_sections(pts.frame(), {pts[0], pts[1], pts[2], pts[3]}); });
  const auto fb = four_section_line(pts, {0, 1, 2, 3});
  CHECK(fb.used_fallback);
  CHECK(fb.line.value > 0);
}

TEST_CASE("certificates") {
  const SectionFan f = oracle::hyperboloid_fan(8, 64);
  Mat2 M;
  M << 0, 2, 0, 0;  // trace (2 cos theta, 0) leaves the unit disk near theta = 0
  const Certificate c = certify_matrix(f, M);
  CHECK_FALSE(c.contained);
  CHECK_FALSE(c.failing.empty());
  CHECK(c.max_residual > c.threshold);
  CHECK(c.residuals.size() == 8);
  const Certificate ok = certify_matrix(f, 0.5 * Mat2::Identity());
  CHECK(ok.contained);
  CHECK(ok.max_residual == 0.0);
  const ProjLine through_L(f.frame().point_on_line(0.3), f.frame().embed(1.0, Vec2(0, 0)));
  const Certificate m = certify_line(f, through_L);
  CHECK(m.meets_L);
  CHECK_FALSE(m.contained);
}

TEST_CASE("lines in the body dualize into the dual body") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const Scene s = gen_random_fan(seed, 8, 1);
    const TransversalLine t = chebyshev_line(s.fan);
    REQUIRE(certify_matrix(s.fan, t.M).contained);
    const SectionFan d = l_dual(s.fan);
    const Certificate c = certify_matrix(d, dual_matrix(t.M));
    CHECK(c.contained);
  }
}

TEST_CASE("supporting half-plane transversal") {
  const Scene q = gen_quadric(12, 64);
  const std::array<double, 4> dirs = {0.2, 0.9, 1.7, 2.5};
  const std::vector<double> ths = {0.1, 0.7, 1.3, 2.0, 2.8};
  std::vector<SupportHalfPlane> hs;
  for (int j = 0; j < 5; ++j) {
    const Vec2 n = (j % 2 ? -1.0 : 1.0) * unit_normal(dirs[j % 4]);
    hs.push_back({ths[j], {n, q.fan.section_at(ths[j]).support(n)}});
  }
  const HalfPlaneTransversal h = support_halfplane_transversal(q.fan, hs);
  REQUIRE(h.margins.size() == 5);
  for (double m : h.margins) CHECK(m >= -1e-7);
  for (std::size_t j = 0; j < 5; ++j) {
    // Independent check: the trace M c(theta) against the raw half-plane.
    const Vec2 p = h.line.M * unit_normal(ths[j]);
    CHECK(hs[j].hp.offset - hs[j].hp.normal.dot(p) >= -1e-7);
  }
  CHECK(boundary_direction(hs[1].hp) == doctest::Approx(0.9));

  auto too_many = hs;
  too_many[4].hp.normal = unit_normal(3.0);
  too_many[4].hp.offset = q.fan.section_at(ths[4]).support(unit_normal(3.0));
  check_code(ErrorCode::TooManyDirections, [&] { support_halfplane_transversal(q.fan, too_many); });
  auto loose = hs;
  loose[2].hp.offset += 0.5;
  check_code(ErrorCode::NotSupporting, [&] { support_halfplane_transversal(q.fan, loose); });
}

TEST_CASE("solver chart") {
  const SectionFan f = disks({0.1, 0.5, 2.0}, {{0, 0}, {0, 0}, {0, 0}}, 1.0, 16);
  const ParamChart c = solver_chart(f, {0, 1, 2});
  CHECK(c.phi == doctest::Approx(1.25));
  std::vector<Section> s = f.samples();
  s[1].touches_L = true;
  check_code(ErrorCode::NoAdmissibleChart, [&] { solver_chart(SectionFan(f.frame(), s), {0, 1, 2}); });
  check_code(ErrorCode::InvalidInput, [&] { solver_chart(f, {0}); });
}
