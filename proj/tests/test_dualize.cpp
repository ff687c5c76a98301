#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ccproj/dualize.hpp"
#include "ccproj/scene.hpp"
#include "ccproj/surgery.hpp"
#include "oracles.hpp"

using namespace ccproj;

namespace {

// beta is in the dual section at psi iff the plane (psi, beta) meets every
// section; checked on a dense theta grid straight from the support function.
double membership_margin(const SectionFan& f, double psi, const Vec2& beta, int grid = 1440) {
  const Vec2 n = unit_normal(psi);
  double m = 1e300;
  for (int i = 0; i < grid; ++i) {
    const double th = kPi * i / grid;
    const double target = -beta.dot(unit_normal(th));
    m = std::min({m, f.support_at(th, n) - target, target + f.support_at(th, -n)});
  }
  return m;
}

std::vector<double> dense(double a, double b, int n) {
  std::vector<double> v;
  for (int i = 1; i < n; ++i) v.push_back(a + (b - a) * i / n);
  return v;
}

}  // namespace

TEST_CASE("the hyperboloid is self-dual: dual sections are unit disks") {
  const SectionFan f = oracle::hyperboloid_fan(16, 128);
  const SectionFan d = l_dual(f);
  REQUIRE(d.size() == f.size());
  // Gaps bulge by at most 1/cos(gap/2) and the m-gon loses 1 - cos(pi/m).
  const double bound = 1.0 / std::cos(kPi / 32) - std::cos(kPi / 128) + 1e-9;
  for (std::size_t i = 0; i < d.size(); ++i) {
    CHECK(d[i].theta == doctest::Approx(f[i].theta));
    for (int j = 0; j < 64; ++j) {
      const Vec2 u = unit_dir(j * 0.1);
      CHECK(std::abs(d[i].poly.support(u) - 1.0) <= bound);
    }
  }
  CHECK((d.frame().basis() - f.frame().dual().basis()).norm() < 1e-12);
}

TEST_CASE("dual sections agree with brute-force membership") {
  const Scene s = gen_random_fan(17, 7, 2);
  const SectionFan& f = s.fan;
  std::mt19937_64 g(4);
  for (double psi : {0.1, 1.3, 2.6}) {
    const auto D = dual_section(f, psi);
    REQUIRE(D);
    const ConvexPolygon P = dual_section_polar(f, psi);
    CHECK(hausdorff(*D, P) < 1e-9 * std::max(1.0, D->diameter()));

    const Vec2 c = D->centroid();
    const double R = 2 * std::max(1.0, D->diameter());
    std::uniform_real_distribution<double> u(-R, R);
    int inside = 0, outside = 0;
    for (int t = 0; t < 300; ++t) {
      const Vec2 beta = c + Vec2(u(g), u(g));
      const double dist = distance(beta, *D);
      const double m = membership_margin(f, psi, beta);
      if (dist == 0.0 && D->contains(beta, -1e-6)) {
        ++inside;
        CHECK(m >= -1e-9);
      } else if (dist > 1e-6) {
        ++outside;
        CHECK(m < 0);
      }
    }
    CHECK(inside > 0);
    CHECK(outside > 0);
  }
}

TEST_CASE("lines inside the body dualize to lines inside the dual body") {
  const SectionFan f = oracle::hyperboloid_fan(12, 64);
  const SectionFan d = l_dual(f);
  for (double a : {0.0, 0.8, 2.1}) {
    Mat2 M;
    M << 0.6 * std::cos(a), -0.3 * std::sin(a), 0.6 * std::sin(a), 0.3 * std::cos(a);
    for (int i = 0; i < 60; ++i) {
      const double t = kPi * i / 60;
      REQUIRE(f.section_at(t).contains(M * unit_normal(t)));
      CHECK(d.section_at(t).contains(dual_matrix(M) * unit_normal(t)));
    }
  }
  Mat2 M;
  M << 1, 2, 3, 4;
  CHECK(dual_matrix(dual_matrix(M)) == M);
}

TEST_CASE("dual of a found line") {
  const PencilFrame f = PencilFrame::standard();
  const PencilFrame d = f.dual();
  Mat2 M;
  M << 0.3, -1.2, 0.5, 2.0;
  const ProjLine lstar = d.line_from_matrix(dual_matrix(M));
  CHECK(dual_of_found_line(f, lstar).same_as(f.line_from_matrix(M)));
  // Applying the duality twice returns the original dual line.
  CHECK(dual_line(dual_of_found_line(f, lstar)).same_as(lstar));
  const ProjLine bad(d.point_on_line(0.3), d.embed(1.0, Vec2(1, 1)));
  CHECK_THROWS_AS(dual_of_found_line(f, bad), GeometryError);
  try {
    dual_of_found_line(f, bad);
  } catch (const GeometryError& e) {
    CHECK(e.code() == ErrorCode::IntersectsDualL);
  }
}

TEST_CASE("involution residual") {
  const auto q = involution_residual(oracle::hyperboloid_fan(16, 64));
  CHECK(q.max < 2e-2);
  CHECK(q.per_section.size() == 16);
  std::array<double, 4> dirs;
  const Scene oct = gen_octagon_fan(3, 8, &dirs);
  const auto r = involution_residual(oct.fan, {dirs.begin(), dirs.end()});
  CHECK(r.max < 1e-9 * std::max(1.0, r.diameter));
}

TEST_CASE("octagonal fans dualize to fans that are affine over the dual arcs") {
  std::array<double, 4> dirs;
  const Scene oct = gen_octagon_fan(8, 8, &dirs);
  const auto arcs = octagon_arcs(dirs);
  std::vector<double> extra(dirs.begin(), dirs.end());
  for (const ArcSegment& a : arcs) {
    const ArcSegment da = DualCorrespondence::dual_arc(a);
    for (double t : dense(da.start, da.start + da.length(), 5)) extra.push_back(wrap_angle(t));
  }
  const SectionFan d = l_dual(oct.fan, extra);
  for (const ArcSegment& a : arcs) CHECK(affine_dependence_check(d, DualCorrespondence::dual_arc(a)));

  // The hyperboloid is nowhere affine.
  const SectionFan q = oracle::hyperboloid_fan(12, 64);
  CHECK_FALSE(affine_dependence_check(l_dual(q), ArcSegment(0.0, 2 * kPi / 12 + 0.01)));
  CHECK(affine_dependence_check(l_dual(q), ArcSegment(0.0, kPi / 12)));  // no interior samples
}

TEST_CASE("pointedness matches dual affinity") {
  const SectionFan q = oracle::hyperboloid_fan(12, 64);
  const ArcSegment arc(0.3, 1.4);
  const auto rows = pointedness_table(q, arc);
  REQUIRE(rows.size() == 12);
  for (const auto& r : rows) {
    CHECK_FALSE(r.pointed);
    CHECK(r.pointed == r.dual_affine);
  }
  CHECK(pointedness_duality_check(q, arc));

  const SectionFan p = surgery_p(q, arc);
  for (const auto& r : pointedness_table(p, arc)) {
    CHECK(r.pointed);
    CHECK(r.dual_affine);
  }
  CHECK(pointedness_duality_check(p, arc));
}

TEST_CASE("l_dual rejects invalid fans") {
  const std::vector<Section> s = {{0.0, regular_polygon(8, 1.0, Vec2(5, 0)), false},
                                  {0.8, regular_polygon(8, 1.0, Vec2(5, 0)), false},
                                  {1.6, regular_polygon(8, 1.0, Vec2(5, 0)), false},
                                  {2.4, regular_polygon(8, 1.0, Vec2(5, 0)), false}};
  CHECK_THROWS_AS(l_dual(SectionFan(PencilFrame::standard(), s)), GeometryError);
  // Unchecked, the far fan still fails: some dual section is empty.
  CHECK_THROWS_AS(l_dual(SectionFan(PencilFrame::standard(), s), {}, Tolerances::defaults(), false),
                  GeometryError);
}

TEST_CASE("correspondence maps") {
  const DualCorrespondence c(PencilFrame::standard());
  CHECK(c.plane_of_center(kPi + 0.2) == doctest::Approx(0.2));
  CHECK(c.point_of_plane(0.5) == doctest::Approx(0.5));
  const ArcSegment a = DualCorrespondence::dual_arc(ArcSegment(0.2, 1.0));
  CHECK(a.start == doctest::Approx(1.0));
  CHECK(a.end == doctest::Approx(0.2));
  // Dual pencil plane psi consists of the source planes through t(psi).
  for (double psi : {0.1, 1.7}) {
    const Vec4 t = c.source.point_on_line(psi);
    const Vec4 w = c.target.pencil_covector(psi);
    CHECK(std::abs(std::abs(w.normalized().dot(t.normalized())) - 1.0) < 1e-12);
  }
}
