#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ccproj/dualize.hpp"
#include "ccproj/eulercalc.hpp"
#include "ccproj/scene.hpp"
#include "oracles.hpp"

using namespace ccproj;

namespace {

// Standard frame, unit-disk sections: the plane (g, m) cuts plane(theta) in
// {<g, p> = -<m, c(theta)>}, which misses the disk iff |<m, c(theta)>| > |g|.
// That happens on one arc exactly when |g| < |m|.
int quadric_chi(const Vec4& a) {
  return Vec2(a[0], a[1]).norm() < Vec2(a[2], a[3]).norm() ? 1 : 0;
}

}  // namespace

TEST_CASE("chi of plane sections of the hyperboloid") {
  const Scene q = gen_quadric(24, 128);
  const ChiReport far = chi_section(q.fan, HPlane(1, 0, 0, -10));
  CHECK(far.chi == 1);
  CHECK_FALSE(far.membership);
  REQUIRE(far.empty_arc);
  // The plane misses sections where |10 cos(theta)| > 1, i.e. away from theta = pi/2.
  CHECK(far.empty_arc->contains(0.0));
  CHECK_FALSE(far.empty_arc->contains(kPi / 2));
  CHECK(far.empty_arc->length() == doctest::Approx(kPi - 2 * std::asin(0.1)).epsilon(1e-3));

  const ChiReport near = chi_section(q.fan, HPlane(1, 0, 0, 0.5));
  CHECK(near.chi == 0);
  CHECK(near.membership);
  CHECK_FALSE(near.empty_arc);

  const ChiReport pen = chi_section(q.fan, HPlane(0, 0, 0.3, 1));
  CHECK(pen.pencil_plane);
  CHECK(pen.chi == 1);
}

TEST_CASE("random planes against the analytic oracle") {
  const Scene q = gen_quadric(24, 128);
  std::mt19937_64 g(99);
  std::normal_distribution<double> n;
  int compared = 0;
  for (int t = 0; t < 200; ++t) {
    const Vec4 a(n(g), n(g), n(g), n(g));
    const double rg = Vec2(a[0], a[1]).norm(), rm = Vec2(a[2], a[3]).norm();
    if (std::abs(rg - rm) < 0.05 * rm) continue;
    ++compared;
    const ChiReport r = chi_section(q.fan, HPlane(a));
    CHECK(r.chi == quadric_chi(a));
    CHECK(r.membership == (r.chi == 0));
  }
  CHECK(compared > 150);
}

TEST_CASE("slice gap and dual coordinates") {
  const Scene q = gen_quadric(12, 256);
  const Vec4 a(1, 0, 0, -10);
  CHECK(slice_gap(q.fan, a, 0.0) == doctest::Approx(10 - 1).epsilon(1e-4));
  CHECK(slice_gap(q.fan, a, kPi / 2) < 0);

  const PencilFrame f = q.frame();
  const PencilFrame d = f.dual();
  std::mt19937_64 g(1);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int t = 0; t < 30; ++t) {
    const double psi = std::abs(u(g)) * 1.5;
    const Vec2 beta(u(g), u(g));
    const auto dc = dual_coordinates(f, -2.5 * d.embed(psi, beta));
    REQUIRE(dc);
    CHECK(dc->psi == doctest::Approx(psi).epsilon(1e-12));
    CHECK((dc->beta - beta).norm() < 1e-12);
  }
  CHECK_FALSE(dual_coordinates(f, Vec4(0, 0, 1, 2)));

  const SectionFan dual = l_dual(q.fan);
  CHECK(dual_margin(dual, {0.4, Vec2(0.2, 0.1)}) > 0.5);
  CHECK(dual_margin(dual, {0.4, Vec2(3, 0)}) == doctest::Approx(-2.0).epsilon(1e-2));
}

TEST_CASE("chi agrees with membership in the L-dual fan") {
  for (std::uint64_t seed : {3u, 4u}) {
    const Scene s = gen_random_fan(seed, 10, 2);
    const SectionFan dual = l_dual(s.fan);
    std::mt19937_64 g(seed);
    std::normal_distribution<double> n;
    std::vector<HPlane> planes;
    for (int t = 0; t < 200; ++t) {
      // Plane through a random point near the body, random orientation.
      const double psi = std::uniform_real_distribution<double>(0, kPi)(g);
      const Vec2 beta = dual.section_at(psi).centroid() + 2 * Vec2(n(g), n(g));
      planes.emplace_back(dual.frame().embed(psi, beta));
    }
    const ChiCrosscheck c = chi_dual_crosscheck(s.fan, dual, planes);
    CHECK(c.planes == 200);
    CHECK(c.compared > 100);
    CHECK(c.members > 0);
    CHECK(c.members < c.compared);
    CHECK(c.mismatches.empty());
  }
}

TEST_CASE("octagonal fans: chi and dual membership agree up to rounding") {
  std::array<double, 4> dirs;
  const Scene oct = gen_octagon_fan(6, 8, &dirs);
  std::vector<double> extra(dirs.begin(), dirs.end());
  for (int i = 0; i < 64; ++i) extra.push_back(kPi * (i + 0.5) / 64);
  const SectionFan dual = l_dual(oct.fan, extra);
  std::mt19937_64 g(8);
  std::normal_distribution<double> n;
  std::vector<HPlane> planes;
  for (int t = 0; t < 200; ++t) {
    const double psi = kPi * (std::uniform_int_distribution<int>(0, 63)(g) + 0.5) / 64;
    const Vec2 beta = dual.section_at(psi).centroid() + 1.5 * Vec2(n(g), n(g));
    planes.emplace_back(dual.frame().embed(psi, beta));
  }
  const ChiCrosscheck c = chi_dual_crosscheck(oct.fan, dual, planes, 1e-6);
  CHECK(c.compared >= 190);
  CHECK(c.mismatches.empty());
}

TEST_CASE("empty set split into two arcs is rejected") {
  const ConvexPolygon near = regular_polygon(16, 1.0), far = regular_polygon(16, 1.0, Vec2(5, 0));
  const SectionFan f(PencilFrame::standard(),
                     {{0.0, near, false}, {kPi / 4, far, false}, {kPi / 2, near, false}, {3 * kPi / 4, far, false}});
  try {
    chi_section(f, HPlane(1, 0, 0, 0));
    FAIL("expected NonIntervalEmptySet");
  } catch (const GeometryError& e) {
    CHECK(e.code() == ErrorCode::NonIntervalEmptySet);
  }
}
