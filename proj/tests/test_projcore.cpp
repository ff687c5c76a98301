#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ccproj/projcore.hpp"

using namespace ccproj;

namespace {

Vec4 rnd4(std::mt19937_64& g) {
  std::normal_distribution<double> n;
  return {n(g), n(g), n(g), n(g)};
}

}  // namespace

TEST_CASE("homogeneous points are stored canonically") {
  const HPoint a(2, -4, 1, 0);
  const HPoint b(-1, 2, -0.5, 0);
  CHECK(a == b);
  CHECK(a[1] == doctest::Approx(-1.0));
  CHECK(a[0] == doctest::Approx(0.5));
  CHECK_THROWS_AS(HPoint(0, 0, 0, 0), GeometryError);
}

TEST_CASE("incidence, join and meet") {
  std::mt19937_64 g(7);
  for (int trial = 0; trial < 50; ++trial) {
    const HPoint p(rnd4(g)), q(rnd4(g));
    const ProjLine l = ProjLine::join(p, q);
    CHECK(l.contains(p.coords()));
    CHECK(l.contains(q.coords()));
    CHECK_FALSE(l.contains(rnd4(g)));

    const HPlane A(rnd4(g)), B(rnd4(g));
    const ProjLine m = ProjLine::meet(A, B);
    for (int i = 0; i < 2; ++i) {
      CHECK(std::abs(A.coords().dot(m.generator(i))) < 1e-12);
      CHECK(std::abs(B.coords().dot(m.generator(i))) < 1e-12);
    }
    const HPoint x = meet(l, A);
    CHECK(incident(A, x));
    CHECK(l.contains(x.coords()));
  }
  CHECK_THROWS_AS(ProjLine(Vec4(1, 0, 0, 0), Vec4(2, 0, 0, 0)), GeometryError);
}

TEST_CASE("Pluecker coordinates identify lines") {
  const ProjLine a(Vec4(1, 0, 0, 0), Vec4(0, 1, 0, 0));
  const ProjLine b(Vec4(1, 1, 0, 0), Vec4(3, -2, 0, 0));
  CHECK(a.same_as(b));
  CHECK((a.plucker() - b.plucker()).norm() < 1e-12);
  const ProjLine c(Vec4(0, 0, 1, 0), Vec4(0, 0, 0, 1));
  CHECK_FALSE(a.meets(c));
  const ProjLine d(Vec4(1, 0, 0, 0), Vec4(0, 0, 1, 0));
  CHECK(a.meets(d));
}

TEST_CASE("dual line is the annihilator and dualizing twice is the identity") {
  std::mt19937_64 g(3);
  for (int t = 0; t < 20; ++t) {
    const ProjLine l(rnd4(g), rnd4(g));
    const ProjLine d = dual_line(l);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) CHECK(std::abs(d.generator(i).dot(l.generator(j))) < 1e-12);
    CHECK(dual_line(d).same_as(l));
  }
}

TEST_CASE("pencil planes contain L and are pi-periodic") {
  const PencilFrame f = PencilFrame::standard();
  for (double t : {0.0, 0.3, 1.2, 3.0}) {
    const HPlane p = f.pencil_plane(t);
    CHECK(incident(p, HPoint(1, 0, 0, 0)));
    CHECK(incident(p, HPoint(0, 1, 0, 0)));
    CHECK(p.approx_equal(f.pencil_plane(t + kPi)));
  }
  // Standard frame: plane(theta) = cos(theta) {x2 = 0} + sin(theta) {x3 = 0}.
  CHECK(f.pencil_plane(0.0).approx_equal(HPlane(0, 0, 1, 0)));
  CHECK(f.pencil_plane(kPi / 2).approx_equal(HPlane(0, 0, 0, 1)));
}

TEST_CASE("general frame: embed, locate, and the line-matrix chart") {
  std::mt19937_64 g(11);
  const ProjLine L(rnd4(g), rnd4(g));
  const auto ann = L.annihilator();
  const PencilFrame f(L, HPlane(Vec4(ann.col(0))), HPlane(Vec4(ann.col(0) + 0.5 * ann.col(1))));
  CHECK((f.basis() * f.cobasis() - Mat4::Identity()).norm() < 1e-9);
  for (int t = 0; t < 20; ++t) {
    std::uniform_real_distribution<double> u(0, kPi);
    const double th = u(g);
    const Vec2 p(u(g) - 1, u(g) - 2);
    const Vec4 x = f.embed(th, p);
    CHECK(std::abs(f.pencil_covector(th).dot(x)) < 1e-10 * x.norm());
    const auto loc = f.locate(-3.0 * x);
    CHECK(loc.theta == doctest::Approx(th).epsilon(1e-10));
    CHECK((loc.p - p).norm() < 1e-9);

    Mat2 M;
    M << u(g), u(g) - 1, -u(g), u(g);
    const ProjLine l = f.line_from_matrix(M);
    const auto back = f.matrix_from_line(l);
    REQUIRE(back);
    CHECK((*back - M).norm() < 1e-9);
    CHECK(l.contains(f.embed(th, M * unit_normal(th))));
  }
  CHECK_THROWS_AS(f.locate(f.point_on_line(0.4)), GeometryError);
  CHECK_FALSE(f.matrix_from_line(ProjLine(f.point_on_line(0.3), f.embed(1.0, Vec2(1, 1)))));
  CHECK(f.line_parameter(f.point_on_line(1.1)) == doctest::Approx(1.1));
  CHECK_THROWS_AS(f.line_parameter(f.embed(0.2, Vec2(0, 0))), GeometryError);
}

TEST_CASE("dual frame pairing: dual point (psi, beta) meets primal point (theta, p)") {
  std::mt19937_64 g(5);
  const ProjLine L(rnd4(g), rnd4(g));
  const auto ann = L.annihilator();
  const PencilFrame f(L, HPlane(Vec4(ann.col(0))), HPlane(Vec4(ann.col(1))));
  const PencilFrame d = f.dual();
  CHECK((d.dual().basis() - f.basis()).norm() < 1e-12);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int t = 0; t < 50; ++t) {
    const double th = u(g) + 2, ps = u(g) + 2;
    const Vec2 p(u(g), u(g)), beta(u(g), u(g));
    // Pairing computed directly from homogeneous vectors.
    const double direct = d.embed(ps, beta).dot(f.embed(th, p));
    const double formula = beta.dot(unit_normal(th)) + p.dot(unit_normal(ps));
    CHECK(direct == doctest::Approx(formula).epsilon(1e-9));
  }
  // Points of L* are the pencil planes through L, and vice versa.
  CHECK((d.point_on_line(0.7) - f.pencil_covector(0.7)).norm() < 1e-12);
  CHECK((d.pencil_covector(0.7) - f.point_on_line(0.7)).norm() < 1e-12);
}

TEST_CASE("chart map and unmap") {
  const Chart c = Chart::standard();
  const HPoint p(1, 2, 3, 2);
  const Vec3 a = c.map(p);
  CHECK((a - Vec3(0.5, 1, 1.5)).norm() < 1e-12);
  CHECK(c.unmap(a).approx_equal(p));
  CHECK_THROWS_AS(c.map(HPoint(1, 0, 0, 0)), GeometryError);

  std::mt19937_64 g(9);
  const Chart c2(HPlane(rnd4(g)), HPoint(rnd4(g)), {HPoint(rnd4(g)), HPoint(rnd4(g)), HPoint(rnd4(g))});
  for (int t = 0; t < 10; ++t) {
    const HPoint q(rnd4(g));
    CHECK(c2.unmap(c2.map(q)).approx_equal(q, 1e-8));
  }
}

TEST_CASE("arcs") {
  const ArcSegment a(2.5, 0.5);  // wraps through 0
  CHECK(a.length() == doctest::Approx(0.5 + kPi - 2.5));
  CHECK(a.contains(3.0));
  CHECK(a.contains(0.2));
  CHECK_FALSE(a.contains(1.0));
  CHECK(a.contains(2.5));
  CHECK_FALSE(a.contains(2.5, false));
  CHECK(a.complement().contains(1.0));
  CHECK(wrap_angle(-0.1) == doctest::Approx(kPi - 0.1));
}
