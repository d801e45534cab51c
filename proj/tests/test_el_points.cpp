#include <doctest.h>

#include <cmath>
#include <random>

#include "elp/el_points.hpp"
#include "elp/euler_family.hpp"
#include "elp/lagrange.hpp"
#include "elp/verify.hpp"

using namespace elp;

namespace {

double min_polyline_distance(const std::vector<CurveSample>& path,
                             const Vec2& target) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const Vec2 a{path[i].r4, path[i].r5};
    const Vec2 b{path[i + 1].r4, path[i + 1].r5};
    const Vec2 ab = b - a;
    const double len2 = ab.dot(ab);
    double t = len2 > 0.0 ? (target - a).dot(ab) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    best = std::min(best, distance(a + t * ab, target));
  }
  return best;
}

}  // namespace

TEST_CASE("f2 has r5 as an exact factor and is odd in r5") {
  const EulerSolution sol = build_solution(2.0, 1.0);
  for (double r4 : {-5.0, -1.0, 0.3, 2.5})
    CHECK(eval_f2(sol, r4, 0.0) == 0.0);
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> dist(0.1, 4.0);
  for (int i = 0; i < 50; ++i) {
    const double r4 = dist(rng) - 2.0, r5 = dist(rng);
    const double plus = eval_f2(sol, r4, r5);
    const double minus = eval_f2(sol, r4, -r5);
    CHECK(std::abs(plus + minus) <= 1e-13 * (1.0 + std::abs(plus)));
  }
}

TEST_CASE("f1 is nonzero off equilibrium and throws on collision") {
  const EulerSolution sol = build_solution(0.0, 0.8);
  CHECK(std::abs(eval_f1(sol, 3.0, 0.0)) > 1e-3);
  CHECK_THROWS_AS(eval_f1(sol, 1.0, 0.0), Error);
  CHECK_THROWS_AS(eval_f2(sol, 0.0, 0.0), Error);
}

TEST_CASE("center-fixed branch values against the published points") {
  CHECK(std::abs(collinear_m3_centerfixed(1.7576) - 0.8) < 2e-4);
  CHECK(std::abs(collinear_m3_centerfixed(0.494666491) - 0.8) < 1e-8);
  CHECK(std::abs(collinear_m3_centerfixed(2.3968122) - 4.0) < 1e-5);
  for (double pole : {-1.0, 0.0, 1.0})
    CHECK_THROWS_AS(collinear_m3_centerfixed(pole), Error);
}

TEST_CASE("center-fixed branches are even under r4 -> -r4") {
  for (double r4 : {0.2, 0.5, 0.8, 1.3, 1.9, 2.3}) {
    const double a = collinear_m3_centerfixed(r4);
    const double b = collinear_m3_centerfixed(-r4);
    CHECK(std::abs(a - b) <= 1e-13 * (1.0 + std::abs(a)));
  }
}

TEST_CASE("axis branch values") {
  CHECK(std::abs(axis_m3_centerfixed(1.1394282249562) - 0.8) < 1e-10);
  CHECK(axis_m3_centerfixed(1.0) == 0.0);
  CHECK(std::abs(axis_m3_centerfixed(std::sqrt(3.0)) - 4.0) < 1e-9);
  CHECK_THROWS_AS(axis_m3_centerfixed(1.0 / std::sqrt(3.0)), Error);
}

TEST_CASE("general collinear branches against the nested family oracle") {
  const double r3 = eval_f(2.0);
  const double fr3 = eval_f(r3);
  const double mmax = (1.0 + r3) * (1.0 + r3);
  CHECK(std::abs(collinear_m3_general(2.0, r3, -fr3) - mmax) < 1e-6);
  CHECK(std::abs(collinear_m3_general(2.0, r3, -r3)) <= 1e-10);
  const double l1 = lagrange_points(2.0).l1;
  CHECK(std::abs(collinear_m3_general(2.0, r3, l1)) < 1e-6);
  CHECK_THROWS_AS(collinear_m3_general(2.0, r3, 1.0), Error);
  CHECK_THROWS_AS(collinear_m3_general(2.0, r3, -2.0), Error);
  CHECK_THROWS_AS(collinear_m3_general(0.0, 1.0, 0.5), Error);
}

TEST_CASE("general branches reduce to the center-fixed ones as r2 -> 0") {
  const double r2 = 1e-8;
  const double r3 = eval_f(r2);
  for (double r4 : {-2.1, -1.4, -0.55, 0.55, 1.4, 2.1}) {
    const double h = collinear_m3_general(r2, r3, r4);
    const double g = collinear_m3_centerfixed(r4);
    CHECK(std::abs(h - g) <= 1e-5 * (1.0 + std::abs(g)));
  }
}

TEST_CASE("q identities: f2 = r5*q1 and f1 = q2 - r4*q1") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> dist(-4.0, 4.0);
  const EulerSolution sol = build_solution(2.0, 5.0);
  const auto xs = positions_at(sol, 0.0);
  int tested = 0;
  while (tested < 100) {
    const double r4 = dist(rng), r5 = dist(rng);
    bool clear = true;
    for (const auto& x : xs)
      if (distance(x, {r4, r5}) < 0.05) clear = false;
    if (!clear) continue;
    ++tested;
    const double q1 = eval_q1(sol, r4, r5);
    const double q2 = eval_q2(sol, r4, r5);
    const double f1 = eval_f1(sol, r4, r5);
    const double f2 = eval_f2(sol, r4, r5);
    CHECK(std::abs(f2 - r5 * q1) <= 1e-12 * (1.0 + std::abs(f2)));
    CHECK(std::abs(f1 - (q2 - r4 * q1)) <= 1e-12 * (1.0 + std::abs(f1)));
    CHECK(std::abs(eval_q1(sol, r4, -r5) - q1) <= 1e-13 * (1.0 + std::abs(q1)));
    CHECK(std::abs(eval_q2(sol, r4, -r5) - q2) <= 1e-13 * (1.0 + std::abs(q2)));
  }
}

TEST_CASE("q3/q4 at the equilateral points of the degenerate systems") {
  const double r2 = 2.0;
  const double r3 = eval_f(r2);
  const double mmax = (1.0 + r3) * (1.0 + r3);
  const Vec2 l4a = lagrange_points(r2).l4;
  const Vec2 l4b{0.5 * (1.0 - r3), 0.5 * (1.0 + r3) * std::sqrt(3.0)};
  CHECK(std::abs(eval_q3(r2, r3, l4a.x, l4a.y)) < 1e-8);
  CHECK(std::abs(eval_q4(r2, r3, l4a.x, l4a.y)) < 1e-8);
  CHECK(std::abs(eval_q3(r2, r3, l4b.x, l4b.y) - mmax) < 1e-6);
  CHECK(std::abs(eval_q4(r2, r3, l4b.x, l4b.y) - mmax) < 1e-6);
  // even in r5
  CHECK(eval_q3(r2, r3, l4a.x, -l4a.y) ==
        doctest::Approx(eval_q3(r2, r3, l4a.x, l4a.y)).epsilon(1e-13));
}

TEST_CASE("find_el_points reproduces the equal-mass center-fixed equilibria") {
  const ELSet set = find_el_points(build_solution(0.0, 0.8));
  const ELPoint& outer_left = set.points[0];
  const ELPoint& middle = set.points[1];
  const ELPoint& inner = set.points[2];
  const ELPoint& outer_right = set.points[3];
  const ELPoint& tri_up = set.points[4];
  const ELPoint& tri_lo = set.points[5];

  // paper anchors
  CHECK(std::abs(inner.r4 - 0.494666491) <= 1e-8);
  CHECK(std::abs(outer_right.r4 - 1.7576) <= 1e-3);
  CHECK(std::abs(tri_up.r5 - 1.1394282249562) <= 1e-12);
  CHECK(std::abs(tri_up.r4) <= 1e-12);

  // high-precision values from an independent extended-precision solve
  CHECK(std::abs(inner.r4 - 0.49466649101736445) <= 1e-9);
  CHECK(std::abs(outer_right.r4 - 1.7576799791694021) <= 1e-9);

  // reflection symmetry of the quadruple and the axis pair
  CHECK(std::abs(middle.r4 + inner.r4) <= 1e-12);
  CHECK(std::abs(outer_left.r4 + outer_right.r4) <= 1e-12);
  CHECK(tri_lo.r5 == -tri_up.r5);
  CHECK(tri_lo.r4 == tri_up.r4);

  for (const ELPoint& p : set.points) {
    CHECK(p.residual <= 1e-10);
    const EulerSolution& sol = set.solution;
    CHECK(std::abs(eval_f1(sol, p.r4, p.r5)) <= 1e-10);
    CHECK(std::abs(eval_f2(sol, p.r4, p.r5)) <= 1e-10);
  }
}

TEST_CASE("find_el_points respects the classification brackets for r2 = 2") {
  const EulerSolution sol = build_solution(2.0, 1.0);
  const ELSet set = find_el_points(sol);
  const double r2 = 2.0, r3 = sol.r3();
  const LagrangeSet ls = lagrange_points(r2);
  const double l3_r3 = -eval_f(r3);
  const double l2_r3 = r3 * eval_f(1.0 / r3);

  CHECK(set.points[0].klass == ELClass::CollinearOuterLeft);
  CHECK(set.points[0].r4 > l3_r3);
  CHECK(set.points[0].r4 < -r3);
  CHECK(set.points[1].r4 > -r3);
  CHECK(set.points[1].r4 < -r2);
  CHECK(set.points[2].r4 > -r2);
  CHECK(set.points[2].r4 < ls.l1);
  CHECK(set.points[3].r4 > ls.l2);
  CHECK(set.points[3].r4 < l2_r3);
  CHECK(set.points[4].r5 > 0.0);
  CHECK(set.points[5].r5 == -set.points[4].r5);
  for (const ELPoint& p : set.points) CHECK(p.residual <= 1e-10);
  for (int i = 0; i < 4; ++i) CHECK(set.points[i].r5 == 0.0);
}

TEST_CASE("the planar solve lands on the published-family triangular point") {
  const double r3 = eval_f(2.0);
  const double mmax = (1.0 + r3) * (1.0 + r3);
  const double m3 = mmax / 2.0;
  const EulerSolution sol = build_solution(2.0, m3);
  const ELSet set = find_el_points(sol);
  const ELPoint& tri = set.points[4];
  // frozen from an extended-precision solve of q3 = q4 = m3
  CHECK(std::abs(tri.r4 + 1.21693763459774) < 1e-9);
  CHECK(std::abs(tri.r5 - 3.431213223568789) < 1e-9);
  CHECK(accel_residual(sol, tri.r4, tri.r5).max_residual <= 1e-10);
}

TEST_CASE("outer-left approaches the far equilibrium as m2 vanishes") {
  const double r3 = eval_f(2.0);
  const double mmax = (1.0 + r3) * (1.0 + r3);
  const ELSet set = find_el_points(build_solution(2.0, mmax - 1e-6));
  CHECK(std::abs(set.points[0].r4 + 6.0305) < 1e-3);
}

TEST_CASE("a sweep of the mass range keeps every residual below the gate") {
  const double r3 = eval_f(2.0);
  const double mmax = (1.0 + r3) * (1.0 + r3);
  for (double frac : {0.05, 0.35, 0.65, 0.95}) {
    const ELSet set = find_el_points(build_solution(2.0, frac * mmax));
    for (const ELPoint& p : set.points) CHECK(p.residual <= 1e-10);
  }
}

TEST_CASE("endpoint degeneration rates: linear away from the vanishing body") {
  const double eps = 1e-6;
  const double r3 = eval_f(2.0);
  const double mmax = (1.0 + r3) * (1.0 + r3);
  const LagrangeSet la = lagrange_points(2.0);

  const ELSet low = find_el_points(build_solution(2.0, eps));
  CHECK(std::abs(low.points[2].r4 - la.l1) <= 1e-3);
  CHECK(std::abs(low.points[3].r4 - la.l2) <= 1e-3);
  CHECK(distance({low.points[4].r4, low.points[4].r5}, la.l4) <= 1e-3);

  // the two points flanking body 3 converge only like (eps/c)^(1/3)
  const double cube = std::cbrt(eps / 4.7115);
  CHECK(std::abs(low.points[0].r4 + r3) <= 1.5 * cube);
  CHECK(std::abs(low.points[0].r4 + r3) >= 1e-4);
  CHECK(std::abs(low.points[1].r4 + r3) <= 1.5 * cube);
  CHECK(std::abs(low.points[1].r4 + r3) >= 1e-4);

  const LagrangeSet lb = lagrange_points(r3);
  const ELSet high = find_el_points(build_solution(2.0, mmax - eps));
  CHECK(std::abs(high.points[0].r4 - lb.l3) <= 1e-3);
  CHECK(std::abs(high.points[3].r4 - lb.l2) <= 1e-3);
  CHECK(distance({high.points[4].r4, high.points[4].r5}, lb.l4) <= 1e-3);
  // body 2's flanking pair, same cube-root law
  CHECK(std::abs(high.points[1].r4 + 2.0) <= 1e-2);
  CHECK(std::abs(high.points[1].r4 + 2.0) >= 1e-4);
  CHECK(std::abs(high.points[2].r4 + 2.0) <= 1e-2);
  CHECK(std::abs(high.points[2].r4 + 2.0) >= 1e-4);
}

TEST_CASE("find_el_points refuses the closed mass endpoints") {
  CHECK_THROWS_AS(find_el_points(build_solution(2.0, 0.0)), Error);
}

TEST_CASE("q3q4_locus passes through the four equilateral anchors") {
  const double r2 = 2.0;
  const double r3 = eval_f(r2);
  const auto path = q3q4_locus(r2, 0.02);
  REQUIRE(path.size() > 100);

  const Vec2 l4a{0.5 * (1.0 - r2), 0.5 * (1.0 + r2) * std::sqrt(3.0)};
  const Vec2 l4b{0.5 * (1.0 - r3), 0.5 * (1.0 + r3) * std::sqrt(3.0)};
  const Vec2 l5a{l4a.x, -l4a.y};
  const Vec2 l5b{l4b.x, -l4b.y};
  CHECK(min_polyline_distance(path, l4a) <= 1e-4);
  CHECK(min_polyline_distance(path, l4b) <= 1e-4);
  CHECK(min_polyline_distance(path, l5a) <= 1e-4);
  CHECK(min_polyline_distance(path, l5b) <= 1e-4);

  // the trace keeps going past the physical mass range and flags it
  bool has_nonphysical = false;
  const double mmax = (1.0 + r3) * (1.0 + r3);
  for (const CurveSample& s : path) {
    if (!s.physical) {
      has_nonphysical = true;
      CHECK((s.m3 < 0.0 || s.m3 > mmax));
    }
  }
  CHECK(has_nonphysical);
}

TEST_CASE("a fine trace passes close to the far equilateral point") {
  const double r2 = 2.0;
  const double r3 = eval_f(r2);
  const Vec2 l4b{0.5 * (1.0 - r3), 0.5 * (1.0 + r3) * std::sqrt(3.0)};
  const auto path = q3q4_locus(r2, 0.005);
  CHECK(min_polyline_distance(path, l4b) <= 1e-6);
}
