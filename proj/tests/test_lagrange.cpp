#include <doctest.h>

#include <cmath>

#include "elp/euler_family.hpp"
#include "elp/lagrange.hpp"
#include "elp/verify.hpp"

using namespace elp;

TEST_CASE("lagrange anchor values") {
  const LagrangeSet one = lagrange_points(1.0);
  CHECK(std::abs(one.l2 - 2.3968122) < 1e-6);
  CHECK(std::abs(one.l3 + 2.3968122) < 1e-6);
  CHECK(std::abs(one.l4.x) < 1e-15);
  CHECK(std::abs(one.l4.y - std::sqrt(3.0)) < 1e-15);
  CHECK(std::abs(one.l1) < 1e-12);  // f_inverse(1) = 0

  const LagrangeSet two = lagrange_points(2.0);
  CHECK(std::abs(two.l1 + 0.71225) < 1e-4);
  CHECK(std::abs(two.l2 - 3.4090) < 1e-3);

  CHECK(std::abs(lagrange_points(3.7471).l2 - 5.161) < 5e-3);

  CHECK_THROWS_AS(lagrange_points(0.0), Error);
  CHECK_THROWS_AS(lagrange_points(-1.0), Error);
}

TEST_CASE("equilateral and mirror properties hold on a grid") {
  for (double x : {0.3, 0.7, 1.0, 2.0, 3.5}) {
    const LagrangeSet ls = lagrange_points(x);
    const Vec2 p1{1.0, 0.0}, p2{-x, 0.0};
    CHECK(std::abs(distance(ls.l4, p1) - (1.0 + x)) < 1e-12);
    CHECK(std::abs(distance(ls.l4, p2) - (1.0 + x)) < 1e-12);
    CHECK(std::abs(distance(ls.l5, p1) - (1.0 + x)) < 1e-12);
    CHECK(std::abs(distance(ls.l5, p2) - (1.0 + x)) < 1e-12);
    CHECK(ls.l5.x == ls.l4.x);
    CHECK(ls.l5.y == -ls.l4.y);
    CHECK(ls.l1 > -x);
    CHECK(ls.l1 < 1.0);
    CHECK(ls.l2 > 1.0);
    CHECK(ls.l3 < -x);
  }
}

TEST_CASE("the l1 branch switch is continuous at x = 1") {
  CHECK(std::abs(lagrange_points(0.999).l1) < 2e-3);
  CHECK(std::abs(lagrange_points(1.001).l1) < 2e-3);
}

TEST_CASE("all five points are equilibria of the implied two-primary system") {
  CHECK(verify_lagrange(1.0).max_residual <= 1e-8);
  CHECK(verify_lagrange(2.0).max_residual <= 1e-8);
  CHECK(verify_lagrange(0.4).max_residual <= 1e-8);
}

TEST_CASE("an off-point probe is far from equilibrium") {
  const double r3 = eval_f(1.0);
  const MassPair m = masses_from_m3(1.0, r3, 0.0);
  const EulerSolution degen{{1.0, r3}, m.m1, m.m2, 0.0};
  CHECK(accel_residual(degen, 3.0, 0.0).max_residual > 1e-3);
}

TEST_CASE("the l1 sign convention survives the degenerate-family residual test") {
  // (1, f^-1(x), x) with m3 = (1+x)^2 has m2 = 0, and the massless body at
  // (-f^-1(x), 0) must be in equilibrium: the literal l1 sign check.
  const double x = 2.0;
  const double r2 = eval_f_inverse(x);
  const double m3 = (1.0 + x) * (1.0 + x);
  const MassPair m = masses_from_m3(r2, x, m3);
  CHECK(m.m2 == 0.0);
  const EulerSolution sol{{r2, x}, m.m1, 0.0, m3};
  CHECK(accel_residual(sol, -r2, 0.0).max_residual <= 1e-8);
  CHECK(lagrange_points(x).l1 == -r2);
}
