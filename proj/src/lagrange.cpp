#include "elp/lagrange.hpp"

#include <cmath>

#include "elp/euler_family.hpp"

namespace elp {

LagrangeSet lagrange_points(double x, const RootConfig& cfg) {
  if (!(x > 0.0))
    throw Error(ErrCode::OutOfRange, "lagrange_points requires x > 0");
  LagrangeSet ls;
  ls.x = x;
  ls.l1 = (x >= 1.0) ? -eval_f_inverse(x, cfg)
                     : x * eval_f_inverse(1.0 / x, cfg);
  ls.l2 = x * eval_f(1.0 / x, cfg);
  ls.l3 = -eval_f(x, cfg);
  // Equilateral apex over the primaries at (1,0) and (-x,0).
  const double mid = 0.5 * (1.0 - x);
  const double apex = 0.5 * (1.0 + x) * std::sqrt(3.0);
  ls.l4 = {mid, apex};
  ls.l5 = {mid, -apex};
  return ls;
}

ResidualReport verify_lagrange(double x, const RootConfig& cfg) {
  const LagrangeSet ls = lagrange_points(x, cfg);
  // Massless third body: the two-primary system with the unit-rate masses.
  const double r3 = -ls.l3;
  const MassPair m = masses_from_m3(x, r3, 0.0);
  const EulerSolution sol{{x, r3}, m.m1, m.m2, 0.0};

  auto at = [&](double px, double py) {
    return accel_residual(sol, px, py).max_residual;
  };
  return make_report({{"L1", at(ls.l1, 0.0)},
                      {"L2", at(ls.l2, 0.0)},
                      {"L3", at(ls.l3, 0.0)},
                      {"L4", at(ls.l4.x, ls.l4.y)},
                      {"L5", at(ls.l5.x, ls.l5.y)}});
}

}  // namespace elp
