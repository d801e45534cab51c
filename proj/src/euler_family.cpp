#include "elp/euler_family.hpp"

#include <cmath>
#include <sstream>

#include "elp/error.hpp"

namespace elp {

double eval_p(double r2, double r3) {
  // Coefficients of powers of r3, each a polynomial in r2.
  const double c5 = 1.0;
  const double c4 = 2.0 - 2.0 * r2;
  const double c3 = 1.0 + r2 * (r2 - 4.0);
  const double c2 = -1.0 - r2 * (5.0 + r2 * (1.0 + r2));
  const double c1 = -2.0 + r2 * (-4.0 + r2 * (1.0 + r2 * (4.0 + 2.0 * r2)));
  const double c0 = -1.0 - r2 * (2.0 + r2 * (1.0 + r2 * (1.0 + r2 * (2.0 + r2))));
  return ((((c5 * r3 + c4) * r3 + c3) * r3 + c2) * r3 + c1) * r3 + c0;
}

double eval_dp_dr3(double r2, double r3) {
  const double c4 = 5.0;
  const double c3 = 8.0 - 8.0 * r2;
  const double c2 = 3.0 + r2 * (3.0 * r2 - 12.0);
  const double c1 = -2.0 - r2 * (10.0 + r2 * (2.0 + 2.0 * r2));
  const double c0 = -2.0 + r2 * (-4.0 + r2 * (1.0 + r2 * (4.0 + 2.0 * r2)));
  return (((c4 * r3 + c3) * r3 + c2) * r3 + c1) * r3 + c0;
}

double eval_f(double r2, const RootConfig& cfg) {
  if (!(r2 >= 0.0))
    throw Error(ErrCode::OutOfRange, "eval_f requires r2 >= 0");
  if (r2 == 0.0) return 1.0;  // p(0, 1) == 0 exactly

  double lo = std::max(1.0, r2) + 1e-9;
  // For r2 below ~7e-10 the root sits inside the 1e-9 collar above 1.
  if (eval_p(r2, lo) > 0.0) lo = std::max(1.0, r2) - 1e-6;
  double hi = r2 + 3.0;

  int widenings = 0;
  while ((eval_p(r2, lo) > 0.0) == (eval_p(r2, hi) > 0.0)) {
    if (++widenings > 8)
      throw Error(ErrCode::BracketFailure,
                  "no sign change for the family root after 8 widenings");
    hi = lo + 2.0 * (hi - lo);
  }

  const ScalarFn fn = [r2](double r3) { return eval_p(r2, r3); };
  const ScalarFn dfn = [r2](double r3) { return eval_dp_dr3(r2, r3); };
  return solve_bracketed(fn, lo, hi, cfg, dfn);
}

double eval_f_inverse(double r3, const RootConfig& cfg) {
  if (!(r3 >= 1.0))
    throw Error(ErrCode::OutOfRange, "eval_f_inverse requires r3 >= 1");
  if (r3 == 1.0) return 0.0;
  // f(0) - r3 = 1 - r3 < 0 and f(r3) - r3 >= 1, so [0, r3] brackets.
  const ScalarFn fn = [r3, &cfg](double x) { return eval_f(x, cfg) - r3; };
  return solve_bracketed(fn, 0.0, r3, cfg);
}

MassPair masses_from_m3(double r2, double r3, double m3) {
  if (r2 == r3)
    throw Error(ErrCode::DegenerateFamily, "r2 == r3 collapses the mass relations");
  const double mmax = (1.0 + r3) * (1.0 + r3);
  if (!(m3 >= 0.0 && m3 <= mmax)) {
    std::ostringstream os;
    os << "m3 = " << m3 << " outside [0, " << mmax << "]";
    throw Error(ErrCode::MassOutOfRange, os.str());
  }
  const double s = (r2 + 1.0) * (r2 + 1.0);
  const double d = (r2 - r3) * (r2 - r3);
  return {s * (m3 + r2 * d) / d, s * (1.0 - m3 / mmax)};
}

namespace {

// The three reduced equations of motion of the collinear configuration.
void reduced_equation_residuals(const EulerSolution& s, double out[3]) {
  const double r2 = s.r2(), r3 = s.r3();
  const double a = (r2 + 1.0) * (r2 + 1.0);
  const double b = (r3 + 1.0) * (r3 + 1.0);
  const double d = (r2 - r3) * (r2 - r3);
  out[0] = s.m2 / a + (s.m3 - b) / b;
  out[1] = (r2 * a - s.m1) / a + s.m3 / d;
  out[2] = (r3 * b - s.m1) / b - s.m2 / d;
}

void validate_solution(const EulerSolution& s) {
  const double r2 = s.r2(), r3 = s.r3();
  auto fail = [](const std::string& what) {
    throw Error(ErrCode::ResidualGateFailed, "solution check failed: " + what);
  };
  if (!(r2 >= 0.0 && r3 > r2 && r3 >= 1.0 - 1e-12)) fail("radii ordering");
  const double pscale = 1.0 + std::pow(std::abs(r3), 5);
  if (!(std::abs(eval_p(r2, r3)) <= 1e-10 * pscale)) fail("family relation");
  const double mmax = (1.0 + r3) * (1.0 + r3);
  if (!(s.m3 >= 0.0 && s.m3 <= mmax)) fail("m3 range");
  const MassPair closed = masses_from_m3(r2, r3, s.m3);
  if (!(std::abs(s.m1 - closed.m1) <= 1e-12 * (1.0 + std::abs(closed.m1))))
    fail("m1 closed form");
  if (!(std::abs(s.m2 - closed.m2) <= 1e-12 * (1.0 + std::abs(closed.m2))))
    fail("m2 closed form");
  if ((s.m3 > 0.0 || r2 > 0.0) && !(s.m1 > 0.0)) fail("m1 positivity");
  double eq[3];
  reduced_equation_residuals(s, eq);
  for (double e : eq)
    if (!(std::abs(e) <= 1e-10)) fail("reduced equation residual");
}

}  // namespace

EulerSolution build_solution(double r2, double m3, const RootConfig& cfg) {
  const double r3 = eval_f(r2, cfg);
  const MassPair m = masses_from_m3(r2, r3, m3);
  EulerSolution sol{{r2, r3}, m.m1, m.m2, m3};
  validate_solution(sol);
  return sol;
}

EulerSolution solution_from_values(double r2, double r3, double m1, double m2,
                                   double m3) {
  EulerSolution sol{{r2, r3}, m1, m2, m3};
  validate_solution(sol);
  return sol;
}

std::array<Vec2, 3> positions_at(const EulerSolution& sol, double t) {
  const double c = std::cos(t), s = std::sin(t);
  return {Vec2{c, s}, Vec2{-sol.r2() * c, -sol.r2() * s},
          Vec2{-sol.r3() * c, -sol.r3() * s}};
}

namespace {

// Quartic in u obtained from p by r2 = u, r3 = w + u + 1 (identically
// equal to p(u, w+u+1)), grouped by powers of u.
double quartic_in_u(double u, double w) {
  const double a4 = -1.0;
  const double a3 = -2.0 * w - 6.0;
  const double a2 = w * (3.0 * w * w + 8.0 * w + 1.0) - 10.0;
  const double a1 = w * (w * (w * (3.0 * w + 16.0) + 28.0) + 14.0) - 5.0;
  const double a0 = w * (w * (w * (w * (w + 7.0) + 19.0) + 24.0) + 12.0);
  return (((a4 * u + a3) * u + a2) * u + a1) * u + a0;
}

double quartic_du(double u, double w) {
  const double b3 = -4.0;
  const double b2 = -6.0 * w - 18.0;
  const double b1 = 2.0 * (w * (3.0 * w * w + 8.0 * w + 1.0) - 10.0);
  const double b0 = w * (w * (w * (3.0 * w + 16.0) + 28.0) + 14.0) - 5.0;
  return ((b3 * u + b2) * u + b1) * u + b0;
}

}  // namespace

double parametrize_G(double w, const RootConfig& cfg) {
  (void)cfg;
  if (!(w >= 0.0))
    throw Error(ErrCode::OutOfRange, "parametrize_G requires w >= 0");
  if (w == 0.0) return 0.0;

  double u = 0.0;
  double wk = 0.0;
  double dw = std::min(0.05, w);
  while (wk < w) {
    const double wn = std::min(w, wk + dw);
    double un = u;
    bool converged = false;
    for (int it = 0; it < 50; ++it) {
      const double q = quartic_in_u(un, wn);
      const double d = quartic_du(un, wn);
      if (d == 0.0 || !std::isfinite(d)) break;
      const double step = q / d;
      un -= step;
      if (!std::isfinite(un)) break;
      if (std::abs(step) <= 1e-15 * (1.0 + std::abs(un))) {
        converged = true;
        break;
      }
    }
    // Reject branch jumps as well as divergence.
    if (!converged || std::abs(un - u) > 1.0) {
      dw *= 0.5;
      if (dw < 1e-12)
        throw Error(ErrCode::MaxIterExceeded, "branch continuation stalled");
      continue;
    }
    u = un;
    wk = wn;
  }
  return u;
}

}  // namespace elp
