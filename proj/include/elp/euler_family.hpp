#pragma once

#include <array>

#include "elp/geometry.hpp"
#include "elp/numerics.hpp"

namespace elp {

/// One point of the two-parameter family of collinear circular 3-body
/// solutions: the bodies sit at radii (1, r2, r3) with the solo body at
/// radius 1, and the radii satisfy the quintic relation p(r2, r3) = 0.
struct EulerFamilyPoint {
  double r2 = 0.0;
  double r3 = 1.0;
};

/// A collinear circular 3-body solution in the normalization G = 1,
/// angular velocity 1, body 1 at radius 1. Bodies 2 and 3 sit on the
/// opposite side of the center at radii r2 < r3; m1 and m2 are determined
/// by m3 through the closed-form mass relations.
struct EulerSolution {
  EulerFamilyPoint family;
  double m1 = 0.0;
  double m2 = 0.0;
  double m3 = 0.0;

  double r2() const { return family.r2; }
  double r3() const { return family.r3; }
};

/// The degree-5 family polynomial, evaluated with Horner grouping in r3.
double eval_p(double r2, double r3);

/// Partial derivative of eval_p with respect to r3 (analytic).
double eval_dp_dr3(double r2, double r3);

/// r3 = f(r2): the unique root of p(r2, .) above max(1, r2).
///
/// Bracket starts at [max(1,r2)+1e-9, r2+3] and the upper end is widened
/// geometrically (x2 on the excess) when needed; r2 == 0 returns 1
/// directly since p(0,1) == 0 exactly in double precision.
/// Throws BracketFailure if no sign change is found after 8 widenings.
double eval_f(double r2, const RootConfig& cfg = {});

/// The inverse of eval_f on r3 >= 1; eval_f_inverse(1) == 0.
/// Throws OutOfRange for r3 < 1.
double eval_f_inverse(double r3, const RootConfig& cfg = {});

struct MassPair {
  double m1;
  double m2;
};

/// m1 and m2 from m3 via the closed forms; valid for 0 <= m3 <= (1+r3)^2
/// and m2 == 0 exactly at the upper endpoint.
/// Throws MassOutOfRange, DegenerateFamily (r2 == r3).
MassPair masses_from_m3(double r2, double r3, double m3);

/// Assembles the solution for (r2, m3): r3 = eval_f(r2), masses from the
/// closed forms. The result is re-verified against the three reduced
/// equations of motion before being returned.
EulerSolution build_solution(double r2, double m3, const RootConfig& cfg = {});

/// Rebuilds a solution from previously computed values (e.g. parsed from
/// serialized output) without re-solving, then runs the same consistency
/// checks as build_solution.
EulerSolution solution_from_values(double r2, double r3, double m1, double m2,
                                   double m3);

/// Positions at time t: (cos t, sin t), -r2*(cos t, sin t), -r3*(cos t, sin t).
std::array<Vec2, 3> positions_at(const EulerSolution& sol, double t);

/// Radical-free parametrization of the family curve: u = G(w) is the
/// branch of the quartic (in u) obtained from p by the substitution
/// r2 = u, r3 = w + u + 1 that is continuously connected to G(0) = 0.
/// Computed by continuation in w with Newton correction, halving the
/// w-step on failure. Throws OutOfRange for w < 0.
double parametrize_G(double w, const RootConfig& cfg = {});

}  // namespace elp
