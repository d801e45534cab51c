#pragma once

#include <array>
#include <vector>

#include "elp/euler_family.hpp"
#include "elp/numerics.hpp"

namespace elp {

/// Geometric slot of an equilibrium of the massless fourth body, one per
/// bracket of the classification theorem.
enum class ELClass {
  CollinearOuterLeft,   ///< L3(r3) < r4 < -r3, r5 = 0
  CollinearMiddle,      ///< -r3 < r4 < -r2, r5 = 0
  CollinearInner,       ///< -r2 < r4 < L1(r2), r5 = 0
  CollinearOuterRight,  ///< L2(r2) < r4 < L2(r3), r5 = 0
  TriangularUpper,      ///< r5 > 0
  TriangularLower,      ///< mirror of TriangularUpper
};

const char* to_string(ELClass k);

/// One equilibrium point of the massless fourth body in the rotating
/// frame, with its verified max-norm acceleration residual.
struct ELPoint {
  double r4 = 0.0;
  double r5 = 0.0;
  ELClass klass = ELClass::CollinearInner;
  double residual = 0.0;
};

/// All six equilibria of one solution, ordered as the ELClass enum.
struct ELSet {
  EulerSolution solution;
  std::array<ELPoint, 6> points;
};

/// One sample of the q3 = q4 locus with the common m3 value; samples whose
/// m3 falls outside [0, (1+r3)^2] are retained but flagged non-physical.
struct CurveSample {
  double r4 = 0.0;
  double r5 = 0.0;
  double m3 = 0.0;
  bool physical = true;
};

/// First reduced equilibrium equation of the fourth body, evaluated
/// literally. Vanishes exactly at the equilibria. Throws Collision within
/// 1e-12 of a body position.
double eval_f1(const EulerSolution& sol, double r4, double r5);

/// Second reduced equilibrium equation; r5 is an exact factor, and the
/// function is odd in r5.
double eval_f2(const EulerSolution& sol, double r4, double r5);

/// Center-fixed branch functions (r2 = 0, r3 = 1): m3 as a function of a
/// collinear candidate coordinate, dispatching on the bracket of r4.
/// Throws Pole at r4 in {-1, 0, 1}.
double collinear_m3_centerfixed(double r4);

/// Center-fixed axis branch (r4 = 0): m3 as a function of r5. Physical
/// range 1 < r5 < sqrt(3); throws Pole where the denominator vanishes.
double axis_m3_centerfixed(double r5);

/// General collinear branch functions for a family pair (r2, r3), r2 > 0:
/// m3 as a function of r4, dispatching on the bracket.
/// Throws Pole at r4 in {1, -r2, -r3} and on in-branch denominator zeros.
double collinear_m3_general(double r2, double r3, double r4);

/// Off-axis equilibrium factors: f2 = r5*q1 and f1 = q2 - r4*q1 hold
/// identically; both are even in r5.
double eval_q1(const EulerSolution& sol, double r4, double r5);
double eval_q2(const EulerSolution& sol, double r4, double r5);

/// m3 solved from q1 = 0 and q2 = 0 respectively; the off-axis equilibria
/// are exactly the points where q3 = q4 = m3. Even in r5. Throws Pole
/// (message names the vanished denominator).
double eval_q3(double r2, double r3, double r4, double r5);
double eval_q4(double r2, double r3, double r4, double r5);

/// Locates all six equilibria of a solution with m3 strictly inside
/// (0, (1+r3)^2). Collinear points come from bracketed inversion of the
/// branch functions on the classification brackets (all roots on a bracket
/// are surfaced; more than one is an error), the off-axis pair from a
/// planar solve seeded between the two-primary equilateral points. Every
/// point is polished on the reduced equations and must pass the
/// independent accel_residual gate at 1e-10.
/// Throws RootNotFound, ResidualGateFailed.
ELSet find_el_points(const EulerSolution& sol, const RootConfig& cfg = {});

/// Traces the q3 = q4 locus through the equilateral point of the
/// two-primary (r2) system. Both tangent directions are traced and
/// stitched unless the first leg closes.
std::vector<CurveSample> q3q4_locus(double r2, double resolution,
                                    const RootConfig& cfg = {});

}  // namespace elp
