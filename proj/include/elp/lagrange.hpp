#pragma once

#include "elp/numerics.hpp"
#include "elp/verify.hpp"

namespace elp {

/// The five classical Lagrange points of the two-primary circular system
/// with primaries at (1,0) and (-x,0), parametrized by the second
/// primary's radius x. l1 lies between the primaries, l2 > 1, l3 < -x;
/// l4/l5 are the equilateral points (l4 above the axis).
struct LagrangeSet {
  double x = 0.0;
  double l1 = 0.0;
  double l2 = 0.0;
  double l3 = 0.0;
  Vec2 l4;
  Vec2 l5;
};

/// Computes the set via the family-function identities:
/// l1 = -f^-1(x) for x >= 1 and x*f^-1(1/x) below, l2 = x*f(1/x),
/// l3 = -f(x); l4/l5 in closed form. Throws OutOfRange for x <= 0.
LagrangeSet lagrange_points(double x, const RootConfig& cfg = {});

/// Rotating-frame acceleration residual at each of the five points, using
/// the masses x(1+x)^2 and (1+x)^2 implied by the unit-rate normalization
/// (the m3 = 0 degenerate member of the family). One named entry per point.
ResidualReport verify_lagrange(double x, const RootConfig& cfg = {});

}  // namespace elp
