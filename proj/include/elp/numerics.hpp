#pragma once

#include <functional>
#include <vector>

#include "elp/error.hpp"
#include "elp/geometry.hpp"

namespace elp {

/// Shared tolerances for the root finders and the curve tracer.
struct RootConfig {
  double abs_tol = 1e-12;   ///< residual tolerance
  double step_tol = 1e-13;  ///< argument (bracket width / step) tolerance
  int max_iter = 200;
  int scan_samples = 2048;  ///< grid size used by scan_roots
};

using ScalarFn = std::function<double(double)>;
using PlanarFn = std::function<Vec2(const Vec2&)>;
using FieldFn = std::function<double(const Vec2&)>;

/// Step used for central finite differences: max(1e-7, 1e-7*|x|).
double fd_step(double x);

/// Hybrid bisection/Newton root finder on a sign-changing bracket.
///
/// A Newton step (analytic derivative if `dfunc` is supplied, central
/// finite difference otherwise) is accepted only while it stays strictly
/// inside the current bracket; otherwise the iteration bisects. Returns x
/// with |func(x)| <= abs_tol or bracket width <= step_tol.
///
/// Throws NoSignChange if func(lo) and func(hi) have the same (nonzero)
/// sign, NonFinite if an evaluation is not finite, MaxIterExceeded.
double solve_bracketed(const ScalarFn& func, double lo, double hi,
                       const RootConfig& cfg = {}, const ScalarFn& dfunc = {});

/// Samples func at scan_samples+1 uniform points, runs solve_bracketed on
/// every sign-change subinterval and returns all roots in ascending order,
/// deduplicated within 10*step_tol. Grid points where func is non-finite
/// are skipped and their subintervals are not bracketed; grid points where
/// func is exactly zero are reported as roots.
std::vector<double> scan_roots(const ScalarFn& func, double lo, double hi,
                               const RootConfig& cfg = {});

/// Damped Newton for a planar residual with finite-difference Jacobian.
/// The step is halved up to 30 times until the max-norm residual
/// decreases. Returns x with max-norm residual <= abs_tol.
///
/// Throws Singular when |det J| < 1e-14 * scale, NonFinite, MaxIterExceeded.
Vec2 solve_planar(const PlanarFn& residual, const Vec2& seed,
                  const RootConfig& cfg = {});

/// Why a trace ended.
enum class TraceStop {
  Closure,         ///< returned within step/2 of the seed after >= 10 points
  Boundary,        ///< next point left the domain rectangle
  MaxPoints,
  CorrectorStall,  ///< corrector failed even after halving the step 12 times
};

/// Predictor-corrector tracing of the zero level set of a scalar field.
///
/// The predictor steps along the tangent (perpendicular to the
/// finite-difference gradient); the corrector projects back onto the zero
/// level by 1-D Newton along the gradient. The seed is corrected onto the
/// curve first. Every returned sample satisfies |field| <= abs_tol.
/// `direction` (+1/-1) selects which of the two tangent orientations the
/// first step takes. Non-finite field values make the corrector back off,
/// so a field may signal "keep out" by returning NaN.
///
/// Throws SeedNotOnCurve if the initial correction fails,
/// GradientVanished if the gradient norm drops below 1e-12 at a sample.
std::vector<Vec2> trace_level_curve(const FieldFn& field, const Vec2& seed,
                                    double step, const Rect& domain,
                                    int max_points, const RootConfig& cfg = {},
                                    int direction = +1,
                                    TraceStop* stop_reason = nullptr);

}  // namespace elp
