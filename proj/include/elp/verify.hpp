#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "elp/euler_family.hpp"
#include "elp/geometry.hpp"

namespace elp {

struct DriftMetrics {
  double radius_drift = 0.0;
  double angular_rate_drift = 0.0;
};

/// Named per-equation residuals plus optional integration drift.
/// max_residual is always the max of |eq_residuals| entries.
struct ResidualReport {
  std::vector<std::pair<std::string, double>> eq_residuals;
  double max_residual = 0.0;
  std::optional<DriftMetrics> drift;
};

ResidualReport make_report(
    std::vector<std::pair<std::string, double>> entries);

struct BodyState {
  Vec2 position;
  Vec2 velocity;
  double mass = 0.0;
};

/// First-principles rotating-frame equilibrium residual at (r4, r5):
/// uniform circular motion at unit rate has acceleration -X, so this
/// reports the components of sum_i m_i (X_i - X4)/|X_i - X4|^3 + X4 with
/// the primaries at t = 0. Massless bodies exert no force. This path
/// shares no algebra with the reduced equilibrium equations.
/// Throws Collision within 1e-12 of a massive body.
ResidualReport accel_residual(const EulerSolution& sol, double r4, double r5);

/// Residuals of the three reduced equations of motion of the collinear
/// circular 3-body configuration; all <= 1e-10 for any solution produced
/// by build_solution.
ResidualReport check_es_equations(const EulerSolution& sol);

struct IntegrationResult {
  std::vector<double> times;
  std::vector<std::vector<BodyState>> states;  ///< one snapshot per step
  std::vector<double> radius_drift;            ///< per body
  std::vector<double> angular_rate_drift;      ///< per body (0 for bodies at the origin)
  double max_radius_drift = 0.0;
  double max_angular_rate_drift = 0.0;
  double momentum_drift = 0.0;      ///< massive subsystem, max-norm over time
  double energy_drift_rel = 0.0;    ///< massive subsystem, relative to t=0
  bool step_too_large = false;      ///< energy drift above 1e-6 relative
};

/// Classical fixed-step RK4 on the n-body equations with G = 1. Massless
/// bodies feel but do not exert gravity. Radius and angular-rate drift are
/// measured against the t = 0 values.
/// Throws CollisionDuringIntegration when an interacting pair comes
/// within 1e-6.
IntegrationResult integrate_nbody(const std::vector<BodyState>& bodies,
                                  double t_end, double dt);

}  // namespace elp
