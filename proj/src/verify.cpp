#include "elp/verify.hpp"

#include <cmath>
#include <sstream>

#include "elp/error.hpp"

namespace elp {

ResidualReport make_report(
    std::vector<std::pair<std::string, double>> entries) {
  ResidualReport rep;
  rep.eq_residuals = std::move(entries);
  rep.max_residual = 0.0;
  for (const auto& [name, value] : rep.eq_residuals)
    rep.max_residual = std::max(rep.max_residual, std::abs(value));
  return rep;
}

ResidualReport accel_residual(const EulerSolution& sol, double r4, double r5) {
  const Vec2 probe{r4, r5};
  const std::array<Vec2, 3> xs = positions_at(sol, 0.0);
  const std::array<double, 3> ms{sol.m1, sol.m2, sol.m3};

  Vec2 acc{0.0, 0.0};
  for (int i = 0; i < 3; ++i) {
    if (ms[i] == 0.0) continue;  // massless: not a primary
    const Vec2 d = xs[i] - probe;
    const double r = d.norm();
    if (r <= 1e-12) {
      std::ostringstream os;
      os << "probe coincides with body " << i + 1;
      throw Error(ErrCode::Collision, os.str());
    }
    acc += (ms[i] / (r * r * r)) * d;
  }
  // Uniform rotation at unit rate has acceleration -X.
  const Vec2 res = acc + probe;
  return make_report({{"accel_x", res.x}, {"accel_y", res.y}});
}

ResidualReport check_es_equations(const EulerSolution& sol) {
  const double r2 = sol.r2(), r3 = sol.r3();
  const double a = (r2 + 1.0) * (r2 + 1.0);
  const double b = (r3 + 1.0) * (r3 + 1.0);
  const double d = (r2 - r3) * (r2 - r3);
  const double e1 = sol.m2 / a + (sol.m3 - b) / b;
  const double e2 = (r2 * a - sol.m1) / a + sol.m3 / d;
  const double e3 = (r3 * b - sol.m1) / b - sol.m2 / d;
  return make_report({{"eq1", e1}, {"eq2", e2}, {"eq3", e3}});
}

namespace {

using State = std::vector<BodyState>;

void accelerations(const State& s, std::vector<Vec2>& out) {
  const std::size_t n = s.size();
  out.assign(n, Vec2{0.0, 0.0});
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i || s[j].mass == 0.0) continue;
      const Vec2 d = s[j].position - s[i].position;
      const double r = d.norm();
      out[i] += (s[j].mass / (r * r * r)) * d;
    }
  }
}

void check_collisions(const State& s, double t) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      if (s[i].mass == 0.0 && s[j].mass == 0.0) continue;
      if (distance(s[i].position, s[j].position) < 1e-6) {
        std::ostringstream os;
        os << "bodies " << i + 1 << " and " << j + 1 << " within 1e-6 at t=" << t;
        throw Error(ErrCode::CollisionDuringIntegration, os.str());
      }
    }
  }
}

double massive_energy(const State& s) {
  double e = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i].mass == 0.0) continue;
    e += 0.5 * s[i].mass * s[i].velocity.dot(s[i].velocity);
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      if (s[j].mass == 0.0) continue;
      e -= s[i].mass * s[j].mass / distance(s[i].position, s[j].position);
    }
  }
  return e;
}

Vec2 massive_momentum(const State& s) {
  Vec2 p{0.0, 0.0};
  for (const auto& b : s)
    if (b.mass != 0.0) p += b.mass * b.velocity;
  return p;
}

double angular_rate(const BodyState& b) {
  const double r2 = b.position.dot(b.position);
  return (b.position.x * b.velocity.y - b.position.y * b.velocity.x) / r2;
}

}  // namespace

IntegrationResult integrate_nbody(const std::vector<BodyState>& bodies,
                                  double t_end, double dt) {
  if (!(dt > 0.0)) throw Error(ErrCode::OutOfRange, "dt must be positive");
  const std::size_t n = bodies.size();
  State s = bodies;
  check_collisions(s, 0.0);

  IntegrationResult res;
  res.radius_drift.assign(n, 0.0);
  res.angular_rate_drift.assign(n, 0.0);

  std::vector<double> r0(n), w0(n);
  std::vector<bool> at_origin(n);
  for (std::size_t i = 0; i < n; ++i) {
    r0[i] = s[i].position.norm();
    at_origin[i] = r0[i] < 1e-9;
    w0[i] = at_origin[i] ? 0.0 : angular_rate(s[i]);
  }
  const double e0 = massive_energy(s);
  const Vec2 p0 = massive_momentum(s);

  const long steps = std::lround(t_end / dt);
  res.times.reserve(steps + 1);
  res.states.reserve(steps + 1);
  res.times.push_back(0.0);
  res.states.push_back(s);

  std::vector<Vec2> a1, a2, a3, a4;
  State s2(n), s3(n), s4(n);

  for (long step = 1; step <= steps; ++step) {
    accelerations(s, a1);
    for (std::size_t i = 0; i < n; ++i) {
      s2[i].mass = s[i].mass;
      s2[i].position = s[i].position + (0.5 * dt) * s[i].velocity;
      s2[i].velocity = s[i].velocity + (0.5 * dt) * a1[i];
    }
    accelerations(s2, a2);
    for (std::size_t i = 0; i < n; ++i) {
      s3[i].mass = s[i].mass;
      s3[i].position = s[i].position + (0.5 * dt) * s2[i].velocity;
      s3[i].velocity = s[i].velocity + (0.5 * dt) * a2[i];
    }
    accelerations(s3, a3);
    for (std::size_t i = 0; i < n; ++i) {
      s4[i].mass = s[i].mass;
      s4[i].position = s[i].position + dt * s3[i].velocity;
      s4[i].velocity = s[i].velocity + dt * a3[i];
    }
    accelerations(s4, a4);
    for (std::size_t i = 0; i < n; ++i) {
      s[i].position += (dt / 6.0) * (s[i].velocity + 2.0 * s2[i].velocity +
                                     2.0 * s3[i].velocity + s4[i].velocity);
      s[i].velocity += (dt / 6.0) *
                       (a1[i] + 2.0 * a2[i] + 2.0 * a3[i] + a4[i]);
    }

    const double t = dt * static_cast<double>(step);
    check_collisions(s, t);
    res.times.push_back(t);
    res.states.push_back(s);

    for (std::size_t i = 0; i < n; ++i) {
      res.radius_drift[i] = std::max(res.radius_drift[i],
                                     std::abs(s[i].position.norm() - r0[i]));
      if (!at_origin[i])
        res.angular_rate_drift[i] = std::max(
            res.angular_rate_drift[i], std::abs(angular_rate(s[i]) - w0[i]));
    }
    const Vec2 dp = massive_momentum(s) - p0;
    res.momentum_drift = std::max(res.momentum_drift, dp.max_abs());
    const double de =
        std::abs(massive_energy(s) - e0) / std::max(std::abs(e0), 1e-300);
    res.energy_drift_rel = std::max(res.energy_drift_rel, de);
  }

  for (std::size_t i = 0; i < n; ++i) {
    res.max_radius_drift = std::max(res.max_radius_drift, res.radius_drift[i]);
    res.max_angular_rate_drift =
        std::max(res.max_angular_rate_drift, res.angular_rate_drift[i]);
  }
  res.step_too_large = res.energy_drift_rel > 1e-6;
  return res;
}

}  // namespace elp
