#include "elp/el_points.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "elp/lagrange.hpp"
#include "elp/verify.hpp"

namespace elp {

const char* to_string(ELClass k) {
  switch (k) {
    case ELClass::CollinearOuterLeft: return "CollinearOuterLeft";
    case ELClass::CollinearMiddle: return "CollinearMiddle";
    case ELClass::CollinearInner: return "CollinearInner";
    case ELClass::CollinearOuterRight: return "CollinearOuterRight";
    case ELClass::TriangularUpper: return "TriangularUpper";
    case ELClass::TriangularLower: return "TriangularLower";
  }
  return "Unknown";
}

namespace {

// Squared distances to the three body positions at t = 0; the common
// denominators of every expression in this module.
struct Separations {
  double d1, d2, d3;  // |X4-X1|^3, |X4-X2|^3, |X4-X3|^3
};

Separations separations(double r2, double r3, double r4, double r5) {
  const double s1 = r4 * r4 - 2.0 * r4 + r5 * r5 + 1.0;
  const double s2 = r2 * r2 + 2.0 * r2 * r4 + r4 * r4 + r5 * r5;
  const double s3 = r3 * r3 + 2.0 * r3 * r4 + r4 * r4 + r5 * r5;
  if (s1 <= 1e-24 || s2 <= 1e-24 || s3 <= 1e-24)
    throw Error(ErrCode::Collision, "(r4, r5) within 1e-12 of a body position");
  return {std::pow(s1, 1.5), std::pow(s2, 1.5), std::pow(s3, 1.5)};
}

}  // namespace

double eval_f1(const EulerSolution& sol, double r4, double r5) {
  const double r2 = sol.r2(), r3 = sol.r3();
  const auto [d1, d2, d3] = separations(r2, r3, r4, r5);
  return sol.m1 * r4 / d1 + sol.m2 * r4 / d2 + sol.m3 * r4 / d3 - r4 -
         sol.m1 / d1 + sol.m2 * r2 / d2 + sol.m3 * r3 / d3;
}

double eval_f2(const EulerSolution& sol, double r4, double r5) {
  const double r2 = sol.r2(), r3 = sol.r3();
  const auto [d1, d2, d3] = separations(r2, r3, r4, r5);
  return r5 * (-sol.m1 / d1 - sol.m2 / d2 - sol.m3 / d3 + 1.0);
}

double collinear_m3_centerfixed(double r4) {
  if (r4 == 1.0 || r4 == 0.0 || r4 == -1.0)
    throw Error(ErrCode::Pole, "r4 at a body position");
  if (r4 > 1.0) {
    return 4.0 * std::pow(r4 - 1.0, 3) * (r4 + 1.0) * (r4 + 1.0) *
           (r4 * r4 + r4 + 1.0) /
           (7.0 * std::pow(r4, 4) + 10.0 * r4 * r4 - 1.0);
  }
  if (r4 > 0.0) {
    return -4.0 * std::pow(r4 - 1.0, 3) * (r4 + 1.0) * (r4 + 1.0) *
           (r4 * r4 + r4 + 1.0) /
           (std::pow(r4, 4) + 16.0 * std::pow(r4, 3) - 2.0 * r4 * r4 + 1.0);
  }
  if (r4 > -1.0) {
    return 4.0 * (r4 - 1.0) * (r4 + 1.0) * (r4 * r4 - 1.0) *
           (std::pow(r4, 3) + 1.0) /
           (std::pow(r4, 4) - 16.0 * std::pow(r4, 3) - 2.0 * r4 * r4 + 1.0);
  }
  return -4.0 * (r4 - 1.0) * (r4 + 1.0) * (r4 * r4 - 1.0) *
         (std::pow(r4, 3) + 1.0) /
         (7.0 * std::pow(r4, 4) + 10.0 * r4 * r4 - 1.0);
}

double axis_m3_centerfixed(double r5) {
  const double b = std::pow(r5 * r5 + 1.0, 1.5);
  const double den = b - 8.0 * std::pow(r5, 3);
  if (std::abs(den) < 1e-12 * b)
    throw Error(ErrCode::Pole, "axis branch denominator vanished");
  return 4.0 * b * (1.0 - std::pow(r5, 3)) / den;
}

double collinear_m3_general(double r2, double r3, double r4) {
  if (!(r2 > 0.0))
    throw Error(ErrCode::OutOfRange, "general branch requires r2 > 0");
  if (r4 == 1.0 || r4 == -r2 || r4 == -r3)
    throw Error(ErrCode::Pole, "r4 at a body position");

  const double a = (r2 + 1.0) * (r2 + 1.0);
  const double u1 = (r4 - 1.0) * (r4 - 1.0);
  const double u2 = (r2 + r4) * (r2 + r4);
  const double u3 = (r3 + r4) * (r3 + r4);
  const double drr = (r2 - r3) * (r2 - r3);
  const double b = (r3 + 1.0) * (r3 + 1.0);

  double num, den, num_scale, den_scale;
  if (r4 < -r3) {
    num = -(r2 * a / u1 + a / u2 + r4);
    den = a / (u1 * drr) - a / (b * u2) + 1.0 / u3;
    num_scale = r2 * a / u1 + a / u2 + std::abs(r4);
    den_scale = a / (u1 * drr) + a / (b * u2) + 1.0 / u3;
  } else if (r4 < -r2) {
    num = r2 * a / u1 + a / u2 + r4;
    den = -a / (u1 * drr) + a / (b * u2) + 1.0 / u3;
    num_scale = r2 * a / u1 + a / u2 + std::abs(r4);
    den_scale = a / (u1 * drr) + a / (b * u2) + 1.0 / u3;
  } else if (r4 < 1.0) {
    num = r2 * a / u1 - a / u2 + r4;
    den = -a / (u1 * drr) - a / (b * u2) + 1.0 / u3;
    num_scale = r2 * a / u1 + a / u2 + std::abs(r4);
    den_scale = a / (u1 * drr) + a / (b * u2) + 1.0 / u3;
  } else {
    num = -r2 * a / u1 - a / u2 + r4;
    den = a / (u1 * drr) - a / (b * u2) + 1.0 / u3;
    num_scale = r2 * a / u1 + a / u2 + std::abs(r4);
    den_scale = a / (u1 * drr) + a / (b * u2) + 1.0 / u3;
  }
  (void)num_scale;
  if (std::abs(den) < 1e-13 * den_scale)
    throw Error(ErrCode::Pole, "collinear branch denominator vanished");
  return num / den;
}

double eval_q1(const EulerSolution& sol, double r4, double r5) {
  const auto [d1, d2, d3] = separations(sol.r2(), sol.r3(), r4, r5);
  return -sol.m1 / d1 - sol.m2 / d2 - sol.m3 / d3 + 1.0;
}

double eval_q2(const EulerSolution& sol, double r4, double r5) {
  const auto [d1, d2, d3] = separations(sol.r2(), sol.r3(), r4, r5);
  return -sol.m1 / d1 + sol.m2 * sol.r2() / d2 + sol.m3 * sol.r3() / d3;
}

double eval_q3(double r2, double r3, double r4, double r5) {
  const auto [d1, d2, d3] = separations(r2, r3, r4, r5);
  const double a = (r2 + 1.0) * (r2 + 1.0);
  const double b = (r3 + 1.0) * (r3 + 1.0);
  const double drr = (r2 - r3) * (r2 - r3);
  const double num = a / d2 + r2 * a / d1 - 1.0;
  const double t1 = -a / (b * d2), t2 = a / (drr * d1), t3 = 1.0 / d3;
  const double den = t1 + t2 + t3;
  if (std::abs(den) <
      1e-13 * (std::abs(t1) + std::abs(t2) + std::abs(t3)))
    throw Error(ErrCode::Pole, "q3 denominator vanished");
  return -num / den;
}

double eval_q4(double r2, double r3, double r4, double r5) {
  const auto [d1, d2, d3] = separations(r2, r3, r4, r5);
  const double a = (r2 + 1.0) * (r2 + 1.0);
  const double b = (r3 + 1.0) * (r3 + 1.0);
  const double drr = (r2 - r3) * (r2 - r3);
  const double num = r2 * a * (1.0 / d1 - 1.0 / d2);
  const double t1 = -r2 * a / (b * d2), t2 = -a / (drr * d1), t3 = r3 / d3;
  const double den = t1 + t2 + t3;
  if (std::abs(den) <
      1e-13 * (std::abs(t1) + std::abs(t2) + std::abs(t3)))
    throw Error(ErrCode::Pole, "q4 denominator vanished");
  return num / den;
}

namespace {

// Unique root of fn on [lo, hi]; every root found by the scan is surfaced.
double invert_branch(const ScalarFn& fn, double lo, double hi,
                     const char* label, const RootConfig& cfg) {
  const std::vector<double> roots = scan_roots(fn, lo, hi, cfg);
  if (roots.empty()) {
    std::ostringstream os;
    os << label << ": no sign change on [" << lo << ", " << hi
       << "] (m3 at or outside the open mass range, or numerical failure)";
    throw Error(ErrCode::RootNotFound, os.str());
  }
  if (roots.size() > 1) {
    std::ostringstream os;
    os << label << ": expected one root on [" << lo << ", " << hi
       << "], found " << roots.size() << " at";
    for (double r : roots) os << ' ' << r;
    throw Error(ErrCode::RootNotFound, os.str());
  }
  return roots.front();
}

// A few undamped Newton steps, keeping the best iterate; used to push a
// well-converged root down to the roundoff floor of the target function.
double polish_scalar(const ScalarFn& fn, double x) {
  double best_x = x;
  double best_v = std::abs(fn(x));
  for (int it = 0; it < 6; ++it) {
    const double v = fn(x);
    const double h = fd_step(x);
    const double d = (fn(x + h) - fn(x - h)) / (2.0 * h);
    if (d == 0.0 || !std::isfinite(d)) break;
    const double step = v / d;
    if (!std::isfinite(step)) break;
    x -= step;
    const double vn = std::abs(fn(x));
    if (std::isfinite(vn) && vn < best_v) {
      best_v = vn;
      best_x = x;
    }
    if (std::abs(step) <= 1e-16 * (1.0 + std::abs(x))) break;
  }
  return best_x;
}

Vec2 polish_planar(const PlanarFn& fn, Vec2 x) {
  Vec2 best_x = x;
  double best_v = fn(x).max_abs();
  for (int it = 0; it < 4; ++it) {
    const Vec2 r = fn(x);
    const double hx = fd_step(x.x), hy = fd_step(x.y);
    const Vec2 rxp = fn({x.x + hx, x.y}), rxm = fn({x.x - hx, x.y});
    const Vec2 ryp = fn({x.x, x.y + hy}), rym = fn({x.x, x.y - hy});
    const double j00 = (rxp.x - rxm.x) / (2.0 * hx);
    const double j10 = (rxp.y - rxm.y) / (2.0 * hx);
    const double j01 = (ryp.x - rym.x) / (2.0 * hy);
    const double j11 = (ryp.y - rym.y) / (2.0 * hy);
    const double det = j00 * j11 - j01 * j10;
    if (det == 0.0 || !std::isfinite(det)) break;
    x = {x.x + (-r.x * j11 + r.y * j01) / det,
         x.y + (r.x * j10 - r.y * j00) / det};
    const double vn = fn(x).max_abs();
    if (std::isfinite(vn) && vn < best_v) {
      best_v = vn;
      best_x = x;
    }
  }
  return best_x;
}

constexpr double kResidualGate = 1e-10;

ELPoint gated_point(const EulerSolution& sol, double r4, double r5,
                    ELClass klass) {
  const double res = accel_residual(sol, r4, r5).max_residual;
  if (!(res <= kResidualGate)) {
    std::ostringstream os;
    os << to_string(klass) << " candidate (" << r4 << ", " << r5
       << ") failed the equilibrium gate: residual " << res;
    throw Error(ErrCode::ResidualGateFailed, os.str());
  }
  return {r4, r5, klass, res};
}

}  // namespace

ELSet find_el_points(const EulerSolution& sol, const RootConfig& cfg) {
  const double r2 = sol.r2(), r3 = sol.r3(), m3 = sol.m3;
  const double mmax = (1.0 + r3) * (1.0 + r3);
  const double shrink = 1e-9;  // keep scan endpoints off the body positions

  const ScalarFn f1_axis = [&sol](double r4) { return eval_f1(sol, r4, 0.0); };

  ELSet out;
  out.solution = sol;

  if (r2 == 0.0) {
    const ScalarFn branch = [m3](double x) {
      return collinear_m3_centerfixed(x) - m3;
    };
    const double top = eval_f(1.0, cfg);  // upper end of the outer bracket
    double x1 = invert_branch(branch, shrink, 1.0 - shrink, "inner branch", cfg);
    double x2 = invert_branch(branch, 1.0 + shrink, top, "outer branch", cfg);
    x1 = polish_scalar(f1_axis, x1);
    x2 = polish_scalar(f1_axis, x2);
    const double x1m = polish_scalar(f1_axis, -x1);
    const double x2m = polish_scalar(f1_axis, -x2);

    const ScalarFn axis = [m3](double x) {
      return axis_m3_centerfixed(x) - m3;
    };
    double x3 = invert_branch(axis, 1.0, std::sqrt(3.0), "axis branch", cfg);
    // r4 = 0 is exact here; the residual to kill is q1.
    const ScalarFn q1_axis = [&sol](double r5) {
      return eval_q1(sol, 0.0, r5);
    };
    x3 = polish_scalar(q1_axis, x3);

    out.points = {gated_point(sol, x2m, 0.0, ELClass::CollinearOuterLeft),
                  gated_point(sol, x1m, 0.0, ELClass::CollinearMiddle),
                  gated_point(sol, x1, 0.0, ELClass::CollinearInner),
                  gated_point(sol, x2, 0.0, ELClass::CollinearOuterRight),
                  gated_point(sol, 0.0, x3, ELClass::TriangularUpper),
                  gated_point(sol, 0.0, -x3, ELClass::TriangularLower)};
    return out;
  }

  const ScalarFn branch = [r2, r3, m3](double x) {
    return collinear_m3_general(r2, r3, x) - m3;
  };
  const LagrangeSet lset = lagrange_points(r2, cfg);
  const double l3_of_r3 = -eval_f(r3, cfg);
  const double l2_of_r3 = r3 * eval_f(1.0 / r3, cfg);

  double xa = invert_branch(branch, l3_of_r3, -r3 - shrink, "outer-left", cfg);
  double xb = invert_branch(branch, -r3 + shrink, -r2 - shrink, "middle", cfg);
  double xc = invert_branch(branch, -r2 + shrink, lset.l1, "inner", cfg);
  double xd = invert_branch(branch, lset.l2, l2_of_r3, "outer-right", cfg);
  xa = polish_scalar(f1_axis, xa);
  xb = polish_scalar(f1_axis, xb);
  xc = polish_scalar(f1_axis, xc);
  xd = polish_scalar(f1_axis, xd);

  // Off-axis pair: seed between the equilateral points of the two
  // degenerate two-primary systems, interpolated by mass fraction.
  const double frac = m3 / mmax;
  const Vec2 l4_r2 = lset.l4;
  const Vec2 l4_r3{0.5 * (1.0 - r3), 0.5 * (1.0 + r3) * std::sqrt(3.0)};
  const Vec2 seed = l4_r2 + frac * (l4_r3 - l4_r2);
  const PlanarFn qsys = [r2, r3, m3](const Vec2& p) {
    return Vec2{eval_q3(r2, r3, p.x, p.y) - m3, eval_q4(r2, r3, p.x, p.y) - m3};
  };
  Vec2 tri = solve_planar(qsys, seed, cfg);
  const PlanarFn fsys = [&sol](const Vec2& p) {
    return Vec2{eval_f1(sol, p.x, p.y), eval_f2(sol, p.x, p.y)};
  };
  tri = polish_planar(fsys, tri);
  if (tri.y < 0.0) tri.y = -tri.y;

  out.points = {gated_point(sol, xa, 0.0, ELClass::CollinearOuterLeft),
                gated_point(sol, xb, 0.0, ELClass::CollinearMiddle),
                gated_point(sol, xc, 0.0, ELClass::CollinearInner),
                gated_point(sol, xd, 0.0, ELClass::CollinearOuterRight),
                gated_point(sol, tri.x, tri.y, ELClass::TriangularUpper),
                gated_point(sol, tri.x, -tri.y, ELClass::TriangularLower)};
  return out;
}

std::vector<CurveSample> q3q4_locus(double r2, double resolution,
                                    const RootConfig& cfg) {
  if (!(r2 > 0.0))
    throw Error(ErrCode::OutOfRange, "q3q4_locus requires r2 > 0");
  if (!(resolution > 0.0))
    throw Error(ErrCode::OutOfRange, "resolution must be positive");
  const double r3 = eval_f(r2, cfg);
  const double mmax = (1.0 + r3) * (1.0 + r3);

  // NaN (instead of a Pole throw) makes the tracer back away from the
  // denominator zero the locus runs into.
  const FieldFn field = [r2, r3](const Vec2& p) {
    try {
      return eval_q3(r2, r3, p.x, p.y) - eval_q4(r2, r3, p.x, p.y);
    } catch (const Error&) {
      return std::numeric_limits<double>::quiet_NaN();
    }
  };

  const double half = 2.0 * (r3 + 2.0);
  const Rect domain{-half, half, -half, half};
  const Vec2 seed{0.5 * (1.0 - r2), 0.5 * (1.0 + r2) * std::sqrt(3.0)};
  const int cap = 20000;

  TraceStop why = TraceStop::MaxPoints;
  std::vector<Vec2> path =
      trace_level_curve(field, seed, resolution, domain, cap, cfg, +1, &why);
  if (why != TraceStop::Closure) {
    const std::vector<Vec2> back =
        trace_level_curve(field, seed, resolution, domain, cap, cfg, -1);
    std::vector<Vec2> merged(back.rbegin(), back.rend());
    merged.insert(merged.end(), path.begin() + 1, path.end());
    path = std::move(merged);
  }

  std::vector<CurveSample> samples;
  samples.reserve(path.size());
  for (const Vec2& p : path) {
    const double m3v = eval_q3(r2, r3, p.x, p.y);
    samples.push_back({p.x, p.y, m3v, m3v >= 0.0 && m3v <= mmax});
  }
  return samples;
}

}  // namespace elp
