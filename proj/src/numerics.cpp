#include "elp/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace elp {

const char* to_string(ErrCode code) {
  switch (code) {
    case ErrCode::NoSignChange: return "NoSignChange";
    case ErrCode::NonFinite: return "NonFinite";
    case ErrCode::MaxIterExceeded: return "MaxIterExceeded";
    case ErrCode::Singular: return "Singular";
    case ErrCode::SeedNotOnCurve: return "SeedNotOnCurve";
    case ErrCode::GradientVanished: return "GradientVanished";
    case ErrCode::BracketFailure: return "BracketFailure";
    case ErrCode::OutOfRange: return "OutOfRange";
    case ErrCode::MassOutOfRange: return "MassOutOfRange";
    case ErrCode::DegenerateFamily: return "DegenerateFamily";
    case ErrCode::Pole: return "Pole";
    case ErrCode::Collision: return "Collision";
    case ErrCode::RootNotFound: return "RootNotFound";
    case ErrCode::ResidualGateFailed: return "ResidualGateFailed";
    case ErrCode::CollisionDuringIntegration: return "CollisionDuringIntegration";
  }
  return "UnknownError";
}

double fd_step(double x) { return std::max(1e-7, 1e-7 * std::abs(x)); }

double solve_bracketed(const ScalarFn& func, double lo, double hi,
                       const RootConfig& cfg, const ScalarFn& dfunc) {
  if (!(lo < hi)) throw Error(ErrCode::OutOfRange, "bracket needs lo < hi");
  double a = lo, b = hi;
  double fa = func(a), fb = func(b);
  if (!std::isfinite(fa) || !std::isfinite(fb))
    throw Error(ErrCode::NonFinite, "function not finite at bracket endpoint");
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0.0) == (fb > 0.0)) {
    std::ostringstream os;
    os << "no sign change on [" << a << ", " << b << "]";
    throw Error(ErrCode::NoSignChange, os.str());
  }

  double x = 0.5 * (a + b);
  for (int iter = 0; iter < cfg.max_iter; ++iter) {
    const double fx = func(x);
    if (!std::isfinite(fx))
      throw Error(ErrCode::NonFinite, "function not finite inside bracket");
    if (std::abs(fx) <= cfg.abs_tol) return x;
    if ((fx > 0.0) == (fb > 0.0)) {
      b = x;
      fb = fx;
    } else {
      a = x;
      fa = fx;
    }
    if (b - a <= cfg.step_tol) return x;

    double deriv;
    if (dfunc) {
      deriv = dfunc(x);
    } else {
      const double h = fd_step(x);
      const double fp = func(x + h), fm = func(x - h);
      deriv = (std::isfinite(fp) && std::isfinite(fm)) ? (fp - fm) / (2.0 * h)
                                                       : 0.0;
    }
    const double cand = x - fx / deriv;
    // Newton only while it stays inside (and actually moves).
    if (std::isfinite(cand) && cand > a && cand < b && cand != x)
      x = cand;
    else
      x = 0.5 * (a + b);
  }
  throw Error(ErrCode::MaxIterExceeded, "bracketed solve did not converge");
}

std::vector<double> scan_roots(const ScalarFn& func, double lo, double hi,
                               const RootConfig& cfg) {
  if (!(lo < hi)) throw Error(ErrCode::OutOfRange, "scan needs lo < hi");
  const int n = std::max(2, cfg.scan_samples);
  std::vector<double> xs(n + 1), fs(n + 1);
  for (int i = 0; i <= n; ++i) {
    xs[i] = (i == n) ? hi : lo + (hi - lo) * static_cast<double>(i) / n;
    fs[i] = func(xs[i]);
  }

  std::vector<double> roots;
  for (int i = 0; i <= n; ++i)
    if (std::isfinite(fs[i]) && fs[i] == 0.0) roots.push_back(xs[i]);
  for (int i = 0; i < n; ++i) {
    if (!std::isfinite(fs[i]) || !std::isfinite(fs[i + 1])) continue;
    if (fs[i] == 0.0 || fs[i + 1] == 0.0) continue;
    if ((fs[i] > 0.0) != (fs[i + 1] > 0.0))
      roots.push_back(solve_bracketed(func, xs[i], xs[i + 1], cfg));
  }

  std::sort(roots.begin(), roots.end());
  std::vector<double> unique;
  for (double r : roots)
    if (unique.empty() || r - unique.back() > 10.0 * cfg.step_tol)
      unique.push_back(r);
  return unique;
}

namespace {

bool finite(const Vec2& v) {
  return std::isfinite(v.x) && std::isfinite(v.y);
}

}  // namespace

Vec2 solve_planar(const PlanarFn& residual, const Vec2& seed,
                  const RootConfig& cfg) {
  Vec2 x = seed;
  Vec2 r = residual(x);
  if (!finite(r))
    throw Error(ErrCode::NonFinite, "planar residual not finite at seed");

  for (int iter = 0; iter < cfg.max_iter; ++iter) {
    if (r.max_abs() <= cfg.abs_tol) return x;

    const double hx = fd_step(x.x), hy = fd_step(x.y);
    const Vec2 rxp = residual({x.x + hx, x.y});
    const Vec2 rxm = residual({x.x - hx, x.y});
    const Vec2 ryp = residual({x.x, x.y + hy});
    const Vec2 rym = residual({x.x, x.y - hy});
    if (!finite(rxp) || !finite(rxm) || !finite(ryp) || !finite(rym))
      throw Error(ErrCode::NonFinite, "residual not finite at Jacobian probe");
    const double j00 = (rxp.x - rxm.x) / (2.0 * hx);
    const double j10 = (rxp.y - rxm.y) / (2.0 * hx);
    const double j01 = (ryp.x - rym.x) / (2.0 * hy);
    const double j11 = (ryp.y - rym.y) / (2.0 * hy);

    const double det = j00 * j11 - j01 * j10;
    const double scale = std::abs(j00 * j11) + std::abs(j01 * j10);
    if (!std::isfinite(det) || scale == 0.0 || std::abs(det) < 1e-14 * scale)
      throw Error(ErrCode::Singular, "Jacobian numerically singular");

    const Vec2 step{(-r.x * j11 + r.y * j01) / det,
                    (r.x * j10 - r.y * j00) / det};

    bool accepted = false;
    double lambda = 1.0;
    Vec2 xn, rn;
    for (int k = 0; k <= 30; ++k) {
      xn = x + lambda * step;
      rn = residual(xn);
      if (finite(rn) && rn.max_abs() < r.max_abs()) {
        accepted = true;
        break;
      }
      lambda *= 0.5;
    }
    if (!accepted)
      throw Error(ErrCode::MaxIterExceeded, "planar line search stalled");
    x = xn;
    r = rn;
  }
  throw Error(ErrCode::MaxIterExceeded, "planar solve did not converge");
}

namespace {

struct CurveOps {
  const FieldFn& field;
  const RootConfig& cfg;

  Vec2 grad(const Vec2& p) const {
    const double hx = fd_step(p.x), hy = fd_step(p.y);
    return {(field({p.x + hx, p.y}) - field({p.x - hx, p.y})) / (2.0 * hx),
            (field({p.x, p.y + hy}) - field({p.x, p.y - hy})) / (2.0 * hy)};
  }

  // Newton along the gradient toward the zero level.
  bool correct(Vec2& p) const {
    Vec2 q = p;
    for (int k = 0; k < 40; ++k) {
      const double v = field(q);
      if (!std::isfinite(v)) return false;
      if (std::abs(v) <= cfg.abs_tol) {
        p = q;
        return true;
      }
      const Vec2 g = grad(q);
      const double n2 = g.dot(g);
      if (!(n2 > 1e-24)) return false;
      q = q - (v / n2) * g;
    }
    return false;
  }
};

}  // namespace

std::vector<Vec2> trace_level_curve(const FieldFn& field, const Vec2& seed,
                                    double step, const Rect& domain,
                                    int max_points, const RootConfig& cfg,
                                    int direction, TraceStop* stop_reason) {
  if (!(step > 0.0)) throw Error(ErrCode::OutOfRange, "step must be positive");
  const CurveOps ops{field, cfg};

  Vec2 start = seed;
  if (!ops.correct(start))
    throw Error(ErrCode::SeedNotOnCurve, "seed could not be projected onto the zero level");

  std::vector<Vec2> pts{start};
  Vec2 prev_dir{0.0, 0.0};
  bool have_dir = false;
  Vec2 p = start;
  TraceStop reason = TraceStop::MaxPoints;

  while (static_cast<int>(pts.size()) < max_points) {
    const Vec2 g = ops.grad(p);
    const double gn = g.norm();
    if (!std::isfinite(gn)) {
      reason = TraceStop::CorrectorStall;
      break;
    }
    if (gn < 1e-12)
      throw Error(ErrCode::GradientVanished,
                  "gradient vanished on the curve (possible singular point)");
    Vec2 t{g.y / gn, -g.x / gn};
    if (have_dir) {
      if (t.dot(prev_dir) < 0.0) t = -t;
    } else if (direction < 0) {
      t = -t;
    }

    Vec2 q;
    bool accepted = false;
    double h = step;
    for (int halve = 0; halve <= 12; ++halve) {
      q = p + h * t;
      if (ops.correct(q)) {
        accepted = true;
        break;
      }
      h *= 0.5;
    }
    if (!accepted) {
      reason = TraceStop::CorrectorStall;
      break;
    }
    if (!domain.contains(q)) {
      reason = TraceStop::Boundary;
      break;
    }
    if (pts.size() >= 10 && distance(q, pts.front()) < 0.5 * step) {
      reason = TraceStop::Closure;
      break;
    }
    const double moved = distance(q, p);
    if (moved > 0.0) {
      prev_dir = (1.0 / moved) * (q - p);
      have_dir = true;
    }
    pts.push_back(q);
    p = q;
  }

  if (stop_reason) *stop_reason = reason;
  return pts;
}

}  // namespace elp
