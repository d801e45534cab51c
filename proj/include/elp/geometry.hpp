#pragma once

#include <cmath>

namespace elp {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator-() const { return {-x, -y}; }
  Vec2& operator+=(const Vec2& o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  double dot(const Vec2& o) const { return x * o.x + y * o.y; }
  double norm() const { return std::hypot(x, y); }
  double max_abs() const { return std::max(std::abs(x), std::abs(y)); }
};

inline Vec2 operator*(double s, const Vec2& v) { return {s * v.x, s * v.y}; }

inline double distance(const Vec2& a, const Vec2& b) { return (a - b).norm(); }

/// Axis-aligned rectangle, closed on all sides.
struct Rect {
  double xmin, xmax, ymin, ymax;

  bool contains(const Vec2& p) const {
    return p.x >= xmin && p.x <= xmax && p.y >= ymin && p.y <= ymax;
  }
};

}  // namespace elp
