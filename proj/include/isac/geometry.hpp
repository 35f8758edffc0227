#ifndef ISAC_GEOMETRY_HPP
#define ISAC_GEOMETRY_HPP

#include <cmath>

namespace isac {

/// Horizontal coordinate (m) or horizontal velocity (m/s).
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  constexpr Vec2& operator+=(const Vec2& o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr bool operator==(const Vec2&) const = default;

  constexpr double dot(const Vec2& o) const { return x * o.x + y * o.y; }
  constexpr double squaredNorm() const { return x * x + y * y; }
  double norm() const { return std::hypot(x, y); }
  bool isFinite() const { return std::isfinite(x) && std::isfinite(y); }
};

constexpr Vec2 operator*(double s, const Vec2& v) { return v * s; }

inline double distance(const Vec2& a, const Vec2& b) { return (a - b).norm(); }

/// Axis-aligned operating rectangle [0, lx] x [0, ly].
struct Region {
  double lx = 1000.0;
  double ly = 1000.0;

  bool contains(const Vec2& p, double tol = 0.0) const {
    return p.x >= -tol && p.x <= lx + tol && p.y >= -tol && p.y <= ly + tol;
  }
  Vec2 clamp(const Vec2& p) const {
    return {std::fmin(std::fmax(p.x, 0.0), lx), std::fmin(std::fmax(p.y, 0.0), ly)};
  }
  bool operator==(const Region&) const = default;

  /// Distance from an interior point to the nearest edge.
  double distanceToBoundary(const Vec2& p) const {
    return std::fmin(std::fmin(p.x, lx - p.x), std::fmin(p.y, ly - p.y));
  }
};

}  // namespace isac

#endif  // ISAC_GEOMETRY_HPP
