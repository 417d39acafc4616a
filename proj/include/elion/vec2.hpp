#pragma once

#include <cmath>

namespace elion {

// Transverse-plane vector in atomic units.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator-() const { return {-x, -y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  constexpr double dot(Vec2 o) const { return x * o.x + y * o.y; }
  double norm() const { return std::hypot(x, y); }

  friend constexpr Vec2 operator*(double s, Vec2 v) { return v * s; }
  friend constexpr bool operator==(Vec2, Vec2) = default;
};

}  // namespace elion
