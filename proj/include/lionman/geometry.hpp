#pragma once

#include <cmath>
#include <vector>

namespace lionman {

// Absolute tolerance at game scale (coordinates up to ~1e3).
inline constexpr double kTol = 1e-9;
// Slack allowed on the length of a man move.
inline constexpr double kMoveTol = 1e-12;

struct Displacement {
  double dx = 0.0;
  double dy = 0.0;

  friend bool operator==(const Displacement&, const Displacement&) = default;
};

/// A position in the closed non-negative quadrant, in move-radius units.
/// Quadrant membership is enforced by the engine, not by construction, so
/// intermediate geometry may hold points outside it.
struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

inline Displacement operator-(const Point& a, const Point& b) {
  return {a.x - b.x, a.y - b.y};
}
inline Point operator+(const Point& p, const Displacement& d) {
  return {p.x + d.dx, p.y + d.dy};
}
inline Point operator-(const Point& p, const Displacement& d) {
  return {p.x - d.dx, p.y - d.dy};
}
inline Displacement operator*(double k, const Displacement& d) {
  return {k * d.dx, k * d.dy};
}
inline Displacement operator-(const Displacement& d) { return {-d.dx, -d.dy}; }

inline double dot(const Displacement& a, const Displacement& b) {
  return a.dx * b.dx + a.dy * b.dy;
}
inline double cross(const Displacement& a, const Displacement& b) {
  return a.dx * b.dy - a.dy * b.dx;
}

double norm(const Displacement& d);
double distance(const Point& a, const Point& b);

inline bool is_finite(const Point& p) {
  return std::isfinite(p.x) && std::isfinite(p.y);
}
inline bool in_quadrant(const Point& p) {
  return is_finite(p) && p.x >= 0.0 && p.y >= 0.0;
}

/// Rotation by +90 degrees (counterclockwise).
inline Displacement rotate_ccw(const Displacement& d) { return {-d.dy, d.dx}; }

struct LineCircleHit {
  Point point;
  double s = 0.0;  // line parameter: point = line_a + s * (line_b - line_a)
};

/// Intersections of the circle with the infinite line through line_a and
/// line_b, sorted by line parameter. A discriminant in [-1e-12, 0) counts as
/// tangency. Throws Error(DegenerateLine) when the two line points coincide.
std::vector<LineCircleHit> line_circle_intersections(const Point& circle_center,
                                                     double radius,
                                                     const Point& line_a,
                                                     const Point& line_b);

/// Largest lambda in [0, 1] with from + lambda * step inside the quadrant.
/// Assumes `from` is already in the quadrant.
double max_quadrant_step(const Point& from, const Displacement& step);

}  // namespace lionman
