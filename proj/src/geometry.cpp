#include "lionman/geometry.hpp"

#include <algorithm>
#include <limits>

#include "lionman/error.hpp"

namespace lionman {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DegenerateLine: return "DegenerateLine";
    case ErrorCode::CenterUndefined: return "CenterUndefined";
    case ErrorCode::CoincidentPlayers: return "CoincidentPlayers";
    case ErrorCode::NoIntersection: return "NoIntersection";
    case ErrorCode::Domain: return "Domain";
    case ErrorCode::Internal: return "Internal";
    case ErrorCode::ManWinsTrivially: return "NonDominatingStart";
    case ErrorCode::TooFar: return "TooFar";
    case ErrorCode::OutOfQuadrant: return "OutOfQuadrant";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
    case ErrorCode::UnknownStrategy: return "UnknownStrategy";
    case ErrorCode::UnknownSuite: return "UnknownSuite";
    case ErrorCode::GameOver: return "GameOver";
    case ErrorCode::NotFound: return "NotFound";
  }
  return "Unknown";
}

double norm(const Displacement& d) { return std::hypot(d.dx, d.dy); }

double distance(const Point& a, const Point& b) { return norm(a - b); }

std::vector<LineCircleHit> line_circle_intersections(const Point& circle_center,
                                                     double radius,
                                                     const Point& line_a,
                                                     const Point& line_b) {
  const Displacement v = line_b - line_a;
  const double len = norm(v);
  if (!(len > 1e-12)) {
    throw Error(ErrorCode::DegenerateLine, "line points coincide");
  }
  const Displacement w = line_a - circle_center;
  const double a = dot(v, v);
  // radius^2 - (distance from center to line)^2, in length^2 units
  const double off = cross(v, w) / len;
  double disc = radius * radius - off * off;
  if (disc < 0.0 && disc >= -1e-12) disc = 0.0;
  if (disc < 0.0) return {};

  const double mid = -dot(w, v) / a;
  auto hit = [&](double s) { return LineCircleHit{line_a + s * v, s}; };
  if (disc == 0.0) return {hit(mid)};
  const double half = std::sqrt(disc) / len;
  return {hit(mid - half), hit(mid + half)};
}

double max_quadrant_step(const Point& from, const Displacement& step) {
  double lambda = 1.0;
  if (from.x + step.dx < 0.0) lambda = std::min(lambda, from.x / -step.dx);
  if (from.y + step.dy < 0.0) lambda = std::min(lambda, from.y / -step.dy);
  return std::clamp(lambda, 0.0, 1.0);
}

}  // namespace lionman
