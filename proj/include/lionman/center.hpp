#pragma once

#include "lionman/geometry.hpp"

namespace lionman {

/// Strategy center: a point on the ray from the man through the lion whose
/// distance from the lion equals its own largest coordinate.
struct Center {
  Point pos;
  double r = 0.0;  // max coordinate
  double m = 0.0;  // min coordinate

  static Center at(const Point& p);

  friend bool operator==(const Center&, const Center&) = default;
};

/// Center on the ray lion + eta * dir (eta > 0). Of the per-axis crossings of
/// eta * |dir| with a coordinate of the candidate, the larger eta is the only
/// one where that coordinate is the maximum. Throws Error(CenterUndefined)
/// if no such crossing exists.
Center center_from_ray(const Point& lion, const Displacement& dir);

/// Scale factor eta such that center_from_ray(lion, dir).pos == lion + eta * dir.
double center_eta(const Point& lion, const Displacement& dir);

/// center_from_ray(lion, lion - man). Throws Error(CoincidentPlayers) when
/// lion == man.
Center compute_center(const Point& lion, const Point& man);

}  // namespace lionman
