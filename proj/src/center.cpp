#include "lionman/center.hpp"

#include <algorithm>
#include <cmath>

#include "lionman/error.hpp"

namespace lionman {

Center Center::at(const Point& p) {
  return Center{p, std::max(p.x, p.y), std::min(p.x, p.y)};
}

double center_eta(const Point& lion, const Displacement& dir) {
  const double len = norm(dir);
  if (!(len > 1e-12)) {
    throw Error(ErrorCode::CenterUndefined, "zero direction for center ray");
  }
  // eta * len == lion.x + eta * dir.x  <=>  eta = lion.x / (len - dir.x)
  double eta = 0.0;
  const double den_x = len - dir.dx;
  const double den_y = len - dir.dy;
  if (den_x > 0.0) eta = std::max(eta, lion.x / den_x);
  if (den_y > 0.0) eta = std::max(eta, lion.y / den_y);
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw Error(ErrorCode::CenterUndefined, "no positive eta on center ray");
  }
  const Point c = lion + eta * dir;
  const double gap = eta * len - std::max(c.x, c.y);
  if (std::abs(gap) > kTol * std::max(1.0, eta * len)) {
    throw Error(ErrorCode::CenterUndefined, "center ray misses max-coordinate condition");
  }
  return eta;
}

Center center_from_ray(const Point& lion, const Displacement& dir) {
  return Center::at(lion + center_eta(lion, dir) * dir);
}

Center compute_center(const Point& lion, const Point& man) {
  if (lion == man) {
    throw Error(ErrorCode::CoincidentPlayers, "lion and man coincide");
  }
  // The ray is scale invariant; normalizing keeps nearly coincident players
  // above the degeneracy threshold.
  const Displacement d = lion - man;
  const double len = norm(d);
  return center_from_ray(lion, Displacement{d.dx / len, d.dy / len});
}

}  // namespace lionman
