#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "lionman/center.hpp"
#include "lionman/geometry.hpp"

namespace lionman {

enum class LionKind { Fixed, Moving };

std::string_view to_string(LionKind kind);
LionKind parse_lion_kind(std::string_view name);  // "fcls" | "mcls"

struct LionDecision {
  Point new_position;
  bool captured = false;
  std::optional<Center> center_used;           // absent on capture
  std::optional<Point> candidate_discarded;    // absent on capture or tangency
};

/// FCLS keeps the center computed from the starting positions; MCLS
/// recomputes it from (lion, man) before each lion move.
struct LionStrategyState {
  LionKind kind = LionKind::Moving;
  std::optional<Center> fixed_center;

  static LionStrategyState make(LionKind kind, const Point& lion0, const Point& man0);

  /// Center the lion uses at the start of its turn.
  Center center_for(const Point& lion, const Point& man_prev) const;
};

/// Capture reach. Matches the slack a man move is allowed (1 + 1e-12), so a
/// man cannot escape through rounding of his own step length.
inline bool within_capture(const Point& lion, const Point& man) {
  return distance(lion, man) <= 1.0 + kMoveTol;
}

/// Non-capture move: of the two points on the line (center, man_new) at unit
/// distance from the lion, take the one farther from the center.
/// Throws Error(NoIntersection) if the line misses the unit circle.
LionDecision lion_step(const Center& center, const Point& lion, const Point& man_new);

/// Full lion rule: capture when the man is within unit distance, otherwise
/// lion_step with the strategy's center.
LionDecision lion_respond(const LionStrategyState& state, const Point& lion,
                          const Point& man_prev, const Point& man_new);

// Man strategies --------------------------------------------------------

/// Unit step perpendicular to the man-center line. The counterclockwise
/// rotation of (center - man) is preferred; a direction leaving the quadrant
/// loses to one that stays. If both leave, the step is clipped to the wall
/// along the direction that allows the longer step.
Point man_orthogonal(const Point& man, const Point& lion);

/// Greedy one-ply adversary. Scores each candidate destination by
/// (survives, m of the lion's next center, distance to the lion after its
/// reply) lexicographically.
Point man_greedy(const Point& man, const Point& lion, const LionStrategyState& opponent,
                 int angle_samples);

struct GreedyScore {
  bool survives = false;
  double next_m = 0.0;
  double gap = 0.0;

  bool better_than(const GreedyScore& o) const;
};

GreedyScore greedy_score(const Point& man, const Point& lion, const LionStrategyState& opponent,
                         const Point& candidate);

/// Uniform angle and uniform radius in [0, 1]; rejection-sampled into the
/// quadrant (at most 64 attempts, then stay put).
Point man_random(const Point& man, std::mt19937_64& rng);

/// Man move policy used by the engine. `t` is the zero-based round index.
class ManStrategy {
 public:
  virtual ~ManStrategy() = default;
  virtual Point next(const Point& man, const Point& lion, const LionStrategyState& opponent,
                     int t) = 0;
};

struct ManStrategyOptions {
  std::uint64_t seed = 0;
  int greedy_samples = 360;
  std::vector<Point> script;  // one destination per round; stays put afterwards
};

/// "orthogonal" | "greedy" | "random" | "scripted".
std::unique_ptr<ManStrategy> make_man_strategy(std::string_view name,
                                               const ManStrategyOptions& options);

}  // namespace lionman
