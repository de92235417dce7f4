#include "lionman/strategies.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "lionman/error.hpp"

namespace lionman {
namespace {

Point clamp_to_quadrant(const Point& p) {
  return {std::max(0.0, p.x), std::max(0.0, p.y)};
}

Point unit_toward(const Point& man, double angle) {
  return clamp_to_quadrant(man + Displacement{std::cos(angle), std::sin(angle)});
}

}  // namespace

std::string_view to_string(LionKind kind) {
  return kind == LionKind::Fixed ? "fcls" : "mcls";
}

LionKind parse_lion_kind(std::string_view name) {
  if (name == "fcls") return LionKind::Fixed;
  if (name == "mcls") return LionKind::Moving;
  throw Error(ErrorCode::UnknownStrategy, "unknown lion strategy '" + std::string(name) + "'");
}

LionStrategyState LionStrategyState::make(LionKind kind, const Point& lion0, const Point& man0) {
  LionStrategyState state{kind, std::nullopt};
  if (kind == LionKind::Fixed) state.fixed_center = compute_center(lion0, man0);
  return state;
}

Center LionStrategyState::center_for(const Point& lion, const Point& man_prev) const {
  if (kind == LionKind::Fixed) return *fixed_center;
  return compute_center(lion, man_prev);
}

LionDecision lion_step(const Center& center, const Point& lion, const Point& man_new) {
  std::vector<LineCircleHit> hits;
  try {
    hits = line_circle_intersections(lion, 1.0, center.pos, man_new);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::DegenerateLine) throw;
  }
  if (hits.empty()) {
    throw Error(ErrorCode::NoIntersection, "center-man line misses the lion's unit circle");
  }
  LionDecision decision;
  decision.center_used = center;
  if (hits.size() == 1) {
    decision.new_position = hits.front().point;
    return decision;
  }
  const Point& a = hits[0].point;
  const Point& b = hits[1].point;
  const bool keep_b = distance(b, center.pos) >= distance(a, center.pos);
  decision.new_position = keep_b ? b : a;
  decision.candidate_discarded = keep_b ? a : b;
  return decision;
}

LionDecision lion_respond(const LionStrategyState& state, const Point& lion,
                          const Point& man_prev, const Point& man_new) {
  if (within_capture(lion, man_new)) {
    LionDecision decision;
    decision.new_position = man_new;
    decision.captured = true;
    return decision;
  }
  return lion_step(state.center_for(lion, man_prev), lion, man_new);
}

Point man_orthogonal(const Point& man, const Point& lion) {
  Center c;
  try {
    c = compute_center(lion, man);
  } catch (const Error& e) {
    // Lion within rounding distance of the man: every move is captured, so
    // step straight away from the lion.
    if (e.code() != ErrorCode::CenterUndefined || lion == man) throw;
    const Displacement away = man - lion;
    const double len = norm(away);
    const Displacement u{away.dx / len, away.dy / len};
    return clamp_to_quadrant(man + max_quadrant_step(man, u) * u);
  }
  const Displacement toward = c.pos - man;
  const double len = norm(toward);
  const Displacement u{toward.dx / len, toward.dy / len};
  const Displacement ccw = rotate_ccw(u);
  const Displacement cw = -ccw;

  const double lambda_ccw = max_quadrant_step(man, ccw);
  const double lambda_cw = max_quadrant_step(man, cw);
  Displacement dir = ccw;
  double lambda = lambda_ccw;
  if (lambda_ccw < 1.0 && lambda_cw > lambda_ccw) {
    dir = cw;
    lambda = lambda_cw;
  }
  return clamp_to_quadrant(man + lambda * dir);
}

bool GreedyScore::better_than(const GreedyScore& o) const {
  if (survives != o.survives) return survives;
  if (next_m != o.next_m) return next_m > o.next_m;
  return gap > o.gap;
}

GreedyScore greedy_score(const Point& man, const Point& lion, const LionStrategyState& opponent,
                         const Point& candidate) {
  constexpr double kLost = -std::numeric_limits<double>::infinity();
  if (within_capture(lion, candidate)) return {false, kLost, 0.0};
  GreedyScore score{true, kLost, 0.0};
  try {
    const LionDecision reply = lion_respond(opponent, lion, man, candidate);
    score.gap = distance(candidate, reply.new_position);
    score.next_m = compute_center(reply.new_position, candidate).m;
  } catch (const Error&) {
    // Leaves next_m at -inf: the candidate is outside the strategy's domain.
  }
  return score;
}

Point man_greedy(const Point& man, const Point& lion, const LionStrategyState& opponent,
                 int angle_samples) {
  if (angle_samples < 8) throw Error(ErrorCode::Domain, "greedy man needs at least 8 angle samples");

  Point best = man;
  GreedyScore best_score = greedy_score(man, lion, opponent, man);
  std::optional<double> best_angle;

  auto consider = [&](double angle) {
    const Point cand = unit_toward(man, angle);
    const GreedyScore s = greedy_score(man, lion, opponent, cand);
    if (s.better_than(best_score)) {
      best = cand;
      best_score = s;
      best_angle = angle;
    }
  };

  const double spacing = 2.0 * std::numbers::pi / angle_samples;
  for (int k = 0; k < angle_samples; ++k) consider(k * spacing);

  if (best_angle) {
    const double around = *best_angle;
    for (int k = 0; k <= 16; ++k) {
      if (k == 8) continue;
      consider(around + spacing * (k / 8.0 - 1.0));
    }
  }
  return best_score.survives ? best : man;
}

Point man_random(const Point& man, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle_dist(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> radius_dist(0.0, 1.0);
  for (int attempt = 0; attempt < 64; ++attempt) {
    const double angle = angle_dist(rng);
    const double radius = radius_dist(rng);
    const Point p = man + Displacement{radius * std::cos(angle), radius * std::sin(angle)};
    if (in_quadrant(p)) return p;
  }
  return man;
}

namespace {

class OrthogonalMan final : public ManStrategy {
 public:
  Point next(const Point& man, const Point& lion, const LionStrategyState&, int) override {
    return man_orthogonal(man, lion);
  }
};

class GreedyMan final : public ManStrategy {
 public:
  explicit GreedyMan(int samples) : samples_(samples) {}
  Point next(const Point& man, const Point& lion, const LionStrategyState& opponent, int) override {
    return man_greedy(man, lion, opponent, samples_);
  }

 private:
  int samples_;
};

class RandomMan final : public ManStrategy {
 public:
  explicit RandomMan(std::uint64_t seed) : rng_(seed) {}
  Point next(const Point& man, const Point&, const LionStrategyState&, int) override {
    return man_random(man, rng_);
  }

 private:
  std::mt19937_64 rng_;
};

class ScriptedMan final : public ManStrategy {
 public:
  explicit ScriptedMan(std::vector<Point> script) : script_(std::move(script)) {}
  Point next(const Point& man, const Point&, const LionStrategyState&, int t) override {
    if (t >= 0 && static_cast<std::size_t>(t) < script_.size()) return script_[static_cast<std::size_t>(t)];
    return man;
  }

 private:
  std::vector<Point> script_;
};

}  // namespace

std::unique_ptr<ManStrategy> make_man_strategy(std::string_view name,
                                               const ManStrategyOptions& options) {
  if (name == "orthogonal") return std::make_unique<OrthogonalMan>();
  if (name == "greedy") return std::make_unique<GreedyMan>(options.greedy_samples);
  if (name == "random") return std::make_unique<RandomMan>(options.seed);
  if (name == "scripted") return std::make_unique<ScriptedMan>(options.script);
  throw Error(ErrorCode::UnknownStrategy, "unknown man strategy '" + std::string(name) + "'");
}

}  // namespace lionman
