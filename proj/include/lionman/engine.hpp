#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "lionman/center.hpp"
#include "lionman/geometry.hpp"
#include "lionman/strategies.hpp"

namespace lionman {

enum class MoveViolation { TooFar, OutOfQuadrant };

/// std::nullopt when the move is legal: length <= 1 + 1e-12 and the
/// destination lies in the quadrant.
std::optional<MoveViolation> validate_move(const Point& from, const Point& to);

struct GameConfig {
  Point lion_start;
  Point man_start;
  std::string lion_strategy = "mcls";
  std::string man_strategy = "orthogonal";
  std::optional<int> max_steps;  // default: fcls_bound(m0) + 8
  std::uint64_t seed = 0;
  std::vector<Point> script;     // for the scripted man
  int greedy_samples = 360;
  bool enforce_invariants = true;
};

/// Round t: the man moves M_t -> M_{t+1}, then the lion L_t -> L_{t+1}.
/// `center` is C_t (the strategy's center at the start of the lion's turn),
/// r and m its max and min coordinates, r_tilde = |L_{t+1} - C_t|.
struct StepRecord {
  int t = 0;
  Point man_pos;
  Point lion_pos;
  std::optional<Center> center;
  double r = 0.0;
  double m = 0.0;
  double r_tilde = 0.0;
  bool captured = false;

  friend bool operator==(const StepRecord&, const StepRecord&) = default;
};

enum class OutcomeKind { Captured, StepLimit, InvariantViolation };

struct Outcome {
  OutcomeKind kind = OutcomeKind::StepLimit;
  int lion_moves = 0;
  std::string detail;
};

struct Trace {
  GameConfig config;
  std::vector<StepRecord> steps;
  Outcome outcome;
};

/// One measured inequality. slack >= 0 (or > 0 for strict ones) means pass.
struct InequalityCheck {
  std::string id;
  int t = 0;
  double slack = 0.0;
  bool pass = true;
};

/// Stepwise checks for one round: radius growth and
/// positivity, and for the moving center also the one-move capture rule,
/// monotone centers, and the per-step decay of m.
void check_round(LionKind kind, const Point& lion_before, const StepRecord& rec,
                 const std::optional<Center>& prev_center, double tol,
                 std::vector<InequalityCheck>& out);

/// check_round over a whole trace.
std::vector<InequalityCheck> audit_trace(const Trace& trace, double tol);

/// Alternating-move state machine shared by `play` and the play service.
class Game {
 public:
  /// Throws Error(ManWinsTrivially) unless the lion strictly dominates the
  /// man componentwise.
  Game(LionKind kind, const Point& lion_start, const Point& man_start,
       bool enforce_invariants = true);

  /// Validates the man move, lets the lion reply, and appends the record.
  /// Throws Error(TooFar | OutOfQuadrant) without changing state, Error(GameOver)
  /// after capture, Error(InvariantViolation) when the lion's reply breaks a
  /// stepwise guarantee (the game is then finished).
  const StepRecord& advance(const Point& man_new);

  /// Same computation as advance, without mutating the game.
  StepRecord preview(const Point& man_new) const;

  LionKind kind() const { return lion_state_.kind; }
  const LionStrategyState& lion_state() const { return lion_state_; }
  const Point& lion() const { return lion_; }
  const Point& man() const { return man_; }
  const Center& initial_center() const { return initial_center_; }
  const std::vector<StepRecord>& steps() const { return steps_; }
  bool finished() const { return finished_; }
  bool captured() const { return !steps_.empty() && steps_.back().captured; }

 private:
  StepRecord compute_step(const Point& man_new) const;
  void enforce(const StepRecord& rec) const;

  LionStrategyState lion_state_;
  Point lion_;
  Point man_;
  Center initial_center_;
  std::vector<StepRecord> steps_;
  bool enforce_invariants_ = true;
  bool finished_ = false;
};

/// min coordinate of the initial center.
double initial_m0(const Point& lion_start, const Point& man_start);

/// Capture-time bound for the configured lion: fcls_bound or mcls_bound of m0.
int capture_bound(LionKind kind, double m0);

Trace play(const GameConfig& config);

/// Plays independent games on up to `threads` workers (0: hardware
/// concurrency). Results keep the input order.
std::vector<Trace> play_many(const std::vector<GameConfig>& configs, unsigned threads = 0);

/// Per-game seed derived from (seed, game index).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

struct Start {
  Point lion;
  Point man;
};

/// Random start with the lion strictly dominating the man and the initial
/// center's min coordinate at most max_m0.
Start random_dominating_start(std::mt19937_64& rng, double max_m0 = 20.0);

/// CSV with header t,man_x,man_y,lion_x,lion_y,center_x,center_y,r,m,r_tilde,captured.
std::string trace_csv(const Trace& trace);
std::string trace_csv(const std::vector<StepRecord>& steps);

}  // namespace lionman
