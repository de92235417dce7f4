#pragma once

#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include "lionman/engine.hpp"

namespace lionman {

enum class SessionStatus { Active, LionWon, Aborted };
std::string_view to_string(SessionStatus status);

struct SessionSummary {
  std::string id;
  LionKind kind = LionKind::Moving;
  SessionStatus status = SessionStatus::Active;
  Point lion_start;
  Point man_start;
  Point lion;
  Point man;
  Center initial_center;
  int fcls_bound = 0;
  int mcls_bound = 0;
  int moves = 0;
};

struct MoveOutcome {
  int t = 0;
  Point man_pos;
  Point lion_pos;
  std::optional<Center> center_used;  // absent on capture
  bool captured = false;
  double r_t = 0.0;
  double m_t = 0.0;
  int bound_remaining = 0;  // informational countdown from the new position

  friend bool operator==(const MoveOutcome&, const MoveOutcome&) = default;
};

struct SessionSnapshot {
  SessionSummary summary;
  std::vector<StepRecord> steps;
};

/// In-memory game sessions where a client plays the man against a live lion.
/// Sessions idle longer than the timeout are evicted; nothing is persisted.
/// Mutations of one session are serialized; previews and reads may run
/// concurrently with each other.
class PlayService {
 public:
  using Clock = std::function<std::chrono::steady_clock::time_point()>;

  explicit PlayService(std::chrono::seconds idle_timeout = std::chrono::hours(1),
                       Clock clock = &std::chrono::steady_clock::now);

  /// Throws Error(ManWinsTrivially) for non-dominating starts,
  /// Error(UnknownStrategy) for an unknown lion.
  SessionSummary create_session(std::string_view lion_strategy, const Point& lion_start,
                                const Point& man_start);

  /// Throws Error(NotFound | GameOver | TooFar | OutOfQuadrant) with the
  /// session unchanged, or Error(InvariantViolation) (session aborted).
  MoveOutcome man_move(const std::string& id, const Point& to);

  /// Outcome man_move would return, without touching the session.
  MoveOutcome preview(const std::string& id, const Point& to);

  SessionSnapshot get_session(const std::string& id);

  /// Throws Error(NotFound).
  void delete_session(const std::string& id);

  /// Removes sessions idle past the timeout; returns how many.
  std::size_t evict_idle();

  std::size_t size() const;

 private:
  struct Session;

  std::shared_ptr<Session> find(const std::string& id);
  std::string new_id();

  std::chrono::seconds idle_timeout_;
  Clock clock_;
  mutable std::shared_mutex mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::mt19937_64 id_rng_;
};

}  // namespace lionman
