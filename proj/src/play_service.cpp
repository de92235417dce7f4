#include "lionman/play_service.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <mutex>

#include "lionman/bounds.hpp"
#include "lionman/error.hpp"

namespace lionman {

struct PlayService::Session {
  Session(std::string id_, LionKind kind, const Point& lion, const Point& man)
      : id(std::move(id_)),
        game(kind, lion, man),
        lion_start(lion),
        man_start(man),
        fcls_bound(lionman::fcls_bound(game.initial_center().m)),
        mcls_bound(lionman::mcls_bound(game.initial_center().m)) {}

  std::string id;
  Game game;
  Point lion_start;
  Point man_start;
  int fcls_bound;
  int mcls_bound;  // O(m0^2) to compute, so kept
  SessionStatus status = SessionStatus::Active;
  std::atomic<std::chrono::steady_clock::time_point> last_used;
  mutable std::shared_mutex mutex;
};

namespace {

int remaining_bound(const Game& game, const StepRecord& rec) {
  if (rec.captured) return 0;
  if (game.kind() == LionKind::Moving) {
    return mcls_bound(compute_center(rec.lion_pos, rec.man_pos).m);
  }
  // fixed center: |C|^2 - |L - C|^2 is the remaining budget of radius growth
  const Center& c = *game.lion_state().fixed_center;
  const Displacement d = rec.lion_pos - c.pos;
  const double budget = c.pos.x * c.pos.x + c.pos.y * c.pos.y - dot(d, d);
  return static_cast<int>(std::ceil(std::max(0.0, budget)));
}

MoveOutcome to_outcome(const Game& game, const StepRecord& rec) {
  MoveOutcome out;
  out.t = rec.t;
  out.man_pos = rec.man_pos;
  out.lion_pos = rec.lion_pos;
  out.captured = rec.captured;
  if (!rec.captured) out.center_used = rec.center;
  out.r_t = rec.r;
  out.m_t = rec.m;
  out.bound_remaining = remaining_bound(game, rec);
  return out;
}

}  // namespace

std::string_view to_string(SessionStatus status) {
  switch (status) {
    case SessionStatus::Active: return "Active";
    case SessionStatus::LionWon: return "LionWon";
    case SessionStatus::Aborted: return "Aborted";
  }
  return "Unknown";
}

PlayService::PlayService(std::chrono::seconds idle_timeout, Clock clock)
    : idle_timeout_(idle_timeout), clock_(std::move(clock)), id_rng_(std::random_device{}()) {}

std::string PlayService::new_id() {
  // caller holds the unique registry lock
  for (;;) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(id_rng_()));
    if (!sessions_.contains(buf)) return buf;
  }
}

SessionSummary PlayService::create_session(std::string_view lion_strategy, const Point& lion_start,
                                           const Point& man_start) {
  const LionKind kind = parse_lion_kind(lion_strategy);
  evict_idle();
  std::unique_lock lock(mutex_);
  auto session = std::make_shared<Session>(new_id(), kind, lion_start, man_start);
  session->last_used = clock_();
  sessions_.emplace(session->id, session);
  lock.unlock();
  return get_session(session->id).summary;
}

std::shared_ptr<PlayService::Session> PlayService::find(const std::string& id) {
  std::shared_lock lock(mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw Error(ErrorCode::NotFound, "no session '" + id + "'");
  return it->second;
}

MoveOutcome PlayService::man_move(const std::string& id, const Point& to) {
  auto s = find(id);
  std::unique_lock lock(s->mutex);
  s->last_used = clock_();
  if (s->status != SessionStatus::Active) throw Error(ErrorCode::GameOver, "game is over");
  try {
    const StepRecord& rec = s->game.advance(to);
    if (rec.captured) s->status = SessionStatus::LionWon;
    return to_outcome(s->game, rec);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InvariantViolation) s->status = SessionStatus::Aborted;
    throw;
  }
}

MoveOutcome PlayService::preview(const std::string& id, const Point& to) {
  auto s = find(id);
  std::shared_lock lock(s->mutex);
  s->last_used = clock_();
  if (s->status != SessionStatus::Active) throw Error(ErrorCode::GameOver, "game is over");
  return to_outcome(s->game, s->game.preview(to));
}

SessionSnapshot PlayService::get_session(const std::string& id) {
  auto s = find(id);
  std::shared_lock lock(s->mutex);
  s->last_used = clock_();
  const Game& g = s->game;
  SessionSnapshot snap;
  snap.summary.id = s->id;
  snap.summary.kind = g.kind();
  snap.summary.status = s->status;
  snap.summary.lion_start = s->lion_start;
  snap.summary.man_start = s->man_start;
  snap.summary.lion = g.lion();
  snap.summary.man = g.man();
  snap.summary.initial_center = g.initial_center();
  snap.summary.fcls_bound = s->fcls_bound;
  snap.summary.mcls_bound = s->mcls_bound;
  snap.summary.moves = static_cast<int>(g.steps().size());
  snap.steps = g.steps();
  return snap;
}

void PlayService::delete_session(const std::string& id) {
  std::unique_lock lock(mutex_);
  if (sessions_.erase(id) == 0) throw Error(ErrorCode::NotFound, "no session '" + id + "'");
}

std::size_t PlayService::evict_idle() {
  const auto now = clock_();
  std::unique_lock lock(mutex_);
  return std::erase_if(sessions_, [&](const auto& kv) {
    std::shared_lock session_lock(kv.second->mutex, std::try_to_lock);
    // sessions busy right now are in use, not idle
    if (!session_lock.owns_lock()) return false;
    return now - kv.second->last_used.load() > idle_timeout_;
  });
}

std::size_t PlayService::size() const {
  std::shared_lock lock(mutex_);
  return sessions_.size();
}

}  // namespace lionman
