#include "lionman/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "lionman/bounds.hpp"
#include "lionman/error.hpp"
#include "lionman/format.hpp"

namespace lionman {
namespace {

double sq(double v) { return v * v; }
double norm2(const Displacement& d) { return dot(d, d); }

std::string describe(const InequalityCheck& c) {
  return c.id + " failed at t=" + std::to_string(c.t) + " slack=" + format_real(c.slack);
}

}  // namespace

std::optional<MoveViolation> validate_move(const Point& from, const Point& to) {
  if (!is_finite(to) || distance(from, to) > 1.0 + kMoveTol) return MoveViolation::TooFar;
  if (!in_quadrant(to)) return MoveViolation::OutOfQuadrant;
  return std::nullopt;
}

void check_round(LionKind kind, const Point& lion_before, const StepRecord& rec,
                 const std::optional<Center>& prev_center, double tol,
                 std::vector<InequalityCheck>& out) {
  if (!rec.center) return;
  const Center& c = *rec.center;
  const bool moving = kind == LionKind::Moving;
  const int t = rec.t;

  if (moving) {
    if (c.m <= 1.0) {
      out.push_back({"prop4", t, rec.captured ? 0.0 : -1.0, rec.captured});
    }
    if (prev_center) {
      const double sx = prev_center->pos.x - c.pos.x;
      const double sy = prev_center->pos.y - c.pos.y;
      out.push_back({"lemma1.x", t, sx, sx > 1e-12});
      out.push_back({"lemma1.y", t, sy, sy > 1e-12});
      if (prev_center->m > 1.0) {
        const double s = recursion_step(prev_center->m) - c.m;
        out.push_back({"theorem1", t, s, s >= -tol});
      }
    }
  }
  if (rec.captured) return;

  const std::string prefix = moving ? "prop3" : "prop1";
  const double before = norm2(lion_before - c.pos);
  const double after = norm2(rec.lion_pos - c.pos);
  const double whole = sq(c.pos.x) + sq(c.pos.y);
  const double lower = after - before - 1.0;
  const double upper = whole - after;
  out.push_back({prefix + ".i.lower", t, lower, lower >= -tol});
  out.push_back({prefix + ".i.upper", t, upper, upper >= -tol});
  const double inside = std::min(c.pos.x - rec.lion_pos.x, c.pos.y - rec.lion_pos.y);
  out.push_back({prefix + ".ii", t, inside, inside > 0.0});
  if (moving) {
    const double rt2 = sq(rec.r_tilde);
    const double lo = rt2 - sq(c.r) - 1.0;
    const double hi = sq(c.r) + sq(c.m) - rt2;
    out.push_back({"prop3.iii.lower", t, lo, lo >= -tol});
    out.push_back({"prop3.iii.upper", t, hi, hi >= -tol});
  }
}

std::vector<InequalityCheck> audit_trace(const Trace& trace, double tol) {
  const LionKind kind = parse_lion_kind(trace.config.lion_strategy);
  std::vector<InequalityCheck> out;
  Point lion = trace.config.lion_start;
  std::optional<Center> prev;
  for (const auto& rec : trace.steps) {
    check_round(kind, lion, rec, prev, tol, out);
    lion = rec.lion_pos;
    prev = rec.center;
  }
  return out;
}

Game::Game(LionKind kind, const Point& lion_start, const Point& man_start, bool enforce_invariants)
    : lion_(lion_start), man_(man_start), enforce_invariants_(enforce_invariants) {
  if (!in_quadrant(lion_start) || !in_quadrant(man_start)) {
    throw Error(ErrorCode::OutOfQuadrant, "start positions must lie in the quadrant");
  }
  if (!(lion_start.x > man_start.x && lion_start.y > man_start.y)) {
    throw Error(ErrorCode::ManWinsTrivially,
                "lion must start strictly above and to the right of the man; "
                "otherwise the man escapes along an axis");
  }
  lion_state_ = LionStrategyState::make(kind, lion_start, man_start);
  initial_center_ = compute_center(lion_start, man_start);
}

StepRecord Game::compute_step(const Point& man_new) const {
  if (finished_) throw Error(ErrorCode::GameOver, "game is over");
  if (auto v = validate_move(man_, man_new)) {
    if (*v == MoveViolation::TooFar) throw Error(ErrorCode::TooFar, "man move longer than one unit");
    throw Error(ErrorCode::OutOfQuadrant, "man move leaves the quadrant");
  }

  StepRecord rec;
  rec.t = static_cast<int>(steps_.size());
  rec.man_pos = man_new;
  try {
    rec.center = lion_state_.center_for(lion_, man_);
  } catch (const Error&) {
    rec.center.reset();
  }

  LionDecision decision;
  try {
    decision = lion_respond(lion_state_, lion_, man_, man_new);
  } catch (const Error& e) {
    throw Error(ErrorCode::InvariantViolation,
                std::string("lion strategy failed at t=") + std::to_string(rec.t) + ": " + e.what());
  }
  rec.lion_pos = decision.new_position;
  rec.captured = decision.captured;
  if (rec.center) {
    rec.r = rec.center->r;
    rec.m = rec.center->m;
    rec.r_tilde = distance(rec.lion_pos, rec.center->pos);
  }

  const double step = distance(lion_, rec.lion_pos);
  if (step > 1.0 + kTol || !in_quadrant(rec.lion_pos)) {
    throw Error(ErrorCode::InvariantViolation,
                "illegal lion move at t=" + std::to_string(rec.t) + " length=" + format_real(step));
  }
  return rec;
}

void Game::enforce(const StepRecord& rec) const {
  std::vector<InequalityCheck> checks;
  const std::optional<Center> prev =
      steps_.empty() ? std::optional<Center>{} : steps_.back().center;
  check_round(lion_state_.kind, lion_, rec, prev, kTol, checks);
  for (const auto& c : checks) {
    if (!c.pass) throw Error(ErrorCode::InvariantViolation, describe(c));
  }
}

const StepRecord& Game::advance(const Point& man_new) {
  StepRecord rec;
  try {
    rec = compute_step(man_new);
    if (enforce_invariants_) enforce(rec);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InvariantViolation) finished_ = true;
    throw;
  }
  man_ = rec.man_pos;
  lion_ = rec.lion_pos;
  steps_.push_back(rec);
  if (rec.captured) finished_ = true;
  return steps_.back();
}

StepRecord Game::preview(const Point& man_new) const { return compute_step(man_new); }

double initial_m0(const Point& lion_start, const Point& man_start) {
  return compute_center(lion_start, man_start).m;
}

int capture_bound(LionKind kind, double m0) {
  return kind == LionKind::Fixed ? fcls_bound(m0) : mcls_bound(m0);
}

Trace play(const GameConfig& config) {
  const LionKind kind = parse_lion_kind(config.lion_strategy);
  Game game(kind, config.lion_start, config.man_start, config.enforce_invariants);
  const int max_steps = config.max_steps.value_or(fcls_bound(game.initial_center().m) + 8);

  ManStrategyOptions options;
  options.seed = config.seed;
  options.greedy_samples = config.greedy_samples;
  options.script = config.script;
  auto man = make_man_strategy(config.man_strategy, options);

  Trace trace;
  trace.config = config;
  trace.outcome = {OutcomeKind::StepLimit, 0, ""};
  for (int t = 0; t < max_steps; ++t) {
    const Point next = man->next(game.man(), game.lion(), game.lion_state(), t);
    try {
      game.advance(next);
    } catch (const Error& e) {
      const std::string who =
          e.code() == ErrorCode::InvariantViolation ? "" : "man strategy produced an illegal move: ";
      trace.outcome = {OutcomeKind::InvariantViolation, static_cast<int>(game.steps().size()),
                       who + e.what()};
      break;
    }
    if (game.captured()) {
      trace.outcome = {OutcomeKind::Captured, static_cast<int>(game.steps().size()), ""};
      break;
    }
  }
  if (trace.outcome.kind == OutcomeKind::StepLimit) {
    trace.outcome.lion_moves = static_cast<int>(game.steps().size());
  }
  trace.steps = game.steps();
  return trace;
}

std::vector<Trace> play_many(const std::vector<GameConfig>& configs, unsigned threads) {
  std::vector<Trace> traces(configs.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, configs.size())));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < configs.size(); i = next++) {
      try {
        traces[i] = play(configs[i]);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned k = 0; k < threads; ++k) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return traces;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 finalizer over the combined words
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(seed ^ mix(index));
}

Start random_dominating_start(std::mt19937_64& rng, double max_m0) {
  std::uniform_real_distribution<double> man_dist(0.0, 6.0);
  std::uniform_real_distribution<double> gap_dist(0.05, 3.0);
  for (;;) {
    const Point man{man_dist(rng), man_dist(rng)};
    const Point lion{man.x + gap_dist(rng), man.y + gap_dist(rng)};
    if (initial_m0(lion, man) <= max_m0) return {lion, man};
  }
}

std::string trace_csv(const std::vector<StepRecord>& steps) {
  std::string out = "t,man_x,man_y,lion_x,lion_y,center_x,center_y,r,m,r_tilde,captured\n";
  for (const auto& s : steps) {
    out += std::to_string(s.t);
    for (double v : {s.man_pos.x, s.man_pos.y, s.lion_pos.x, s.lion_pos.y}) {
      out += ',';
      out += format_real(v);
    }
    if (s.center) {
      for (double v : {s.center->pos.x, s.center->pos.y, s.r, s.m, s.r_tilde}) {
        out += ',';
        out += format_real(v);
      }
    } else {
      out += ",,,,,";
    }
    out += s.captured ? ",1\n" : ",0\n";
  }
  return out;
}

std::string trace_csv(const Trace& trace) { return trace_csv(trace.steps); }

}  // namespace lionman
