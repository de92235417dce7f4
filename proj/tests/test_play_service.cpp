#include <doctest.h>

#include <httplib.h>

#include <atomic>
#include <cmath>
#include <json.hpp>
#include <random>
#include <thread>

#include "lionman/bounds.hpp"
#include "lionman/error.hpp"
#include "lionman/http_api.hpp"
#include "lionman/play_service.hpp"

using namespace lionman;
using nlohmann::json;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Internal;
}

}  // namespace

TEST_CASE("create session") {
  PlayService svc;
  const SessionSummary s = svc.create_session("mcls", {5, 6}, {1, 1});
  CHECK(s.status == SessionStatus::Active);
  CHECK(s.id.size() == 16);
  const Center c = compute_center({5, 6}, {1, 1});
  CHECK(s.initial_center == c);
  CHECK(s.fcls_bound == fcls_bound(c.m));
  CHECK(s.mcls_bound == mcls_bound(c.m));
  CHECK(s.moves == 0);
  CHECK(svc.size() == 1);

  CHECK(code_of([&] { svc.create_session("mcls", {1, 1}, {2, 0.5}); }) == ErrorCode::ManWinsTrivially);
  CHECK(code_of([&] { svc.create_session("tiger", {5, 6}, {1, 1}); }) == ErrorCode::UnknownStrategy);
  CHECK(svc.size() == 1);
}

TEST_CASE("fixed center stays put for the whole session") {
  PlayService svc;
  const auto s = svc.create_session("fcls", {2, 2}, {1, 1});
  const Center c0 = compute_center({2, 2}, {1, 1});
  const MoveOutcome o = svc.man_move(s.id, {0.5, 1.5});
  REQUIRE(o.center_used);
  CHECK(*o.center_used == c0);
  if (!o.captured) {
    const Point m = svc.get_session(s.id).summary.man;
    const MoveOutcome o2 = svc.man_move(s.id, {m.x, m.y + 1});
    if (!o2.captured) CHECK(*o2.center_used == c0);
  }
}

TEST_CASE("moves, capture and game over") {
  PlayService svc;
  const auto s = svc.create_session("mcls", {5, 6}, {1, 1});
  const MoveOutcome o = svc.man_move(s.id, {1, 2});
  CHECK_FALSE(o.captured);
  CHECK(distance(o.lion_pos, {5, 6}) == doctest::Approx(1.0).epsilon(1e-12));
  REQUIRE(o.center_used);
  CHECK(o.m_t == o.center_used->m);
  CHECK(o.r_t == o.center_used->r);
  CHECK(o.bound_remaining == mcls_bound(compute_center(o.lion_pos, o.man_pos).m));

  CHECK(code_of([&] { svc.man_move(s.id, {1, 3.2}); }) == ErrorCode::TooFar);
  CHECK(svc.get_session(s.id).steps.size() == 1);

  // walk straight at the lion
  Point man = o.man_pos, lion = o.lion_pos;
  MoveOutcome last;
  for (int i = 0; i < 20; ++i) {
    const Displacement d = lion - man;
    const double k = std::min(1.0, norm(d)) / norm(d);
    last = svc.man_move(s.id, man + k * d);
    man = last.man_pos;
    lion = last.lion_pos;
    if (last.captured) break;
  }
  REQUIRE(last.captured);
  CHECK(last.lion_pos == last.man_pos);
  CHECK_FALSE(last.center_used);
  CHECK(last.bound_remaining == 0);
  CHECK(svc.get_session(s.id).summary.status == SessionStatus::LionWon);
  CHECK(code_of([&] { svc.man_move(s.id, man); }) == ErrorCode::GameOver);
  CHECK(code_of([&] { svc.preview(s.id, man); }) == ErrorCode::GameOver);
}

TEST_CASE("preview is pure and matches the real move") {
  PlayService svc;
  const auto s = svc.create_session("mcls", {5, 6}, {1, 1});
  const auto before = svc.get_session(s.id);
  const MoveOutcome p = svc.preview(s.id, {1.5, 1.7});
  CHECK(code_of([&] { svc.preview(s.id, {3, 3}); }) == ErrorCode::TooFar);
  const auto after = svc.get_session(s.id);
  CHECK(after.steps == before.steps);
  CHECK(after.summary.lion == before.summary.lion);
  const MoveOutcome m = svc.man_move(s.id, {1.5, 1.7});
  CHECK(p == m);
}

TEST_CASE("session trace replays offline bit for bit") {
  PlayService svc;
  const auto s = svc.create_session("mcls", {9, 7}, {2, 1});
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ang(0, 6.283185307179586);
  for (int i = 0; i < 15; ++i) {
    const Point man = svc.get_session(s.id).summary.man;
    const double a = ang(rng);
    Point to{man.x + 0.9 * std::cos(a), man.y + 0.9 * std::sin(a)};
    if (!in_quadrant(to)) to = man;
    if (svc.man_move(s.id, to).captured) break;
  }
  const auto snap = svc.get_session(s.id);
  GameConfig c;
  c.lion_start = {9, 7};
  c.man_start = {2, 1};
  c.man_strategy = "scripted";
  c.max_steps = static_cast<int>(snap.steps.size());
  for (const auto& st : snap.steps) c.script.push_back(st.man_pos);
  CHECK(play(c).steps == snap.steps);
  CHECK(snap.summary.moves == static_cast<int>(snap.steps.size()));
}

TEST_CASE("concurrent moves on one session are serialized") {
  PlayService svc;
  const auto s = svc.create_session("mcls", {150, 170}, {3, 3});
  std::atomic<int> accepted{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < 8; ++w) {
    pool.emplace_back([&, w] {
      std::mt19937_64 rng(w);
      std::uniform_real_distribution<double> ang(0, 6.283185307179586);
      for (int i = 0; i < 20; ++i) {
        const Point man = svc.get_session(s.id).summary.man;
        const double a = ang(rng);
        Point to{man.x + 0.4 * std::cos(a), man.y + 0.4 * std::sin(a)};
        if (!in_quadrant(to)) to = man;
        if (i % 4 == 0) {
          try {
            svc.preview(s.id, to);
          } catch (const Error&) {
          }
        }
        try {
          svc.man_move(s.id, to);
          ++accepted;
        } catch (const Error& e) {
          CHECK(e.code() == ErrorCode::TooFar);
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  const auto snap = svc.get_session(s.id);
  CHECK(static_cast<int>(snap.steps.size()) == accepted.load());
  Point man{3, 3}, lion{150, 170};
  for (std::size_t i = 0; i < snap.steps.size(); ++i) {
    const StepRecord& st = snap.steps[i];
    CHECK(st.t == static_cast<int>(i));
    CHECK(distance(man, st.man_pos) <= 1.0 + 1e-12);
    CHECK(distance(lion, st.lion_pos) <= 1.0 + 1e-9);
    man = st.man_pos;
    lion = st.lion_pos;
  }
}

TEST_CASE("idle sessions are evicted") {
  auto now = std::chrono::steady_clock::time_point{};
  PlayService svc(std::chrono::seconds(3600), [&] { return now; });
  const auto a = svc.create_session("mcls", {5, 6}, {1, 1});
  now += std::chrono::minutes(30);
  const auto b = svc.create_session("mcls", {5, 6}, {1, 1});
  now += std::chrono::minutes(45);
  CHECK(svc.evict_idle() == 1);
  CHECK(code_of([&] { svc.get_session(a.id); }) == ErrorCode::NotFound);
  CHECK(svc.get_session(b.id).summary.id == b.id);
  svc.delete_session(b.id);
  CHECK(svc.size() == 0);
  CHECK(code_of([&] { svc.delete_session(b.id); }) == ErrorCode::NotFound);
}

TEST_CASE("http endpoints on loopback") {
  PlayService svc;
  PlayServer server(svc);
  const int port = server.bind("127.0.0.1", 0);
  REQUIRE(port > 0);
  std::thread th([&] { server.listen(); });
  httplib::Client cli("127.0.0.1", port);

  auto post = [&](const std::string& path, const json& body) {
    auto res = cli.Post(path, body.dump(), "application/json");
    REQUIRE(res);
    return std::make_pair(res->status, res->body.empty() ? json() : json::parse(res->body));
  };

  auto [st, created] = post("/games", {{"lion_strategy", "mcls"}, {"lion", {{"x", 5}, {"y", 6}}}, {"man", {{"x", 1}, {"y", 1}}}});
  CHECK(st == 201);
  const std::string id = created["id"];
  CHECK(created["status"] == "Active");
  CHECK(created["bounds"]["mcls"] == mcls_bound(compute_center({5, 6}, {1, 1}).m));
  CHECK(created["m0"].get<double>() == compute_center({5, 6}, {1, 1}).m);

  auto [st_bad, bad] = post("/games", {{"lion_strategy", "mcls"}, {"lion", {{"x", 1}, {"y", 1}}}, {"man", {{"x", 2}, {"y", 0.5}}}});
  CHECK(st_bad == 422);
  CHECK(bad["reason"] == "NonDominatingStart");

  auto [st_p, prev] = post("/games/" + id + "/preview", {{"to", {{"x", 1}, {"y", 2}}}});
  CHECK(st_p == 200);
  auto [st_m, moved] = post("/games/" + id + "/man-move", {{"to", {{"x", 1}, {"y", 2}}}});
  CHECK(st_m == 200);
  CHECK(prev == moved);
  CHECK(moved["captured"] == false);
  CHECK(moved["center_used"]["m"].is_number());

  auto [st_far, far] = post("/games/" + id + "/man-move", {{"to", {{"x", 1}, {"y", 4}}}});
  CHECK(st_far == 422);
  CHECK(far["reason"] == "TooFar");
  auto [st_w, wall] = post("/games", {{"lion_strategy", "mcls"}, {"lion", {{"x", 5}, {"y", 6}}}, {"man", {{"x", 0.2}, {"y", 1}}}});
  CHECK(st_w == 201);
  auto [st_q, q] = post("/games/" + wall["id"].get<std::string>() + "/preview", {{"to", {{"x", -0.3}, {"y", 1}}}});
  CHECK(st_q == 422);
  CHECK(q["reason"] == "OutOfQuadrant");

  auto [st_j, junk] = post("/games/" + id + "/man-move", {{"where", 1}});
  CHECK(st_j == 400);

  auto got = cli.Get("/games/" + id);
  REQUIRE(got);
  CHECK(got->status == 200);
  const json g = json::parse(got->body);
  REQUIRE(g["steps"].size() == 1);
  CHECK(g["steps"][0]["man_y"] == 2.0);
  CHECK(g["steps"][0].contains("r_tilde"));

  auto del = cli.Delete("/games/" + id);
  REQUIRE(del);
  CHECK(del->status == 204);
  auto gone = cli.Get("/games/" + id);
  REQUIRE(gone);
  CHECK(gone->status == 404);
  CHECK(json::parse(gone->body)["reason"] == "NotFound");

  // capture then GameOver
  auto [st2, c2] = post("/games", {{"lion_strategy", "fcls"}, {"lion", {{"x", 1.5}, {"y", 1.5}}}, {"man", {{"x", 1}, {"y", 1}}}});
  CHECK(st2 == 201);
  const std::string id2 = c2["id"];
  auto [st_c, cap] = post("/games/" + id2 + "/man-move", {{"to", {{"x", 1.2}, {"y", 1.2}}}});
  CHECK(cap["captured"] == true);
  CHECK(cap["center_used"].is_null());
  auto [st_o, over] = post("/games/" + id2 + "/man-move", {{"to", {{"x", 1.2}, {"y", 1.2}}}});
  CHECK(st_o == 409);
  CHECK(over["reason"] == "GameOver");

  server.stop();
  th.join();
}
