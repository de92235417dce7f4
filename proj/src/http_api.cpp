#include "lionman/http_api.hpp"

#include <httplib.h>

#include <json.hpp>

#include "lionman/error.hpp"

namespace lionman {

using nlohmann::json;

namespace {

json point_json(const Point& p) { return {{"x", p.x}, {"y", p.y}}; }

json center_json(const Center& c) {
  return {{"x", c.pos.x}, {"y", c.pos.y}, {"r", c.r}, {"m", c.m}};
}

Point parse_point(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_object()) {
    throw std::invalid_argument(std::string("missing point '") + key + "'");
  }
  const json& p = j.at(key);
  if (!p.contains("x") || !p.contains("y") || !p.at("x").is_number() || !p.at("y").is_number()) {
    throw std::invalid_argument(std::string("point '") + key + "' needs numeric x and y");
  }
  return {p.at("x").get<double>(), p.at("y").get<double>()};
}

json outcome_json(const MoveOutcome& o) {
  json j = {{"t", o.t},
            {"man_pos", point_json(o.man_pos)},
            {"lion_pos", point_json(o.lion_pos)},
            {"captured", o.captured},
            {"r_t", o.r_t},
            {"m_t", o.m_t},
            {"bound_remaining", o.bound_remaining}};
  j["center_used"] = o.center_used ? center_json(*o.center_used) : json(nullptr);
  return j;
}

json step_json(const StepRecord& s) {
  json j = {{"t", s.t},
            {"man_x", s.man_pos.x},
            {"man_y", s.man_pos.y},
            {"lion_x", s.lion_pos.x},
            {"lion_y", s.lion_pos.y},
            {"r", s.r},
            {"m", s.m},
            {"r_tilde", s.r_tilde},
            {"captured", s.captured}};
  j["center_x"] = s.center ? json(s.center->pos.x) : json(nullptr);
  j["center_y"] = s.center ? json(s.center->pos.y) : json(nullptr);
  return j;
}

json summary_json(const SessionSummary& s) {
  return {{"id", s.id},
          {"lion_strategy", to_string(s.kind)},
          {"status", to_string(s.status)},
          {"lion_start", point_json(s.lion_start)},
          {"man_start", point_json(s.man_start)},
          {"lion", point_json(s.lion)},
          {"man", point_json(s.man)},
          {"initial_center", center_json(s.initial_center)},
          {"r0", s.initial_center.r},
          {"m0", s.initial_center.m},
          {"bounds", {{"fcls", s.fcls_bound}, {"mcls", s.mcls_bound}}},
          {"moves", s.moves}};
}

void send(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, std::string_view reason, const std::string& msg) {
  send(res, status, {{"reason", reason}, {"message", msg}});
}

// maps thrown errors onto status + reason
template <class F>
void guarded(httplib::Response& res, F&& body) {
  try {
    body();
  } catch (const Error& e) {
    int status = 500;
    switch (e.code()) {
      case ErrorCode::NotFound: status = 404; break;
      case ErrorCode::GameOver: status = 409; break;
      case ErrorCode::TooFar:
      case ErrorCode::OutOfQuadrant:
      case ErrorCode::ManWinsTrivially: status = 422; break;
      case ErrorCode::UnknownStrategy:
        send_error(res, 400, "BadRequest", e.what());
        return;
      default: break;
    }
    send_error(res, status, to_string(e.code()), e.what());
  } catch (const json::exception& e) {
    send_error(res, 400, "BadRequest", e.what());
  } catch (const std::invalid_argument& e) {
    send_error(res, 400, "BadRequest", e.what());
  }
}

}  // namespace

struct PlayServer::Impl {
  PlayService& service;
  httplib::Server server;
};

PlayServer::PlayServer(PlayService& service) : impl_(new Impl{service, {}}) {
  auto& svc = impl_->service;
  auto& srv = impl_->server;

  srv.Post("/games", [&svc](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const json body = json::parse(req.body);
      const std::string strategy = body.value("lion_strategy", std::string("mcls"));
      send(res, 201,
           summary_json(svc.create_session(strategy, parse_point(body, "lion"),
                                           parse_point(body, "man"))));
    });
  });
  srv.Post(R"(/games/([0-9a-f]+)/man-move)", [&svc](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const json body = json::parse(req.body);
      send(res, 200, outcome_json(svc.man_move(req.matches[1], parse_point(body, "to"))));
    });
  });
  srv.Post(R"(/games/([0-9a-f]+)/preview)", [&svc](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const json body = json::parse(req.body);
      send(res, 200, outcome_json(svc.preview(req.matches[1], parse_point(body, "to"))));
    });
  });
  srv.Get(R"(/games/([0-9a-f]+))", [&svc](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const SessionSnapshot snap = svc.get_session(req.matches[1]);
      json j = summary_json(snap.summary);
      j["steps"] = json::array();
      for (const auto& s : snap.steps) j["steps"].push_back(step_json(s));
      send(res, 200, j);
    });
  });
  srv.Delete(R"(/games/([0-9a-f]+))", [&svc](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      svc.delete_session(req.matches[1]);
      res.status = 204;
    });
  });
  srv.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (res.body.empty() && res.status == 404) send_error(res, 404, "NotFound", "no such route");
  });
}

PlayServer::~PlayServer() { stop(); }

int PlayServer::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool PlayServer::listen() { return impl_->server.listen_after_bind(); }

void PlayServer::stop() { impl_->server.stop(); }

}  // namespace lionman
