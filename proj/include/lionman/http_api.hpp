#pragma once

#include <memory>
#include <string>

#include "lionman/play_service.hpp"

namespace lionman {

/// JSON-over-HTTP front for a PlayService.
///   POST   /games                 {"lion_strategy","lion":{x,y},"man":{x,y}}
///   POST   /games/{id}/man-move   {"to":{x,y}}
///   POST   /games/{id}/preview    {"to":{x,y}}
///   GET    /games/{id}
///   DELETE /games/{id}
/// Errors: {"reason": code, "message": text}.
class PlayServer {
 public:
  explicit PlayServer(PlayService& service);
  ~PlayServer();
  PlayServer(const PlayServer&) = delete;
  PlayServer& operator=(const PlayServer&) = delete;

  /// Binds; port 0 picks a free port. Returns the bound port, or -1.
  int bind(const std::string& host, int port);
  /// Blocks until stop().
  bool listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace lionman
