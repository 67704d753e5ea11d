// Copyright 2026 The magicsquare Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MSQ_CORE_SERVICE_HPP
#define MSQ_CORE_SERVICE_HPP

// HTTP/JSON API for interactive clients. All routes live under /api/v1:
//
//   GET  /api/v1/health
//   POST /api/v1/sessions                  {"seed"?, "variant"?}
//   POST /api/v1/sessions/{id}/rounds      {"alice_setting", "bob_setting"} or {"policy"}
//   GET  /api/v1/sessions/{id}/records
//   GET  /api/v1/sessions/{id}/stats
//   POST /api/v1/coloring/check            {"colors": [9 x "red"|"green"], "variant"?}
//   GET  /api/v1/game/values[?variant=signed]
//
// Errors are {"code", "message", "detail"}. Sessions live in memory; when a
// journal path is configured every session and round is appended to it as
// one JSON line and replayed on the next start.

#include <atomic>
#include <cstdint>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>

#include "serialization.hpp"

namespace httplib {
class Server;
}

namespace msq {

struct ServiceOptions {
  std::string journal_path;
  std::string cors_origin = "*";
};

struct HttpResponse {
  int status = 200;
  std::string body;
};

class Service {
 public:
  explicit Service(ServiceOptions options = {});
  ~Service();

  Service(const Service &) = delete;
  Service &operator=(const Service &) = delete;

  /// Routes one request. `target` is the path with an optional query string.
  /// Thread-safe; requests on the same session are serialized.
  HttpResponse handle(std::string_view method, std::string_view target, std::string_view body);

  /// Serves until stop() is called. Throws Io when the address cannot be
  /// bound.
  void listen(const std::string &host, int port);
  void stop();
  /// Port actually bound (useful with port 0), or -1 before listen().
  int bound_port() const { return bound_port_.load(); }
  bool running() const;

  const std::string &cors_origin() const { return options_.cors_origin; }

 private:
  struct Session;

  HttpResponse create_session(const Json &request);
  HttpResponse play_round(Session &session, const Json &request);
  HttpResponse records(Session &session);
  HttpResponse stats(Session &session);
  HttpResponse check_coloring(const Json &request);
  HttpResponse game_values(Variant variant);

  std::shared_ptr<Session> find_session(const std::string &id);
  std::shared_ptr<Session> add_session(const std::string &id, std::uint64_t seed, Variant variant);
  void load_journal();
  void journal(const Json &event);

  ServiceOptions options_;
  std::mutex sessions_mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::uint64_t session_counter_ = 0;

  std::mutex journal_mutex_;
  std::ofstream journal_;

  std::once_flag game_values_once_[2];
  Json game_values_[2];

  std::mutex server_mutex_;
  std::unique_ptr<httplib::Server> server_;
  std::atomic<int> bound_port_{-1};
};

}  // namespace msq

#endif  // MSQ_CORE_SERVICE_HPP
