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

#include "service.hpp"

#include <cassert>
#include <random>
#include <vector>

#include <httplib.h>

#include "errors.hpp"

namespace msq {

namespace {

constexpr std::string_view kPrefix = "/api/v1";
// Seeds drawn from entropy stay below 2^53 so JavaScript clients can echo
// them back exactly.
constexpr std::uint64_t kEntropySeedMask = (std::uint64_t{1} << 53) - 1;

HttpResponse json_response(int status, const Json &body) { return {status, body.dump()}; }

HttpResponse error_response(int status, std::string_view code, std::string_view message, std::string_view detail = {}) {
  return json_response(status, {{"code", code}, {"message", message}, {"detail", detail}});
}

std::uint64_t entropy64() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

std::vector<std::string> split_path(std::string_view path) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= path.size()) {
    const std::size_t slash = path.find('/', start);
    const std::size_t end = slash == std::string_view::npos ? path.size() : slash;
    if (end > start) out.emplace_back(path.substr(start, end - start));
    if (slash == std::string_view::npos) break;
    start = slash + 1;
  }
  return out;
}

std::string query_value(std::string_view query, std::string_view key) {
  std::size_t start = 0;
  while (start < query.size()) {
    std::size_t amp = query.find('&', start);
    if (amp == std::string_view::npos) amp = query.size();
    const std::string_view pair = query.substr(start, amp - start);
    const std::size_t eq = pair.find('=');
    if (pair.substr(0, eq) == key) return eq == std::string_view::npos ? "" : std::string(pair.substr(eq + 1));
    start = amp + 1;
  }
  return {};
}

// Reads an optional side of a round request: absent means random.
std::optional<Setting> side_setting(const Json &request, const char *long_key, const char *short_key, bool &present) {
  const char *key = request.contains(long_key) ? long_key : (request.contains(short_key) ? short_key : nullptr);
  if (!key) return std::nullopt;
  present = true;
  if (!request[key].is_string()) fail(ErrorCode::InvalidArgument, "setting must be a string", request[key].dump());
  const std::string token = request[key].get<std::string>();
  if (token == "random") return std::nullopt;
  const auto s = parse_setting(token);
  if (!s) fail(ErrorCode::InvalidArgument, "invalid setting", token);
  return s;
}

Variant variant_field(const Json &request) {
  if (!request.contains("variant")) return Variant::Standard;
  if (!request["variant"].is_string()) fail(ErrorCode::InvalidArgument, "variant must be a string");
  const std::string token = request["variant"].get<std::string>();
  const auto v = parse_variant(token);
  if (!v) fail(ErrorCode::InvalidArgument, "invalid variant", token);
  return *v;
}

}  // namespace

struct Service::Session {
  std::string id;
  std::uint64_t seed = 0;
  Variant variant = Variant::Standard;

  std::mutex mutex;
  std::uint64_t next_round_index = 0;
  std::vector<RoundRecord> records;
  RoundTally tally;

  Json header() const { return {{"id", id}, {"seed", seed}, {"variant", to_string(variant)}}; }

  void append(const RoundRecord &record) {
    records.push_back(record);
    tally.add(record, variant);
    next_round_index = record.round_index + 1;
  }
};

Service::Service(ServiceOptions options) : options_(std::move(options)) {
  if (!options_.journal_path.empty()) {
    load_journal();
    journal_.open(options_.journal_path, std::ios::app);
    if (!journal_) fail(ErrorCode::Io, "cannot open journal", options_.journal_path);
  }
}

Service::~Service() { stop(); }

void Service::load_journal() {
  std::ifstream in(options_.journal_path);
  if (!in) return;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const Json event = Json::parse(line, nullptr, false);
    if (event.is_discarded() || !event.contains("event") || !event.contains("id"))
      fail(ErrorCode::Io, "corrupt journal line", std::to_string(line_no));
    const std::string id = event["id"].get<std::string>();
    if (event["event"] == "session") {
      add_session(id, event["seed"].get<std::uint64_t>(), variant_field(event));
      continue;
    }
    auto session = find_session(id);
    if (!session) fail(ErrorCode::Io, "journal round for unknown session", id);
    const auto policy = parse_policy(event["policy"].get<std::string>(), true);
    if (!policy) fail(ErrorCode::Io, "journal round has an invalid policy", std::to_string(line_no));
    const RoundRecord stored = record_from_json(event["record"]);
    const RoundRecord replayed = run_round(*policy, session->variant, session->seed, stored.round_index);
    if (!(stored == replayed)) fail(ErrorCode::Io, "journal round does not replay", std::to_string(line_no));
    session->append(stored);
  }
}

void Service::journal(const Json &event) {
  if (options_.journal_path.empty()) return;
  std::lock_guard lock(journal_mutex_);
  journal_ << event.dump() << '\n';
  journal_.flush();
}

std::shared_ptr<Service::Session> Service::find_session(const std::string &id) {
  std::lock_guard lock(sessions_mutex_);
  const auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

std::shared_ptr<Service::Session> Service::add_session(const std::string &id, std::uint64_t seed, Variant variant) {
  auto session = std::make_shared<Session>();
  session->id = id;
  session->seed = seed;
  session->variant = variant;
  std::lock_guard lock(sessions_mutex_);
  sessions_[id] = session;
  ++session_counter_;
  return session;
}

HttpResponse Service::handle(std::string_view method, std::string_view target, std::string_view body) {
  const std::size_t q = target.find('?');
  const std::string_view path = target.substr(0, q);
  const std::string_view query = q == std::string_view::npos ? std::string_view{} : target.substr(q + 1);

  if (!path.starts_with(kPrefix)) return error_response(404, "not_found", "unknown route", path);
  const std::vector<std::string> parts = split_path(path.substr(kPrefix.size()));

  if (method == "OPTIONS") return {204, ""};

  Json request = Json::object();
  if (method == "POST" && !body.empty()) {
    request = Json::parse(body, nullptr, false);
    if (request.is_discarded() || !request.is_object())
      return error_response(400, "malformed_body", "request body must be a JSON object");
  }

  try {
    if (parts.size() == 1 && parts[0] == "health") {
      if (method != "GET") return error_response(405, "method_not_allowed", "use GET", path);
      return json_response(200, {{"status", "ok"}});
    }
    if (parts.size() == 1 && parts[0] == "sessions") {
      if (method != "POST") return error_response(405, "method_not_allowed", "use POST", path);
      return create_session(request);
    }
    if (parts.size() == 3 && parts[0] == "sessions") {
      auto session = find_session(parts[1]);
      if (!session) return error_response(404, "unknown_session", "no such session", parts[1]);
      std::lock_guard lock(session->mutex);
      if (parts[2] == "rounds" && method == "POST") return play_round(*session, request);
      if (parts[2] == "records" && method == "GET") return records(*session);
      if (parts[2] == "stats" && method == "GET") return stats(*session);
      return error_response(404, "not_found", "unknown session route", path);
    }
    if (parts.size() == 2 && parts[0] == "coloring" && parts[1] == "check") {
      if (method != "POST") return error_response(405, "method_not_allowed", "use POST", path);
      return check_coloring(request);
    }
    if (parts.size() == 2 && parts[0] == "game" && parts[1] == "values") {
      if (method != "GET") return error_response(405, "method_not_allowed", "use GET", path);
      const std::string token = query_value(query, "variant");
      const auto variant = token.empty() ? std::optional<Variant>(Variant::Standard) : parse_variant(token);
      if (!variant) return error_response(400, "invalid_variant", "unknown variant", token);
      return game_values(*variant);
    }
  } catch (const Error &e) {
    switch (e.code()) {
      case ErrorCode::InvalidArgument: return error_response(400, "invalid_argument", e.what(), e.detail());
      case ErrorCode::NotFound: return error_response(404, "not_found", e.what(), e.detail());
      default: return error_response(500, "internal", e.what(), e.detail());
    }
  } catch (const std::exception &e) {
    return error_response(500, "internal", e.what());
  }
  return error_response(404, "not_found", "unknown route", path);
}

HttpResponse Service::create_session(const Json &request) {
  std::uint64_t seed = entropy64() & kEntropySeedMask;
  if (request.contains("seed")) {
    const Json &s = request["seed"];
    if (s.is_number_unsigned()) {
      seed = s.get<std::uint64_t>();
    } else if (s.is_string() && !s.get<std::string>().empty() &&
               s.get<std::string>().find_first_not_of("0123456789") == std::string::npos) {
      try {
        seed = std::stoull(s.get<std::string>());
      } catch (const std::exception &) {
        return error_response(400, "invalid_seed", "seed does not fit in 64 bits", s.get<std::string>());
      }
    } else {
      return error_response(400, "invalid_seed", "seed must be a non-negative integer", s.dump());
    }
  }
  Variant variant = Variant::Standard;
  try {
    variant = variant_field(request);
  } catch (const Error &e) {
    return error_response(400, "invalid_variant", e.what(), e.detail());
  }

  const std::string id = "s-" + hex16(entropy64());
  auto session = add_session(id, seed, variant);
  journal({{"event", "session"}, {"id", id}, {"seed", seed}, {"variant", to_string(variant)}});
  return json_response(200, session->header());
}

HttpResponse Service::play_round(Session &session, const Json &request) {
  SettingPolicy policy;
  try {
    if (request.contains("policy")) {
      if (!request["policy"].is_string()) return error_response(400, "invalid_policy", "policy must be a string");
      const std::string token = request["policy"].get<std::string>();
      const auto parsed = parse_policy(token, true);
      if (!parsed) return error_response(400, "invalid_policy", "unknown policy", token);
      policy = *parsed;
    } else {
      bool alice_present = false;
      bool bob_present = false;
      const auto alice = side_setting(request, "alice_setting", "alice", alice_present);
      const auto bob = side_setting(request, "bob_setting", "bob", bob_present);
      if (!alice_present && !bob_present)
        return error_response(400, "missing_settings", "give alice_setting and bob_setting, or a policy");
      policy = (!alice && !bob) ? SettingPolicy::uniform() : SettingPolicy::fixed(alice, bob);
    }
  } catch (const Error &e) {
    return error_response(400, "invalid_setting", e.what(), e.detail());
  }

  const RoundRecord record = run_round(policy, session.variant, session.seed, session.next_round_index);

  const bool alice_ok = verify_parity(record.alice_panels, record.alice_setting, session.variant);
  const bool bob_ok = verify_parity(record.bob_panels, record.bob_setting, session.variant);
  const bool correlation_ok = verify_correlation(record.alice_panels, record.bob_panels);
  // Every response is checked against both rules before it leaves.
  assert(alice_ok && bob_ok && correlation_ok);
  if (!alice_ok || !bob_ok || !correlation_ok)
    return error_response(500, "rule_violation", "simulated round broke a detector rule", hex16(record.seed_fingerprint));

  session.append(record);
  journal({{"event", "round"}, {"id", session.id}, {"policy", policy.describe()}, {"record", record_to_json(record)}});

  Json out = record_to_json(record);
  out["session"] = session.id;
  out["policy"] = policy.describe();
  out["parity_ok"] = {{"alice", alice_ok}, {"bob", bob_ok}};
  Json common = Json::array();
  for (const Cell &cell : common_panels(record.alice_setting, record.bob_setting)) {
    const Color a = *record.alice_panels.at(cell);
    const Color b = *record.bob_panels.at(cell);
    common.push_back({{"row", cell.row + 1}, {"col", cell.col + 1}, {"alice", to_string(a)}, {"bob", to_string(b)},
                      {"match", a == b}});
  }
  const bool has_common = !common.empty();
  out["common_panels"] = std::move(common);
  out["correlation_ok"] = correlation_ok;
  out["explanation"] = has_common ? reality_chains_to_json(element_of_reality_trace(record)) : Json::array();
  return json_response(200, out);
}

HttpResponse Service::records(Session &session) {
  Json out = session.header();
  Json list = Json::array();
  for (const RoundRecord &r : session.records) list.push_back(record_to_json(r));
  out["records"] = std::move(list);
  return json_response(200, out);
}

HttpResponse Service::stats(Session &session) {
  Json out = session.header();
  const Json tally = tally_to_json(session.tally, session.variant);
  for (auto &[key, value] : tally.items()) out[key] = value;
  return json_response(200, out);
}

HttpResponse Service::check_coloring(const Json &request) {
  if (!request.contains("colors") || !request["colors"].is_array() || request["colors"].size() != 9)
    return error_response(400, "invalid_coloring", "colors must be an array of 9 entries, row-major");
  std::array<Color, 9> colors{};
  for (std::size_t k = 0; k < 9; ++k) {
    const Json &c = request["colors"][k];
    const auto color = c.is_string() ? parse_color(c.get<std::string>()) : std::nullopt;
    if (!color) return error_response(400, "invalid_color", "colors are \"red\" or \"green\"", c.dump());
    colors[k] = *color;
  }
  Variant variant = Variant::Standard;
  try {
    variant = variant_field(request);
  } catch (const Error &e) {
    return error_response(400, "invalid_variant", e.what(), e.detail());
  }
  Json out = constraint_report_to_json(msq::check_coloring(Coloring(colors), variant));
  out["variant"] = to_string(variant);
  return json_response(200, out);
}

HttpResponse Service::game_values(Variant variant) {
  const auto slot = static_cast<std::size_t>(variant);
  std::call_once(game_values_once_[slot], [&] {
    game_values_[slot] = {{"variant", to_string(variant)},
                          {"games",
                           {game_value_to_json(classical_game_value(Game::ThreeByThree, variant)),
                            game_value_to_json(classical_game_value(Game::SixBySix, variant))}}};
  });
  return json_response(200, game_values_[slot]);
}

void Service::listen(const std::string &host, int port) {
  {
    std::lock_guard lock(server_mutex_);
    server_ = std::make_unique<httplib::Server>();
    // Without SO_REUSEPORT a second instance on the same port fails to bind.
    server_->set_socket_options([](socket_t sock) {
      int yes = 1;
      setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
    });
    // Catch-all handlers run after httplib has read the request body.
    const auto route = [this](const httplib::Request &req, httplib::Response &res) {
      const HttpResponse r = handle(req.method, req.target, req.body);
      res.status = r.status;
      res.set_header("Access-Control-Allow-Origin", options_.cors_origin);
      res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
      res.set_header("Access-Control-Allow-Headers", "Content-Type");
      if (!r.body.empty()) res.set_content(r.body, "application/json");
    };
    server_->Get(".*", route);
    server_->Post(".*", route);
    server_->Put(".*", route);
    server_->Delete(".*", route);
    server_->Options(".*", route);
    const int bound = port == 0 ? server_->bind_to_any_port(host) : (server_->bind_to_port(host, port) ? port : -1);
    if (bound < 0) {
      server_.reset();
      fail(ErrorCode::Io, "cannot bind listen address", host + ":" + std::to_string(port));
    }
    bound_port_ = bound;
  }
  server_->listen_after_bind();
}

void Service::stop() {
  std::lock_guard lock(server_mutex_);
  if (server_) server_->stop();
}

bool Service::running() const { return server_ && server_->is_running(); }

}  // namespace msq
