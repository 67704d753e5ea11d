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

// msq: command-line front end over the C API.
//
//   msq run      [--rounds N] [--seed S] [--policy P] [--variant V] [--format F]
//   msq verify   [--variant V] [--format F]
//   msq classical [--variant V] [--format F]
//   msq eigen    [--variant V] [--format F]
//   msq serve    [--listen HOST:PORT] [--journal PATH]
//
// Exit codes: 0 success, 1 a check or rule failed, 2 usage error,
// 3 runtime error (for example an address that cannot be bound).

#include <csignal>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <string>
#include <thread>

#include <pthread.h>

#include <CLI11.hpp>

#include "magicsquare/magicsquare.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitRuntime = 3;

struct CliConfig {
  std::uint64_t rounds = 1000;
  std::uint64_t seed = 0;
  std::string policy = "random";
  std::string variant = "standard";
  std::string format = "table";
  std::string listen = "127.0.0.1:8080";
  std::string journal;
};

int runtime_error(const char *what) {
  std::cerr << "msq: " << what << ": " << msq_last_error() << "\n";
  return kExitRuntime;
}

int usage_error(const std::string &what) {
  std::cerr << "msq: " << what << "\n";
  return kExitUsage;
}

// Prints a string owned by the library and releases it.
void emit(char *text) {
  std::fputs(text, stdout);
  msq_string_free(text);
}

msq_format format_of(const CliConfig &c) { return c.format == "json" ? MSQ_FORMAT_JSON : MSQ_FORMAT_TABLE; }

int cmd_run(const CliConfig &c, msq_variant variant) {
  if (c.rounds == 0) return usage_error("--rounds must be at least 1");
  if (msq_validate_policy(c.policy.c_str()) != MSQ_OK) return usage_error(msq_last_error());

  const msq_batch_config config{c.rounds, c.seed, c.policy.c_str(), variant, c.format == "json", 0};
  msq_batch *batch = nullptr;
  if (msq_batch_run(&config, &batch) != MSQ_OK) return runtime_error("run");

  char *text = nullptr;
  std::uint64_t parity = 0;
  std::uint64_t correlation = 0;
  const bool ok = msq_batch_render(batch, format_of(c), &text) == MSQ_OK &&
                  msq_batch_violations(batch, &parity, &correlation) == MSQ_OK;
  msq_batch_free(batch);
  if (!ok) return runtime_error("run");
  emit(text);
  return parity == 0 && correlation == 0 ? kExitOk : kExitCheckFailed;
}

using ReportFn = msq_status (*)(msq_variant, msq_report **);

int cmd_report(ReportFn fn, const char *name, const CliConfig &c, msq_variant variant) {
  msq_report *report = nullptr;
  if (fn(variant, &report) != MSQ_OK) return runtime_error(name);
  char *text = nullptr;
  int passed = 0;
  const bool ok = msq_report_render(report, format_of(c), &text) == MSQ_OK && msq_report_passed(report, &passed) == MSQ_OK;
  msq_report_free(report);
  if (!ok) return runtime_error(name);
  emit(text);
  return passed ? kExitOk : kExitCheckFailed;
}

int cmd_serve(const CliConfig &c) {
  const auto colon = c.listen.rfind(':');
  if (colon == std::string::npos) return usage_error("--listen expects HOST:PORT");
  const std::string host = c.listen.substr(0, colon);
  int port = -1;
  try {
    std::size_t used = 0;
    port = std::stoi(c.listen.substr(colon + 1), &used);
    if (used != c.listen.size() - colon - 1) port = -1;
  } catch (const std::exception &) {
    port = -1;
  }
  if (host.empty() || port < 0 || port > 65535) return usage_error("--listen expects HOST:PORT");

  msq_service *service = nullptr;
  const msq_service_options options{c.journal.c_str(), nullptr};
  if (msq_service_create(&options, &service) != MSQ_OK) return runtime_error("serve");

  // SIGINT/SIGTERM are consumed by sigwait on this thread; the server runs
  // on a worker.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  msq_status listen_status = MSQ_OK;
  std::string listen_error;
  std::thread server([&] {
    listen_status = msq_service_listen(service, host.c_str(), port);
    if (listen_status != MSQ_OK) {
      listen_error = msq_last_error();
      kill(getpid(), SIGTERM);
    }
  });
  std::thread announce([&] {
    for (int i = 0; i < 200 && msq_service_port(service) < 0 && listen_status == MSQ_OK; ++i)
      std::this_thread::sleep_for(std::chrono::milliseconds(10));
    if (msq_service_port(service) >= 0)
      std::cerr << "msq: serving on http://" << host << ":" << msq_service_port(service) << "/api/v1\n";
  });

  int sig = 0;
  sigwait(&signals, &sig);
  msq_service_stop(service);
  server.join();
  announce.join();
  msq_service_free(service);

  if (listen_status != MSQ_OK) {
    std::cerr << "msq: serve: " << listen_error << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Two-observer magic-square experiment: simulate, verify, analyze, serve"};
  app.require_subcommand(1);
  CliConfig c;

  const auto add_common = [&](CLI::App *sub) {
    sub->add_option("--variant", c.variant, "standard or signed")->check(CLI::IsMember({"standard", "signed"}));
    sub->add_option("--format", c.format, "table or json")->check(CLI::IsMember({"table", "json"}));
  };

  CLI::App *run = app.add_subcommand("run", "run a batch of rounds and report rule checks and frequencies");
  run->add_option("--rounds", c.rounds, "number of rounds (default 1000)");
  run->add_option("--seed", c.seed, "64-bit seed (default 0)");
  run->add_option("--policy", c.policy, "random, cleve, or fixed:<A>:<B>");
  add_common(run);

  CLI::App *verify = app.add_subcommand("verify", "check operator identities, eigenbases and no-signaling");
  add_common(verify);
  CLI::App *classical = app.add_subcommand("classical", "enumerate colorings and compute classical game values");
  add_common(classical);
  CLI::App *eigen = app.add_subcommand("eigen", "print the joint eigenbasis of every setting");
  add_common(eigen);

  CLI::App *serve = app.add_subcommand("serve", "host the HTTP API");
  serve->add_option("--listen", c.listen, "HOST:PORT (default 127.0.0.1:8080)");
  serve->add_option("--journal", c.journal, "append sessions and rounds to this file and replay it on start");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kExitUsage;
  }

  msq_variant variant = MSQ_VARIANT_STANDARD;
  if (msq_parse_variant(c.variant.c_str(), &variant) != MSQ_OK) return usage_error(msq_last_error());

  if (*run) return cmd_run(c, variant);
  if (*verify) return cmd_report(msq_verify, "verify", c, variant);
  if (*classical) return cmd_report(msq_classical, "classical", c, variant);
  if (*eigen) return cmd_report(msq_eigen, "eigen", c, variant);
  if (*serve) return cmd_serve(c);
  return kExitUsage;
}
