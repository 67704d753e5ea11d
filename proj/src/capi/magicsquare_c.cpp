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

#include "magicsquare/magicsquare.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "errors.hpp"
#include "experiment.hpp"
#include "serialization.hpp"
#include "service.hpp"
#include "verification.hpp"

struct msq_batch {
  msq::BatchReport report;
};

struct msq_report {
  bool passed = true;
  std::string text;
  std::string json;
};

struct msq_service {
  msq::Service service;
  explicit msq_service(msq::ServiceOptions options) : service(std::move(options)) {}
};

namespace {

thread_local std::string g_last_error;

msq_status set_error(msq_status status, const std::string &message) {
  g_last_error = message;
  return status;
}

msq_status status_of(msq::ErrorCode code) {
  switch (code) {
    case msq::ErrorCode::InvalidArgument: return MSQ_ERR_INVALID_ARGUMENT;
    case msq::ErrorCode::NotFound: return MSQ_ERR_NOT_FOUND;
    case msq::ErrorCode::NotScalar: return MSQ_ERR_NOT_SCALAR;
    case msq::ErrorCode::NoCommonPanel: return MSQ_ERR_NO_COMMON_PANEL;
    case msq::ErrorCode::Internal: return MSQ_ERR_INTERNAL;
    case msq::ErrorCode::Io: return MSQ_ERR_IO;
  }
  return MSQ_ERR_INTERNAL;
}

template <class Fn>
msq_status guarded(Fn &&fn) {
  try {
    g_last_error.clear();
    return fn();
  } catch (const msq::Error &e) {
    std::string message = e.what();
    if (!e.detail().empty()) message += ": " + e.detail();
    return set_error(status_of(e.code()), message);
  } catch (const std::bad_alloc &) {
    return set_error(MSQ_ERR_INTERNAL, "out of memory");
  } catch (const std::exception &e) {
    return set_error(MSQ_ERR_INTERNAL, e.what());
  }
}

char *copy_string(const std::string &s) {
  char *out = static_cast<char *>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

msq::Variant to_variant(msq_variant v) {
  switch (v) {
    case MSQ_VARIANT_STANDARD: return msq::Variant::Standard;
    case MSQ_VARIANT_SIGNED: return msq::Variant::SignedSymmetric;
  }
  msq::fail(msq::ErrorCode::InvalidArgument, "unknown variant");
}

msq::Setting to_setting(msq_setting s) {
  if (s < MSQ_R1 || s > MSQ_C3) msq::fail(msq::ErrorCode::InvalidArgument, "unknown setting");
  return msq::kAllSettings[static_cast<std::size_t>(s)];
}

msq::SettingPolicy policy_from(const char *text) {
  const std::string token = text ? text : "random";
  const auto policy = msq::parse_policy(token);
  if (!policy) msq::fail(msq::ErrorCode::InvalidArgument, "invalid policy", token);
  return *policy;
}

#define MSQ_REQUIRE(cond, what) \
  if (!(cond)) return set_error(MSQ_ERR_INVALID_ARGUMENT, what)

}  // namespace

extern "C" {

const char *msq_last_error(void) { return g_last_error.c_str(); }

const char *msq_version(void) { return "1.0.0"; }

void msq_string_free(char *s) { std::free(s); }

msq_status msq_parse_setting(const char *text, msq_setting *out) {
  MSQ_REQUIRE(text && out, "null argument");
  const auto s = msq::parse_setting(text);
  if (!s) return set_error(MSQ_ERR_INVALID_ARGUMENT, std::string("invalid setting: ") + text);
  *out = static_cast<msq_setting>(msq::index_of(*s));
  return MSQ_OK;
}

msq_status msq_parse_variant(const char *text, msq_variant *out) {
  MSQ_REQUIRE(text && out, "null argument");
  const auto v = msq::parse_variant(text);
  if (!v) return set_error(MSQ_ERR_INVALID_ARGUMENT, std::string("invalid variant: ") + text);
  *out = *v == msq::Variant::Standard ? MSQ_VARIANT_STANDARD : MSQ_VARIANT_SIGNED;
  return MSQ_OK;
}

msq_status msq_validate_policy(const char *policy) {
  MSQ_REQUIRE(policy, "null argument");
  return guarded([&] {
    (void)policy_from(policy);
    return MSQ_OK;
  });
}

msq_status msq_batch_run(const msq_batch_config *config, msq_batch **out) {
  MSQ_REQUIRE(config && out, "null argument");
  return guarded([&] {
    auto batch = std::make_unique<msq_batch>();
    batch->report = msq::run_batch(config->rounds, policy_from(config->policy), to_variant(config->variant),
                                   config->seed, {config->keep_records != 0, config->threads});
    *out = batch.release();
    return MSQ_OK;
  });
}

void msq_batch_free(msq_batch *batch) { delete batch; }

msq_status msq_batch_render(const msq_batch *batch, msq_format format, char **out) {
  MSQ_REQUIRE(batch && out, "null argument");
  return guarded([&] {
    *out = copy_string(format == MSQ_FORMAT_JSON ? msq::batch_to_json(batch->report).dump(2) + "\n"
                                                 : msq::batch_to_text(batch->report));
    return MSQ_OK;
  });
}

msq_status msq_batch_violations(const msq_batch *batch, uint64_t *parity, uint64_t *correlation) {
  MSQ_REQUIRE(batch && parity && correlation, "null argument");
  *parity = batch->report.tally.parity_violations;
  *correlation = batch->report.tally.correlation_violations;
  return MSQ_OK;
}

msq_status msq_batch_round_count(const msq_batch *batch, uint64_t *rounds) {
  MSQ_REQUIRE(batch && rounds, "null argument");
  *rounds = batch->report.tally.rounds;
  return MSQ_OK;
}

msq_status msq_batch_setting_counts(const msq_batch *batch, int party, msq_setting setting, uint64_t *uses,
                                    uint64_t counts[4], uint64_t *invalid) {
  MSQ_REQUIRE(batch && uses && counts && invalid, "null argument");
  MSQ_REQUIRE(party == 0 || party == 1, "party must be 0 (Alice) or 1 (Bob)");
  return guarded([&] {
    const auto &tallies = party == 0 ? batch->report.tally.alice : batch->report.tally.bob;
    const msq::SettingTally &t = tallies[msq::index_of(to_setting(setting))];
    *uses = t.uses;
    for (std::size_t k = 0; k < 4; ++k) counts[k] = t.outcomes[k];
    *invalid = t.invalid;
    return MSQ_OK;
  });
}

msq_status msq_round_json(const char *policy, msq_variant variant, uint64_t seed, uint64_t round_index, char **out) {
  MSQ_REQUIRE(out, "null argument");
  return guarded([&] {
    const msq::RoundRecord r = msq::run_round(policy_from(policy), to_variant(variant), seed, round_index);
    *out = copy_string(msq::record_to_json(r).dump());
    return MSQ_OK;
  });
}

msq_status msq_verify(msq_variant variant, msq_report **out) {
  MSQ_REQUIRE(out, "null argument");
  return guarded([&] {
    const msq::VerifyReport v = msq::run_verification(to_variant(variant));
    *out = new msq_report{v.all_passed(), msq::verify_to_text(v), msq::verify_to_json(v).dump(2) + "\n"};
    return MSQ_OK;
  });
}

msq_status msq_classical(msq_variant variant, msq_report **out) {
  MSQ_REQUIRE(out, "null argument");
  return guarded([&] {
    const msq::ClassicalSummary s = msq::classical_summary(to_variant(variant));
    const bool passed = s.census.fully_satisfying == 0 && s.three_by_three.classical_value < s.three_by_three.quantum_value &&
                        s.six_by_six.classical_value < s.six_by_six.quantum_value;
    *out = new msq_report{passed, msq::classical_to_text(s), msq::classical_to_json(s).dump(2) + "\n"};
    return MSQ_OK;
  });
}

msq_status msq_eigen(msq_variant variant, msq_report **out) {
  MSQ_REQUIRE(out, "null argument");
  return guarded([&] {
    const msq::Variant v = to_variant(variant);
    bool passed = true;
    for (msq::Setting s : msq::kAllSettings) {
      const msq::DecompositionCheck d = msq::biorthogonal_decomposition_check(s, v);
      passed = passed && d.reconstruction_error < msq::kTolerance && d.max_imaginary < msq::kTolerance;
    }
    *out = new msq_report{passed, msq::eigen_to_text(v), msq::eigen_to_json(v).dump(2) + "\n"};
    return MSQ_OK;
  });
}

msq_status msq_report_passed(const msq_report *report, int *passed) {
  MSQ_REQUIRE(report && passed, "null argument");
  *passed = report->passed ? 1 : 0;
  return MSQ_OK;
}

msq_status msq_report_render(const msq_report *report, msq_format format, char **out) {
  MSQ_REQUIRE(report && out, "null argument");
  return guarded([&] {
    *out = copy_string(format == MSQ_FORMAT_JSON ? report->json : report->text);
    return MSQ_OK;
  });
}

void msq_report_free(msq_report *report) { delete report; }

msq_status msq_check_coloring(const char *colors, msq_variant variant, int *satisfied_count, unsigned *satisfied_bits) {
  MSQ_REQUIRE(colors && satisfied_count && satisfied_bits, "null argument");
  MSQ_REQUIRE(std::strlen(colors) == 9, "coloring needs exactly 9 characters");
  return guarded([&] {
    std::array<msq::Color, 9> panel{};
    for (std::size_t k = 0; k < 9; ++k) {
      if (colors[k] == 'r') panel[k] = msq::Color::Red;
      else if (colors[k] == 'g') panel[k] = msq::Color::Green;
      else msq::fail(msq::ErrorCode::InvalidArgument, "coloring characters are 'r' or 'g'", std::string(1, colors[k]));
    }
    const msq::ConstraintReport r = msq::check_coloring(msq::Coloring(panel), to_variant(variant));
    *satisfied_count = r.satisfied_count;
    *satisfied_bits = 0;
    for (std::size_t k = 0; k < 6; ++k)
      if (r.satisfied[k]) *satisfied_bits |= 1u << k;
    return MSQ_OK;
  });
}

msq_status msq_service_create(const msq_service_options *options, msq_service **out) {
  MSQ_REQUIRE(out, "null argument");
  return guarded([&] {
    msq::ServiceOptions o;
    if (options && options->journal_path) o.journal_path = options->journal_path;
    if (options && options->cors_origin) o.cors_origin = options->cors_origin;
    *out = new msq_service(std::move(o));
    return MSQ_OK;
  });
}

void msq_service_free(msq_service *service) { delete service; }

msq_status msq_service_handle(msq_service *service, const char *method, const char *target, const char *body,
                              int *http_status, char **response) {
  MSQ_REQUIRE(service && method && target && http_status && response, "null argument");
  return guarded([&] {
    const msq::HttpResponse r = service->service.handle(method, target, body ? body : "");
    *http_status = r.status;
    *response = copy_string(r.body);
    return MSQ_OK;
  });
}

msq_status msq_service_listen(msq_service *service, const char *host, int port) {
  MSQ_REQUIRE(service && host, "null argument");
  MSQ_REQUIRE(port >= 0 && port <= 65535, "port out of range");
  return guarded([&] {
    service->service.listen(host, port);
    return MSQ_OK;
  });
}

msq_status msq_service_stop(msq_service *service) {
  MSQ_REQUIRE(service, "null argument");
  return guarded([&] {
    service->service.stop();
    return MSQ_OK;
  });
}

int msq_service_port(const msq_service *service) { return service ? service->service.bound_port() : -1; }

}  // extern "C"
