/*
 * Copyright 2026 The magicsquare Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface to the magic-square simulator.
 *
 * Every function returns an msq_status. On failure msq_last_error() returns
 * a description of the most recent error on the calling thread. Handles are
 * opaque and owned by the caller; release them with the matching _free
 * function. Strings returned through `char **` out-parameters are allocated
 * by the library and released with msq_string_free().
 */

#ifndef MAGICSQUARE_MAGICSQUARE_H
#define MAGICSQUARE_MAGICSQUARE_H

#include <stdint.h>

#if defined(MSQ_BUILDING_LIBRARY)
#define MSQ_API __attribute__((visibility("default")))
#else
#define MSQ_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum msq_status {
  MSQ_OK = 0,
  MSQ_ERR_INVALID_ARGUMENT = 1,
  MSQ_ERR_NOT_FOUND = 2,
  MSQ_ERR_NOT_SCALAR = 3,
  MSQ_ERR_NO_COMMON_PANEL = 4,
  MSQ_ERR_INTERNAL = 5,
  MSQ_ERR_IO = 6
} msq_status;

typedef enum msq_variant { MSQ_VARIANT_STANDARD = 0, MSQ_VARIANT_SIGNED = 1 } msq_variant;

typedef enum msq_format { MSQ_FORMAT_TABLE = 0, MSQ_FORMAT_JSON = 1 } msq_format;

/* R1..R3 are rows top to bottom, C1..C3 columns left to right. */
typedef enum msq_setting {
  MSQ_R1 = 0,
  MSQ_R2 = 1,
  MSQ_R3 = 2,
  MSQ_C1 = 3,
  MSQ_C2 = 4,
  MSQ_C3 = 5
} msq_setting;

typedef struct msq_batch msq_batch;
typedef struct msq_report msq_report;
typedef struct msq_service msq_service;

MSQ_API const char *msq_last_error(void);
MSQ_API const char *msq_version(void);
MSQ_API void msq_string_free(char *s);

MSQ_API msq_status msq_parse_setting(const char *text, msq_setting *out);
MSQ_API msq_status msq_parse_variant(const char *text, msq_variant *out);

/* Policy strings: "random", "cleve", or "fixed:<A>:<B>" with A, B setting
 * names. Validates without running anything. */
MSQ_API msq_status msq_validate_policy(const char *policy);

/* ---- Batches of rounds ------------------------------------------------ */

typedef struct msq_batch_config {
  uint64_t rounds;
  uint64_t seed;
  const char *policy; /* NULL means "random" */
  msq_variant variant;
  int keep_records;   /* nonzero keeps every round record */
  unsigned threads;   /* 0 picks the hardware concurrency */
} msq_batch_config;

MSQ_API msq_status msq_batch_run(const msq_batch_config *config, msq_batch **out);
MSQ_API void msq_batch_free(msq_batch *batch);
MSQ_API msq_status msq_batch_render(const msq_batch *batch, msq_format format, char **out);
MSQ_API msq_status msq_batch_violations(const msq_batch *batch, uint64_t *parity, uint64_t *correlation);
MSQ_API msq_status msq_batch_round_count(const msq_batch *batch, uint64_t *rounds);

/* Per-setting outcome counts for one party (0 = Alice, 1 = Bob). counts[4]
 * receives the parity-valid outcomes in the order (+,+), (+,-), (-,+), (-,-)
 * of the first two panels. */
MSQ_API msq_status msq_batch_setting_counts(const msq_batch *batch, int party, msq_setting setting,
                                            uint64_t *uses, uint64_t counts[4], uint64_t *invalid);

/* One round as a JSON record; the same function the service uses. */
MSQ_API msq_status msq_round_json(const char *policy, msq_variant variant, uint64_t seed, uint64_t round_index,
                                  char **out);

/* ---- Deterministic reports -------------------------------------------- */

/* Structural checks of a variant. */
MSQ_API msq_status msq_verify(msq_variant variant, msq_report **out);
/* Coloring census and game values. */
MSQ_API msq_status msq_classical(msq_variant variant, msq_report **out);
/* Eigenbases of every setting and the decomposition residuals. */
MSQ_API msq_status msq_eigen(msq_variant variant, msq_report **out);

MSQ_API msq_status msq_report_passed(const msq_report *report, int *passed);
MSQ_API msq_status msq_report_render(const msq_report *report, msq_format format, char **out);
MSQ_API void msq_report_free(msq_report *report);

/* Checks a row-major coloring of nine panels, 'r' or 'g' per character.
 * Writes the number of satisfied settings and a bit per setting (bit k for
 * setting k) to the out-parameters. */
MSQ_API msq_status msq_check_coloring(const char *colors, msq_variant variant, int *satisfied_count,
                                      unsigned *satisfied_bits);

/* ---- HTTP service ----------------------------------------------------- */

typedef struct msq_service_options {
  const char *journal_path; /* NULL or "" disables journaling */
  const char *cors_origin;  /* NULL means "*" */
} msq_service_options;

MSQ_API msq_status msq_service_create(const msq_service_options *options, msq_service **out);
MSQ_API void msq_service_free(msq_service *service);

/* Routes one request without a socket. `target` is the path with an
 * optional query string. */
MSQ_API msq_status msq_service_handle(msq_service *service, const char *method, const char *target,
                                      const char *body, int *http_status, char **response);

/* Blocks serving HTTP until msq_service_stop() is called from another
 * thread. Port 0 binds an ephemeral port; see msq_service_port(). */
MSQ_API msq_status msq_service_listen(msq_service *service, const char *host, int port);
MSQ_API msq_status msq_service_stop(msq_service *service);
MSQ_API int msq_service_port(const msq_service *service);

#ifdef __cplusplus
}
#endif

#endif /* MAGICSQUARE_MAGICSQUARE_H */
