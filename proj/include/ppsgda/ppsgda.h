// Copyright 2026 The ppsgda Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/* C interface to the ppsgda library.
 *
 * Objects are opaque handles created by *_create / *_load functions and
 * released with the matching *_destroy. Every fallible call returns a
 * ppsgda_status; on failure ppsgda_last_error() describes what went wrong
 * (per thread, valid until the next failing call on that thread). Strings
 * returned through char** parameters are owned by the caller and released
 * with ppsgda_string_free. Vertex labels are 1-based. */

#ifndef PPSGDA_PPSGDA_H_
#define PPSGDA_PPSGDA_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define PPSGDA_API __declspec(dllexport)
#else
#define PPSGDA_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ppsgda_status {
  PPSGDA_OK = 0,
  PPSGDA_INVALID_ARGUMENT = 1,
  PPSGDA_INVALID_EDGE = 2,
  PPSGDA_NOT_STRONGLY_CONNECTED = 3,
  PPSGDA_INCONSISTENT_WEIGHTS = 4,
  PPSGDA_INVALID_RANGE = 5,
  PPSGDA_ALREADY_MIXED = 6,
  PPSGDA_INVALID_SET = 7,
  PPSGDA_TOO_LARGE = 8,
  PPSGDA_DIMENSION_ERROR = 9,
  PPSGDA_INVALID_SCHEDULE = 10,
  PPSGDA_INFEASIBLE_DEMAND = 11,
  PPSGDA_NOT_STRONGLY_CONVEX = 12,
  PPSGDA_CONFIG_ERROR = 13,
  PPSGDA_IO_ERROR = 14,
  PPSGDA_NOT_CONVERGED = 15,
  PPSGDA_INTERNAL_ERROR = 100
} ppsgda_status;

typedef struct ppsgda_graph ppsgda_graph;
typedef struct ppsgda_dispatch ppsgda_dispatch;
typedef struct ppsgda_config ppsgda_config;
typedef struct ppsgda_report ppsgda_report;

PPSGDA_API const char* ppsgda_last_error(void);
PPSGDA_API const char* ppsgda_status_name(ppsgda_status status);
PPSGDA_API void ppsgda_string_free(char* s);

/* Graphs. Edge k goes from from[k] to to[k]. */
PPSGDA_API ppsgda_status ppsgda_graph_create(size_t n, const size_t* from,
                                             const size_t* to, size_t edge_count,
                                             ppsgda_graph** out);
/* generator: "ring", "complete" or "random" (the last uses q and seed). */
PPSGDA_API ppsgda_status ppsgda_graph_generate(const char* generator, size_t n,
                                               double q, uint64_t seed,
                                               ppsgda_graph** out);
PPSGDA_API size_t ppsgda_graph_size(const ppsgda_graph* graph);
PPSGDA_API ppsgda_status ppsgda_graph_is_strongly_connected(
    const ppsgda_graph* graph, int* out);
/* entries: n*n row-major column-stochastic matrix; perron_vector: n. Either
 * may be NULL. */
PPSGDA_API ppsgda_status ppsgda_graph_perron(const ppsgda_graph* graph,
                                             double* entries,
                                             double* perron_vector);
PPSGDA_API void ppsgda_graph_destroy(ppsgda_graph* graph);

/* Economic dispatch instances; every array has n entries. */
PPSGDA_API ppsgda_status ppsgda_dispatch_create(
    size_t n, const double* a, const double* b, const double* c, double demand,
    const double* p_min, const double* p_max, ppsgda_dispatch** out);
PPSGDA_API size_t ppsgda_dispatch_size(const ppsgda_dispatch* inst);
/* Output arrays hold n entries; any output may be NULL. */
PPSGDA_API ppsgda_status ppsgda_dispatch_solve(const ppsgda_dispatch* inst,
                                               double* p_star, double* lambda_star,
                                               double* mu_min, double* mu_max,
                                               double* objective);
PPSGDA_API void ppsgda_dispatch_destroy(ppsgda_dispatch* inst);

/* Experiment configurations. */
PPSGDA_API ppsgda_status ppsgda_config_load(const char* path, ppsgda_config** out);
PPSGDA_API ppsgda_status ppsgda_config_parse(const char* json, ppsgda_config** out);
PPSGDA_API ppsgda_status ppsgda_config_fig1(ppsgda_config** out);
/* NULL leaves a path unchanged, "" disables that output. */
PPSGDA_API ppsgda_status ppsgda_config_set_output(ppsgda_config* config,
                                                  const char* trace_path,
                                                  const char* summary_path);
PPSGDA_API ppsgda_status ppsgda_config_to_json(const ppsgda_config* config,
                                               char** out);
PPSGDA_API void ppsgda_config_destroy(ppsgda_config* config);

/* Runs the experiment and writes the configured output files. */
PPSGDA_API ppsgda_status ppsgda_run(const ppsgda_config* config,
                                    ppsgda_report** out);
PPSGDA_API ppsgda_status ppsgda_report_summary_json(const ppsgda_report* report,
                                                    char** out);
PPSGDA_API ppsgda_status ppsgda_report_trace_csv(const ppsgda_report* report,
                                                 char** out);
PPSGDA_API ppsgda_status ppsgda_report_max_final_error(const ppsgda_report* report,
                                                       double* out);
PPSGDA_API void ppsgda_report_destroy(ppsgda_report* report);

/* Centralized optimum of the configured problem as JSON. */
PPSGDA_API ppsgda_status ppsgda_oracle_json(const ppsgda_config* config,
                                            char** out);

/* Runs the self-check suite. report gets one "PASS|FAIL name: detail" line
 * per check; all_passed is set to 1 or 0. */
PPSGDA_API ppsgda_status ppsgda_verify(uint64_t seed, char** report,
                                       int* all_passed);

#ifdef __cplusplus
}  // extern "C"
#endif

#endif  /* PPSGDA_PPSGDA_H_ */
