/* Copyright (c) 2026, PPTP Simulator Contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 *
 * Licensed under the Apache License, Version 2.0 the "License";
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef PPTP_PPTP_H
#define PPTP_PPTP_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(PPTP_BUILDING_LIBRARY)
#    define PPTP_API __declspec(dllexport)
#  else
#    define PPTP_API __declspec(dllimport)
#  endif
#else
#  define PPTP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pptp_status {
  PPTP_OK = 0,
  PPTP_ERR_CONFIG = 1,    /* bad scenario or unusable setup */
  PPTP_ERR_INVARIANT = 2, /* a run broke a conservation or causality check */
  PPTP_ERR_IO = 3,
  PPTP_ERR_ARGUMENT = 4,
  PPTP_ERR_INTERNAL = 5
} pptp_status;

typedef struct pptp_scenario pptp_scenario;
typedef struct pptp_run pptp_run;

typedef struct pptp_run_options {
  uint64_t seed;
  uint64_t ticks;
  int has_seed;  /* nonzero: seed overrides the scenario's run directive */
  int has_ticks; /* nonzero: ticks overrides the scenario's run directive */
} pptp_run_options;

PPTP_API const char*
pptp_version(void);

/* Message for the last failing call on this thread; "" if none. */
PPTP_API const char*
pptp_last_error(void);

PPTP_API const char*
pptp_status_name(pptp_status status);

PPTP_API void
pptp_run_options_init(pptp_run_options* options);

PPTP_API pptp_status
pptp_scenario_parse(const char* text, size_t length, pptp_scenario** out);

PPTP_API pptp_status
pptp_scenario_load(const char* path, pptp_scenario** out);

PPTP_API void
pptp_scenario_free(pptp_scenario* scenario);

/* Directive counts, for validation reports. */
PPTP_API size_t
pptp_scenario_node_count(const pptp_scenario* scenario);

PPTP_API size_t
pptp_scenario_link_count(const pptp_scenario* scenario);

PPTP_API size_t
pptp_scenario_demand_count(const pptp_scenario* scenario);

PPTP_API size_t
pptp_scenario_channel_count(const pptp_scenario* scenario);

/* Runs the scenario to completion. `options` may be NULL. */
PPTP_API pptp_status
pptp_run_create(const pptp_scenario* scenario, const pptp_run_options* options, pptp_run** out);

PPTP_API void
pptp_run_free(pptp_run* run);

/* Outputs stay owned by the run. `length` may be NULL. */
PPTP_API const char*
pptp_run_csv(const pptp_run* run, size_t* length);

PPTP_API const char*
pptp_run_summary(const pptp_run* run, size_t* length);

/* Writes metrics.csv and summary.json into `dir`, creating it if needed. */
PPTP_API pptp_status
pptp_run_write(const pptp_run* run, const char* dir);

/* Renders `dir`/summary.json as text. Free the result with pptp_string_free. */
PPTP_API pptp_status
pptp_report_render(const char* dir, char** out);

PPTP_API void
pptp_string_free(char* str);

#ifdef __cplusplus
}
#endif

#endif /* PPTP_PPTP_H */
