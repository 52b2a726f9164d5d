// Copyright 2026 The orsched Authors
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

// C interface of the orsched library: operating room scheduling with bed
// management, rescheduling after disruptions, instance generation, exact
// enumeration for small instances, benchmarks and the HTTP service.
//
// Objects are opaque handles released with the matching *_free function.
// Strings returned through char** are heap copies released with
// ors_string_free. Every call returns an ors_status; on failure
// ors_last_error() describes the problem for the calling thread.

#ifndef ORSCHED_ORSCHED_H_
#define ORSCHED_ORSCHED_H_

#include <stddef.h>
#include <stdint.h>

#if defined(ORSCHED_BUILDING_LIBRARY)
#define ORS_API __attribute__((visibility("default")))
#else
#define ORS_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ors_status {
  ORS_OK = 0,
  ORS_INVALID_ARGUMENT = 1,
  ORS_PARSE_ERROR = 2,
  ORS_INVALID_INSTANCE = 3,
  ORS_INFEASIBLE_P1 = 4,
  ORS_TIMEOUT_NO_SOLUTION = 5,
  ORS_INFEASIBLE_POSTPONED = 6,
  ORS_LIMITS_EXCEEDED = 7,
  ORS_NEGATIVE_AVAILABILITY = 8,
  ORS_SCHEDULE_VIOLATIONS = 9,
  ORS_IO_ERROR = 10,
  ORS_NOT_FOUND = 11,
  ORS_CANCELLED = 12,
  ORS_INTERNAL = 13,
} ors_status;

typedef struct ors_instance ors_instance;
typedef struct ors_schedule ors_schedule;

ORS_API const char* ors_version(void);
// Kebab-case name of a status, e.g. "infeasible-p1".
ORS_API const char* ors_status_name(ors_status status);
// Message of the last failed call on this thread; "" if none.
ORS_API const char* ors_last_error(void);
ORS_API void ors_string_free(char* text);

// Instances. Parsing checks structure only; see ors_validate.
ORS_API ors_status ors_instance_from_json(const char* json, ors_instance** out);
ORS_API ors_status ors_instance_load(const char* path, ors_instance** out);
ORS_API ors_status ors_instance_to_json(const ors_instance* instance,
                                        char** json);
ORS_API ors_status ors_instance_save(const ors_instance* instance,
                                     const char* path);
ORS_API int ors_instance_horizon(const ors_instance* instance);
ORS_API size_t ors_instance_registration_count(const ors_instance* instance);
ORS_API void ors_instance_free(ors_instance* instance);

// Writes a report {"ok", "violations": [{"code", "detail"}]}. Returns
// ORS_INVALID_INSTANCE when the report is not ok.
ORS_API ors_status ors_validate(const ors_instance* instance,
                                char** report_json);

// Preset scenario "A", "B" or "C".
ORS_API ors_status ors_generate(const char* scenario, int days, uint64_t seed,
                                ors_instance** out);
// Scenario given as a JSON generation spec.
ORS_API ors_status ors_generate_from_spec(const char* spec_json, int days,
                                          uint64_t seed, ors_instance** out);
ORS_API ors_status ors_scenario_preset_json(const char* scenario, char** json);

// Schedules.
ORS_API ors_status ors_schedule_from_json(const char* json, ors_schedule** out);
ORS_API ors_status ors_schedule_load(const char* path, ors_schedule** out);
ORS_API ors_status ors_schedule_to_json(const ors_schedule* schedule,
                                        char** json);
ORS_API ors_status ors_schedule_save(const ors_schedule* schedule,
                                     const char* path);
ORS_API size_t ors_schedule_size(const ors_schedule* schedule);
ORS_API void ors_schedule_free(ors_schedule* schedule);

// Writes the violation list as a JSON array. Returns
// ORS_SCHEDULE_VIOLATIONS when it is not empty.
ORS_API ors_status ors_verify(const ors_instance* instance,
                              const ors_schedule* schedule,
                              char** violations_json);
// Objective and metrics of a feasible schedule as
// {"objective": {...}, "metrics": {...}}.
ORS_API ors_status ors_evaluate(const ors_instance* instance,
                                const ors_schedule* schedule,
                                char** json);

typedef struct ors_solve_options {
  double time_limit;        // seconds, > 0
  uint64_t seed;
  int64_t iteration_limit;  // 0 = bounded by time only
  int64_t max_stall;        // iterations without improvement before restart
  int emit_incumbents;
} ors_solve_options;

ORS_API void ors_solve_options_init(ors_solve_options* options);

// Called for every strictly improving schedule; objective_json is only valid
// during the call.
typedef void (*ors_incumbent_fn)(void* user_data, int index,
                                 const char* objective_json, double elapsed);

// outcome_json (optional) receives the outcome without the schedule.
ORS_API ors_status ors_solve(const ors_instance* instance,
                             const ors_solve_options* options,
                             ors_incumbent_fn on_incumbent, void* user_data,
                             ors_schedule** out, char** outcome_json);

// disruption_json: {"disruption_day", "postponed" | "postponed_count",
// "reschedule_days": {"first", "last"}, "specialty"}.
ORS_API ors_status ors_reschedule(const ors_instance* instance,
                                  const ors_schedule* old_schedule,
                                  const char* disruption_json,
                                  const ors_solve_options* options,
                                  ors_incumbent_fn on_incumbent,
                                  void* user_data, ors_schedule** out,
                                  char** outcome_json);

// Exhaustive enumeration for small instances (ORS_LIMITS_EXCEEDED above
// 8 registrations or 8 slots).
ORS_API ors_status ors_oracle_schedule(const ors_instance* instance,
                                       ors_schedule** out,
                                       char** objective_json);
ORS_API ors_status ors_oracle_reschedule(const ors_instance* instance,
                                         const ors_schedule* old_schedule,
                                         const char* disruption_json,
                                         ors_schedule** out,
                                         char** objective_json);

// Runs `runs` seeded instances (seeds first_seed, first_seed + 1, ...).
ORS_API ors_status ors_bench(const char* scenario, int days, int runs,
                             uint64_t first_seed,
                             const ors_solve_options* options,
                             char** report_json, char** report_text);

// Serves the HTTP API until the process is stopped. port 0 picks a free port;
// the bound port is reported through on_bound if given.
typedef void (*ors_bound_fn)(void* user_data, int port);
ORS_API ors_status ors_serve(const char* host, int port,
                             const char* store_dir, const char* token,
                             ors_bound_fn on_bound, void* user_data);

#ifdef __cplusplus
}  // extern "C"
#endif

#endif  // ORSCHED_ORSCHED_H_
