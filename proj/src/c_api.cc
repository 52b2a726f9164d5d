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

#include "orsched/orsched.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "bench.h"
#include "generator.h"
#include "json_io.h"
#include "model.h"
#include "oracle.h"
#include "rescheduler.h"
#include "service.h"
#include "solver.h"
#include "status.h"
#include "verifier.h"

struct ors_instance {
  orsched::Instance value;
};

struct ors_schedule {
  orsched::Schedule value;
};

namespace {

using orsched::Error;
using orsched::ErrorCode;
using orsched::Json;

thread_local std::string last_error;

ors_status Fail(ors_status status, const std::string& message) {
  last_error = message;
  return status;
}

template <typename F>
ors_status Guard(F&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const Error& e) {
    return Fail(static_cast<ors_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return Fail(ORS_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return Fail(ORS_INTERNAL, e.what());
  }
}

void Require(bool condition, const char* what) {
  if (!condition) throw Error(ErrorCode::kInvalidArgument, what);
}

char* Copy(const std::string& text) {
  char* out = static_cast<char*>(std::malloc(text.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

void Emit(char** out, const Json& doc) {
  if (out != nullptr) *out = Copy(orsched::Dump(doc));
}

orsched::SolverConfig ConfigFrom(const ors_solve_options* options) {
  ors_solve_options defaults;
  ors_solve_options_init(&defaults);
  const ors_solve_options& o = options != nullptr ? *options : defaults;
  Require(o.time_limit > 0, "time_limit must be positive");
  Require(o.iteration_limit >= 0, "iteration_limit must be >= 0");
  Require(o.max_stall >= 1, "max_stall must be >= 1");
  orsched::SolverConfig config;
  config.time_limit = o.time_limit;
  config.seed = o.seed;
  config.iteration_limit = o.iteration_limit;
  config.max_stall_iterations = o.max_stall;
  config.emit_incumbents = o.emit_incumbents != 0;
  return config;
}

orsched::RescheduleRequest RequestFrom(const ors_instance* instance,
                                       const ors_schedule* old_schedule,
                                       const char* disruption_json) {
  Require(instance != nullptr && old_schedule != nullptr &&
              disruption_json != nullptr,
          "instance, old schedule and disruption are required");
  orsched::RescheduleRequest request;
  request.instance = instance->value;
  request.old_schedule = old_schedule->value;
  orsched::DisruptionFromJson(orsched::ParseJson(disruption_json), request);
  return request;
}

}  // namespace

extern "C" {

const char* ors_version(void) { return "1.0.0"; }

const char* ors_status_name(ors_status status) {
  if (status == ORS_OK) return "ok";
  if (status < ORS_INVALID_ARGUMENT || status > ORS_INTERNAL) return "unknown";
  return orsched::ErrorCodeName(static_cast<ErrorCode>(status)).data();
}

const char* ors_last_error(void) { return last_error.c_str(); }

void ors_string_free(char* text) { std::free(text); }

ors_status ors_instance_from_json(const char* json, ors_instance** out) {
  return Guard([&] {
    Require(json != nullptr && out != nullptr, "null argument");
    *out = new ors_instance{orsched::InstanceFromJson(orsched::ParseJson(json))};
    return ORS_OK;
  });
}

ors_status ors_instance_load(const char* path, ors_instance** out) {
  return Guard([&] {
    Require(path != nullptr && out != nullptr, "null argument");
    *out = new ors_instance{orsched::InstanceFromJson(orsched::ReadJsonFile(path))};
    return ORS_OK;
  });
}

ors_status ors_instance_to_json(const ors_instance* instance, char** json) {
  return Guard([&] {
    Require(instance != nullptr && json != nullptr, "null argument");
    Emit(json, orsched::InstanceToJson(instance->value));
    return ORS_OK;
  });
}

ors_status ors_instance_save(const ors_instance* instance, const char* path) {
  return Guard([&] {
    Require(instance != nullptr && path != nullptr, "null argument");
    orsched::WriteJsonFile(path, orsched::InstanceToJson(instance->value));
    return ORS_OK;
  });
}

int ors_instance_horizon(const ors_instance* instance) {
  return instance != nullptr ? instance->value.horizon : 0;
}

size_t ors_instance_registration_count(const ors_instance* instance) {
  return instance != nullptr ? instance->value.registrations.size() : 0;
}

void ors_instance_free(ors_instance* instance) { delete instance; }

ors_status ors_validate(const ors_instance* instance, char** report_json) {
  return Guard([&] {
    Require(instance != nullptr, "null instance");
    const orsched::ValidationReport report =
        orsched::ValidateInstance(instance->value);
    Emit(report_json, orsched::ValidationReportToJson(report));
    if (report.ok()) return ORS_OK;
    return Fail(ORS_INVALID_INSTANCE, report.issues.front().code + ": " +
                                          report.issues.front().detail);
  });
}

ors_status ors_generate(const char* scenario, int days, uint64_t seed,
                        ors_instance** out) {
  return Guard([&] {
    Require(scenario != nullptr && out != nullptr, "null argument");
    *out = new ors_instance{
        orsched::GenerateInstance(orsched::ScenarioPreset(scenario), days, seed)};
    return ORS_OK;
  });
}

ors_status ors_generate_from_spec(const char* spec_json, int days,
                                  uint64_t seed, ors_instance** out) {
  return Guard([&] {
    Require(spec_json != nullptr && out != nullptr, "null argument");
    const orsched::ScenarioSpec spec =
        orsched::ScenarioSpecFromJson(orsched::ParseJson(spec_json));
    *out = new ors_instance{orsched::GenerateInstance(spec, days, seed)};
    return ORS_OK;
  });
}

ors_status ors_scenario_preset_json(const char* scenario, char** json) {
  return Guard([&] {
    Require(scenario != nullptr && json != nullptr, "null argument");
    Emit(json, orsched::ScenarioSpecToJson(orsched::ScenarioPreset(scenario)));
    return ORS_OK;
  });
}

ors_status ors_schedule_from_json(const char* json, ors_schedule** out) {
  return Guard([&] {
    Require(json != nullptr && out != nullptr, "null argument");
    *out = new ors_schedule{orsched::ScheduleFromJson(orsched::ParseJson(json))};
    return ORS_OK;
  });
}

ors_status ors_schedule_load(const char* path, ors_schedule** out) {
  return Guard([&] {
    Require(path != nullptr && out != nullptr, "null argument");
    *out = new ors_schedule{orsched::ScheduleFromJson(orsched::ReadJsonFile(path))};
    return ORS_OK;
  });
}

ors_status ors_schedule_to_json(const ors_schedule* schedule, char** json) {
  return Guard([&] {
    Require(schedule != nullptr && json != nullptr, "null argument");
    Emit(json, orsched::ScheduleToJson(schedule->value));
    return ORS_OK;
  });
}

ors_status ors_schedule_save(const ors_schedule* schedule, const char* path) {
  return Guard([&] {
    Require(schedule != nullptr && path != nullptr, "null argument");
    orsched::WriteJsonFile(path, orsched::ScheduleToJson(schedule->value));
    return ORS_OK;
  });
}

size_t ors_schedule_size(const ors_schedule* schedule) {
  return schedule != nullptr ? schedule->value.assignments.size() : 0;
}

void ors_schedule_free(ors_schedule* schedule) { delete schedule; }

ors_status ors_verify(const ors_instance* instance,
                      const ors_schedule* schedule, char** violations_json) {
  return Guard([&] {
    Require(instance != nullptr && schedule != nullptr, "null argument");
    const auto violations = orsched::CheckSchedule(instance->value, schedule->value);
    Emit(violations_json, orsched::ViolationsToJson(violations));
    if (violations.empty()) return ORS_OK;
    return Fail(ORS_SCHEDULE_VIOLATIONS,
                std::to_string(violations.size()) + " violation(s), first: " +
                    std::string(orsched::ViolationCodeName(violations[0].code)));
  });
}

ors_status ors_evaluate(const ors_instance* instance,
                        const ors_schedule* schedule, char** json) {
  return Guard([&] {
    Require(instance != nullptr && schedule != nullptr, "null argument");
    const auto objective =
        orsched::EvaluateObjective(instance->value, schedule->value);
    const auto metrics = orsched::ComputeMetrics(instance->value, schedule->value);
    Emit(json, {{"objective", orsched::ObjectiveToJson(objective)},
                {"metrics", orsched::MetricsToJson(metrics)}});
    return ORS_OK;
  });
}

void ors_solve_options_init(ors_solve_options* options) {
  if (options == nullptr) return;
  const orsched::SolverConfig defaults;
  options->time_limit = defaults.time_limit;
  options->seed = defaults.seed;
  options->iteration_limit = defaults.iteration_limit;
  options->max_stall = defaults.max_stall_iterations;
  options->emit_incumbents = defaults.emit_incumbents ? 1 : 0;
}

ors_status ors_solve(const ors_instance* instance,
                     const ors_solve_options* options,
                     ors_incumbent_fn on_incumbent, void* user_data,
                     ors_schedule** out, char** outcome_json) {
  return Guard([&] {
    Require(instance != nullptr && out != nullptr, "null argument");
    const orsched::SolverConfig config = ConfigFrom(options);
    orsched::IncumbentSink sink;
    if (on_incumbent != nullptr) {
      sink = [&](const orsched::Incumbent& inc) {
        const std::string objective = orsched::ObjectiveToJson(inc.objective).dump();
        on_incumbent(user_data, inc.index, objective.c_str(), inc.elapsed);
      };
    }
    const orsched::SolveOutcome outcome =
        orsched::Solve(instance->value, config, sink);
    if (outcome_json != nullptr) {
      Json doc = orsched::SolveOutcomeToJson(outcome);
      doc.erase("schedule");
      doc["exhaustive_fallback"] = outcome.exhaustive_fallback;
      Emit(outcome_json, doc);
    }
    *out = new ors_schedule{outcome.best_schedule};
    return ORS_OK;
  });
}

ors_status ors_reschedule(const ors_instance* instance,
                          const ors_schedule* old_schedule,
                          const char* disruption_json,
                          const ors_solve_options* options,
                          ors_incumbent_fn on_incumbent, void* user_data,
                          ors_schedule** out, char** outcome_json) {
  return Guard([&] {
    Require(out != nullptr, "null argument");
    const orsched::RescheduleRequest request =
        RequestFrom(instance, old_schedule, disruption_json);
    const orsched::SolverConfig config = ConfigFrom(options);
    orsched::RescheduleSink sink;
    if (on_incumbent != nullptr) {
      sink = [&](const orsched::RescheduleIncumbent& inc) {
        const std::string objective =
            orsched::RescheduleObjectiveToJson(inc.objective).dump();
        on_incumbent(user_data, inc.index, objective.c_str(), inc.elapsed);
      };
    }
    const orsched::RescheduleOutcome outcome =
        orsched::Reschedule(request, config, sink);
    if (outcome_json != nullptr) {
      Json doc = orsched::RescheduleOutcomeToJson(outcome);
      doc.erase("schedule");
      doc["postponed"] = request.postponed;
      Emit(outcome_json, doc);
    }
    *out = new ors_schedule{outcome.new_schedule};
    return ORS_OK;
  });
}

ors_status ors_oracle_schedule(const ors_instance* instance,
                               ors_schedule** out, char** objective_json) {
  return Guard([&] {
    Require(instance != nullptr && out != nullptr, "null argument");
    const orsched::OracleResult result =
        orsched::BruteForceSchedule(instance->value, orsched::OracleLimits{});
    Emit(objective_json, orsched::ObjectiveToJson(result.objective));
    *out = new ors_schedule{result.schedule};
    return ORS_OK;
  });
}

ors_status ors_oracle_reschedule(const ors_instance* instance,
                                 const ors_schedule* old_schedule,
                                 const char* disruption_json,
                                 ors_schedule** out, char** objective_json) {
  return Guard([&] {
    Require(out != nullptr, "null argument");
    const orsched::RescheduleRequest request =
        RequestFrom(instance, old_schedule, disruption_json);
    const orsched::RescheduleOracleResult result =
        orsched::BruteForceReschedule(request, orsched::OracleLimits{});
    Emit(objective_json, orsched::RescheduleObjectiveToJson(result.objective));
    *out = new ors_schedule{result.schedule};
    return ORS_OK;
  });
}

ors_status ors_bench(const char* scenario, int days, int runs,
                     uint64_t first_seed, const ors_solve_options* options,
                     char** report_json, char** report_text) {
  return Guard([&] {
    Require(scenario != nullptr, "null scenario");
    orsched::BenchConfig config;
    config.scenario = orsched::ScenarioPreset(scenario);
    config.days = days;
    config.runs = runs;
    config.first_seed = first_seed;
    config.solver = ConfigFrom(options);
    const orsched::BenchmarkReport report = orsched::RunBenchmark(config);
    Emit(report_json, orsched::BenchmarkToJson(report));
    if (report_text != nullptr) *report_text = Copy(orsched::FormatBenchmarkText(report));
    return ORS_OK;
  });
}

ors_status ors_serve(const char* host, int port, const char* store_dir,
                     const char* token, ors_bound_fn on_bound,
                     void* user_data) {
  return Guard([&] {
    Require(host != nullptr && port >= 0 && port <= 65535, "invalid address");
    orsched::ServiceOptions options;
    if (store_dir != nullptr) options.store_dir = store_dir;
    if (token != nullptr) options.token = token;
    orsched::Service service(options);
    int bound = port;
    if (port == 0) {
      bound = service.BindToAnyPort(host);
      if (bound < 0) throw Error(ErrorCode::kIo, "cannot bind");
    } else if (!service.Bind(host, port)) {
      throw Error(ErrorCode::kIo, "cannot bind port " + std::to_string(port));
    }
    if (on_bound != nullptr) on_bound(user_data, bound);
    if (!service.Listen()) throw Error(ErrorCode::kIo, "server stopped");
    return ORS_OK;
  });
}

}  // extern "C"
