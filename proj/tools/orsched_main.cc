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

// orsched command-line tool. Exit status: 0 on success, 1 when a schedule
// fails verification or no feasible schedule exists, 2 on bad arguments.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "orsched/orsched.h"

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct InstanceDeleter {
  void operator()(ors_instance* p) const { ors_instance_free(p); }
};
struct ScheduleDeleter {
  void operator()(ors_schedule* p) const { ors_schedule_free(p); }
};
struct StringDeleter {
  void operator()(char* p) const { ors_string_free(p); }
};
using InstancePtr = std::unique_ptr<ors_instance, InstanceDeleter>;
using SchedulePtr = std::unique_ptr<ors_schedule, ScheduleDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

// Carries a library status out of a subcommand.
struct Failure {
  ors_status status;
};

void Check(ors_status status) {
  if (status != ORS_OK) throw Failure{status};
}

int ExitCodeFor(ors_status status) {
  switch (status) {
    case ORS_INVALID_ARGUMENT:
    case ORS_PARSE_ERROR:
    case ORS_IO_ERROR:
    case ORS_NOT_FOUND:
    case ORS_LIMITS_EXCEEDED:
      return kExitUsage;
    default:
      return kExitFailure;
  }
}

InstancePtr LoadInstance(const std::string& path) {
  ors_instance* raw = nullptr;
  Check(ors_instance_load(path.c_str(), &raw));
  return InstancePtr(raw);
}

SchedulePtr LoadSchedule(const std::string& path) {
  ors_schedule* raw = nullptr;
  Check(ors_schedule_load(path.c_str(), &raw));
  return SchedulePtr(raw);
}

void WriteInstance(const ors_instance* instance, const std::string& out) {
  if (!out.empty()) {
    Check(ors_instance_save(instance, out.c_str()));
    return;
  }
  char* raw = nullptr;
  Check(ors_instance_to_json(instance, &raw));
  StringPtr text(raw);
  std::fputs(text.get(), stdout);
}

void WriteSchedule(const ors_schedule* schedule, const std::string& out) {
  if (!out.empty()) {
    Check(ors_schedule_save(schedule, out.c_str()));
    return;
  }
  char* raw = nullptr;
  Check(ors_schedule_to_json(schedule, &raw));
  StringPtr text(raw);
  std::fputs(text.get(), stdout);
}

void WriteText(const std::string& path, const char* text) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file || !(file << text)) throw Failure{ORS_IO_ERROR};
}

void PrintIncumbent(void* user_data, int index, const char* objective,
                    double elapsed) {
  if (user_data != nullptr) return;  // quiet
  std::fprintf(stderr, "incumbent %d at %.3f s: %s\n", index, elapsed, objective);
}

struct BudgetFlags {
  double timeout = 60.0;
  int64_t iterations = 0;
  uint64_t seed = 1;
  int64_t max_stall = 2000;

  void Add(CLI::App* cmd) {
    cmd->add_option("--timeout", timeout, "Wall-clock limit in seconds")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--iterations", iterations,
                    "Local-search iteration budget (deterministic runs)")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--seed", seed, "Search seed");
    cmd->add_option("--max-stall", max_stall,
                    "Iterations without improvement before a restart")
        ->check(CLI::PositiveNumber);
  }

  ors_solve_options Options() const {
    ors_solve_options o;
    ors_solve_options_init(&o);
    o.time_limit = timeout;
    o.iteration_limit = iterations;
    o.seed = seed;
    o.max_stall = max_stall;
    return o;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Operating room scheduling with bed management"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(ors_version()));

  // generate
  std::string scenario = "A";
  std::string spec_path;
  int days = 5;
  uint64_t gen_seed = 1;
  std::string out;
  auto* generate = app.add_subcommand("generate", "Generate a scenario instance");
  generate->add_option("--scenario", scenario, "Preset A, B or C")
      ->check(CLI::IsMember({"A", "B", "C"}));
  generate->add_option("--spec", spec_path, "Generation spec file (overrides --scenario)")
      ->check(CLI::ExistingFile);
  generate->add_option("--days", days, "Horizon in days")->check(CLI::PositiveNumber);
  generate->add_option("--seed", gen_seed, "Generation seed");
  generate->add_option("--out", out, "Output file (default stdout)");

  // solve
  std::string instance_path;
  bool use_oracle = false;
  bool quiet = false;
  std::string outcome_path;
  BudgetFlags solve_budget;
  auto* solve = app.add_subcommand("solve", "Compute a schedule");
  solve->add_option("--instance", instance_path, "Instance file")->required();
  solve->add_option("--out", out, "Schedule file (default stdout)");
  solve->add_option("--outcome", outcome_path, "Write the outcome summary here");
  solve->add_flag("--oracle", use_oracle, "Exhaustive enumeration (tiny instances)");
  solve->add_flag("--quiet", quiet, "Do not print incumbents");
  solve_budget.Add(solve);

  // reschedule
  std::string old_path;
  std::string disruption_path;
  int disruption_day = 2;
  std::vector<int> postponed;
  std::optional<int> postponed_count;
  std::optional<int> specialty;
  int first_day = 0;
  int last_day = 0;
  BudgetFlags resched_budget;
  auto* reschedule = app.add_subcommand("reschedule", "Repair a schedule after a disruption");
  reschedule->add_option("--instance", instance_path, "Instance file")->required();
  reschedule->add_option("--old", old_path, "Schedule being repaired")->required();
  auto* disruption_opt = reschedule->add_option(
      "--disruption", disruption_path, "Disruption descriptor file");
  reschedule->add_option("--day", disruption_day, "Disruption day")
      ->excludes(disruption_opt);
  reschedule->add_option("--postponed", postponed, "Postponed registration ids")
      ->delimiter(',')
      ->excludes(disruption_opt);
  reschedule->add_option("--postponed-count", postponed_count,
                         "Postpone the k smallest ids planned on the day")
      ->excludes(disruption_opt);
  reschedule->add_option("--specialty", specialty, "Reschedule one specialty")
      ->excludes(disruption_opt);
  reschedule->add_option("--first-day", first_day, "First day open for changes")
      ->excludes(disruption_opt);
  reschedule->add_option("--last-day", last_day, "Last day open for changes")
      ->excludes(disruption_opt);
  reschedule->add_option("--out", out, "New schedule file (default stdout)");
  reschedule->add_option("--outcome", outcome_path, "Write the outcome summary here");
  reschedule->add_flag("--oracle", use_oracle, "Exhaustive enumeration (tiny instances)");
  reschedule->add_flag("--quiet", quiet, "Do not print incumbents");
  resched_budget.Add(reschedule);

  // verify
  std::string schedule_path;
  auto* verify = app.add_subcommand("verify", "Check a schedule against an instance");
  verify->add_option("--instance", instance_path, "Instance file")->required();
  verify->add_option("--schedule", schedule_path, "Schedule file")->required();

  // bench
  int runs = 10;
  uint64_t first_seed = 1;
  std::string report_path;
  BudgetFlags bench_budget;
  auto* bench = app.add_subcommand("bench", "Solve seeded instances and report");
  bench->add_option("--scenario", scenario, "Preset A, B or C")
      ->check(CLI::IsMember({"A", "B", "C"}));
  bench->add_option("--days", days, "Horizon in days")->check(CLI::PositiveNumber);
  bench->add_option("--runs", runs, "Number of instances")->check(CLI::PositiveNumber);
  bench->add_option("--first-seed", first_seed, "Seed of the first instance");
  bench->add_option("--out", report_path, "Machine-readable report file");
  bench_budget.Add(bench);

  // serve
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string store = "orsched-store";
  std::string token;
  auto* serve = app.add_subcommand("serve", "Run the HTTP service");
  serve->add_option("--host", host, "Listen address")->envname("ORSCHED_HOST");
  serve->add_option("--port", port, "Listen port (0 = any)")
      ->envname("ORSCHED_PORT")
      ->check(CLI::Range(0, 65535));
  serve->add_option("--store", store, "Scenario store directory")
      ->envname("ORSCHED_STORE");
  serve->add_option("--token", token, "Bearer token required on requests")
      ->envname("ORSCHED_TOKEN");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*generate) {
      ors_instance* raw = nullptr;
      if (!spec_path.empty()) {
        std::ifstream file(spec_path, std::ios::binary);
        const std::string text((std::istreambuf_iterator<char>(file)),
                               std::istreambuf_iterator<char>());
        Check(ors_generate_from_spec(text.c_str(), days, gen_seed, &raw));
      } else {
        Check(ors_generate(scenario.c_str(), days, gen_seed, &raw));
      }
      InstancePtr instance(raw);
      WriteInstance(instance.get(), out);
      return 0;
    }

    if (*solve) {
      InstancePtr instance = LoadInstance(instance_path);
      ors_schedule* raw = nullptr;
      char* summary = nullptr;
      if (use_oracle) {
        Check(ors_oracle_schedule(instance.get(), &raw, &summary));
      } else {
        const ors_solve_options options = solve_budget.Options();
        Check(ors_solve(instance.get(), &options, PrintIncumbent,
                        quiet ? &quiet : nullptr, &raw, &summary));
      }
      SchedulePtr schedule(raw);
      StringPtr summary_text(summary);
      WriteSchedule(schedule.get(), out);
      if (!outcome_path.empty()) WriteText(outcome_path, summary_text.get());
      if (!quiet) std::fputs(summary_text.get(), stderr);
      return 0;
    }

    if (*reschedule) {
      InstancePtr instance = LoadInstance(instance_path);
      SchedulePtr old_schedule = LoadSchedule(old_path);
      std::string disruption;
      if (!disruption_path.empty()) {
        std::ifstream file(disruption_path, std::ios::binary);
        if (!file) throw Failure{ORS_IO_ERROR};
        disruption.assign(std::istreambuf_iterator<char>(file),
                          std::istreambuf_iterator<char>());
      } else {
        nlohmann::json doc = {{"disruption_day", disruption_day}};
        if (postponed_count) {
          doc["postponed_count"] = *postponed_count;
        } else {
          doc["postponed"] = postponed;
        }
        if (first_day > 0 || last_day > 0) {
          doc["reschedule_days"] = {{"first", first_day}, {"last", last_day}};
        }
        doc["specialty"] = specialty ? nlohmann::json(*specialty) : nlohmann::json();
        disruption = doc.dump();
      }
      ors_schedule* raw = nullptr;
      char* summary = nullptr;
      if (use_oracle) {
        Check(ors_oracle_reschedule(instance.get(), old_schedule.get(),
                                    disruption.c_str(), &raw, &summary));
      } else {
        const ors_solve_options options = resched_budget.Options();
        Check(ors_reschedule(instance.get(), old_schedule.get(),
                             disruption.c_str(), &options, PrintIncumbent,
                             quiet ? &quiet : nullptr, &raw, &summary));
      }
      SchedulePtr schedule(raw);
      StringPtr summary_text(summary);
      WriteSchedule(schedule.get(), out);
      if (!outcome_path.empty()) WriteText(outcome_path, summary_text.get());
      if (!quiet) std::fputs(summary_text.get(), stderr);
      return 0;
    }

    if (*verify) {
      InstancePtr instance = LoadInstance(instance_path);
      SchedulePtr schedule = LoadSchedule(schedule_path);
      char* raw = nullptr;
      const ors_status status = ors_verify(instance.get(), schedule.get(), &raw);
      StringPtr violations(raw);
      if (status != ORS_OK && status != ORS_SCHEDULE_VIOLATIONS) throw Failure{status};
      std::fputs(violations.get(), stdout);
      if (status == ORS_SCHEDULE_VIOLATIONS) return kExitFailure;
      char* metrics = nullptr;
      Check(ors_evaluate(instance.get(), schedule.get(), &metrics));
      StringPtr metrics_text(metrics);
      std::fputs(metrics_text.get(), stderr);
      return 0;
    }

    if (*bench) {
      const ors_solve_options options = bench_budget.Options();
      char* json = nullptr;
      char* text = nullptr;
      Check(ors_bench(scenario.c_str(), days, runs, first_seed, &options, &json,
                      &text));
      StringPtr json_text(json);
      StringPtr table(text);
      std::fputs(table.get(), stdout);
      if (!report_path.empty()) WriteText(report_path, json_text.get());
      return 0;
    }

    if (*serve) {
      Check(ors_serve(
          host.c_str(), port, store.c_str(), token.c_str(),
          [](void*, int bound) {
            std::fprintf(stderr, "listening on port %d\n", bound);
          },
          nullptr));
      return 0;
    }
  } catch (const Failure& f) {
    std::fprintf(stderr, "error: %s: %s\n", ors_status_name(f.status),
                 ors_last_error());
    return ExitCodeFor(f.status);
  }
  return kExitUsage;
}
