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

#ifndef ORSCHED_JSON_IO_H_
#define ORSCHED_JSON_IO_H_

#include <string>
#include <vector>

#include "json.hpp"

#include "generator.h"
#include "model.h"
#include "rescheduler.h"
#include "solver.h"
#include "verifier.h"

namespace orsched {

// Version of the instance and schedule documents.
inline constexpr int kFormatVersion = 1;

using Json = nlohmann::json;

// All *FromJson functions throw Error(kParse) on malformed documents.
Json InstanceToJson(const Instance& instance);
Instance InstanceFromJson(const Json& doc);

Json ScheduleToJson(const Schedule& schedule);
Schedule ScheduleFromJson(const Json& doc);

Json ValidationReportToJson(const ValidationReport& report);
Json ViolationsToJson(const std::vector<Violation>& violations);
Json ObjectiveToJson(const ObjectiveVector& objective);
Json MetricsToJson(const Metrics& metrics);
Json RescheduleObjectiveToJson(const RescheduleObjective& objective);

// Disruption descriptor: disruption_day, postponed, reschedule_days
// ({"first", "last"}), specialty (null = all). Instance and old schedule come
// from their own documents. "postponed_count": k may replace "postponed"; it
// selects the k smallest ids planned on the disruption day in scope, so the
// request's instance and old schedule must be set first.
Json DisruptionToJson(const RescheduleRequest& request);
void DisruptionFromJson(const Json& doc, RescheduleRequest& request);

Json SolveOutcomeToJson(const SolveOutcome& outcome);
Json RescheduleOutcomeToJson(const RescheduleOutcome& outcome);

Json ScenarioSpecToJson(const ScenarioSpec& spec);
ScenarioSpec ScenarioSpecFromJson(const Json& doc);

// Stable text form: two-space indent, sorted keys, trailing newline.
std::string Dump(const Json& doc);
Json ParseJson(const std::string& text);
Json ReadJsonFile(const std::string& path);    // Error(kIo) / Error(kParse)
void WriteJsonFile(const std::string& path, const Json& doc);  // Error(kIo)

}  // namespace orsched

#endif  // ORSCHED_JSON_IO_H_
