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

#include "json_io.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "status.h"

namespace orsched {
namespace {

template <typename F>
auto Guard(const char* what, F&& body) -> decltype(body()) {
  try {
    return body();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string(what) + ": " + e.what());
  }
}

void CheckFormat(const Json& doc, const char* what) {
  if (!doc.is_object()) {
    throw Error(ErrorCode::kParse, std::string(what) + ": expected an object");
  }
  if (doc.contains("format") && doc.at("format").get<int>() != kFormatVersion) {
    throw Error(ErrorCode::kParse, std::string(what) + ": unsupported format " +
                                       doc.at("format").dump());
  }
}

}  // namespace

Json InstanceToJson(const Instance& instance) {
  Json doc;
  doc["format"] = kFormatVersion;
  doc["horizon"] = instance.horizon;
  doc["registrations"] = Json::array();
  for (const Registration& r : instance.registrations) {
    doc["registrations"].push_back({{"id", r.id},
                                    {"priority", r.priority},
                                    {"surgery_duration", r.surgery_duration},
                                    {"los_after", r.los_after},
                                    {"specialty", r.specialty},
                                    {"icu_los", r.icu_los},
                                    {"admit_advance", r.admit_advance}});
  }
  doc["mss"] = Json::array();
  for (const MssSlot& s : instance.mss) {
    doc["mss"].push_back({{"or_id", s.or_id},
                          {"session", s.session},
                          {"specialty", s.specialty},
                          {"day", s.day}});
  }
  doc["capacities"] = Json::array();
  for (const SessionCapacity& c : instance.capacities) {
    doc["capacities"].push_back(
        {{"or_id", c.or_id}, {"session", c.session}, {"duration", c.duration}});
  }
  doc["beds"] = Json::array();
  for (const BedAvailability& b : instance.beds) {
    doc["beds"].push_back(
        {{"ward", b.ward}, {"day", b.day}, {"available", b.available}});
  }
  if (instance.generation) {
    const GenerationInfo& g = *instance.generation;
    doc["metadata"] = {{"scenario", g.scenario},
                       {"seed", g.seed},
                       {"days", g.days},
                       {"generator", g.generator},
                       {"cycled_beds", g.cycled_beds},
                       {"proportional_counts", g.proportional_counts}};
  }
  return doc;
}

Instance InstanceFromJson(const Json& doc) {
  return Guard("instance", [&] {
    CheckFormat(doc, "instance");
    Instance instance;
    instance.horizon = doc.at("horizon").get<int>();
    for (const Json& r : doc.at("registrations")) {
      instance.registrations.push_back(
          {r.at("id").get<int>(), r.at("priority").get<int>(),
           r.at("surgery_duration").get<int>(), r.at("los_after").get<int>(),
           r.at("specialty").get<int>(), r.at("icu_los").get<int>(),
           r.at("admit_advance").get<int>()});
    }
    for (const Json& s : doc.at("mss")) {
      instance.mss.push_back({s.at("or_id").get<int>(), s.at("session").get<int>(),
                              s.at("specialty").get<int>(), s.at("day").get<int>()});
    }
    for (const Json& c : doc.at("capacities")) {
      instance.capacities.push_back({c.at("or_id").get<int>(),
                                     c.at("session").get<int>(),
                                     c.at("duration").get<int>()});
    }
    for (const Json& b : doc.at("beds")) {
      instance.beds.push_back({b.at("ward").get<int>(), b.at("day").get<int>(),
                               b.at("available").get<int>()});
    }
    if (doc.contains("metadata")) {
      const Json& m = doc.at("metadata");
      GenerationInfo g;
      g.scenario = m.value("scenario", "");
      g.seed = m.value("seed", uint64_t{0});
      g.days = m.value("days", 0);
      g.generator = m.value("generator", "");
      g.cycled_beds = m.value("cycled_beds", false);
      g.proportional_counts = m.value("proportional_counts", false);
      instance.generation = g;
    }
    return instance;
  });
}

Json ScheduleToJson(const Schedule& schedule) {
  Json doc;
  doc["format"] = kFormatVersion;
  doc["assignments"] = Json::array();
  for (const Assignment& a : schedule.assignments) {
    doc["assignments"].push_back({{"registration_id", a.registration_id},
                                  {"priority", a.priority},
                                  {"or_id", a.or_id},
                                  {"session", a.session},
                                  {"day", a.day}});
  }
  return doc;
}

Schedule ScheduleFromJson(const Json& doc) {
  return Guard("schedule", [&] {
    CheckFormat(doc, "schedule");
    Schedule schedule;
    for (const Json& a : doc.at("assignments")) {
      schedule.assignments.push_back(
          {a.at("registration_id").get<int>(), a.at("priority").get<int>(),
           a.at("or_id").get<int>(), a.at("session").get<int>(),
           a.at("day").get<int>()});
    }
    return schedule;
  });
}

Json ValidationReportToJson(const ValidationReport& report) {
  Json issues = Json::array();
  for (const ValidationIssue& i : report.issues) {
    issues.push_back({{"code", i.code}, {"detail", i.detail}});
  }
  return {{"ok", report.ok()}, {"violations", issues}};
}

Json ViolationsToJson(const std::vector<Violation>& violations) {
  Json list = Json::array();
  for (const Violation& v : violations) {
    Json item = {{"code", std::string(ViolationCodeName(v.code))},
                 {"registrations", v.registrations},
                 {"detail", v.detail}};
    if (v.or_id >= 0) item["or_id"] = v.or_id;
    if (v.session >= 0) item["session"] = v.session;
    if (v.day >= 0) item["day"] = v.day;
    if (v.ward >= 0) item["ward"] = v.ward;
    list.push_back(std::move(item));
  }
  return list;
}

Json ObjectiveToJson(const ObjectiveVector& objective) {
  return {{"unassigned_p2", objective.unassigned_p2},
          {"unassigned_p3", objective.unassigned_p3}};
}

Json MetricsToJson(const Metrics& metrics) {
  Json by_priority = Json::array();
  for (const PriorityCount& c : metrics.assigned_by_priority) {
    by_priority.push_back({{"assigned", c.assigned}, {"total", c.total}});
  }
  return {{"assigned_by_priority", by_priority},
          {"or_time_efficiency", metrics.or_time_efficiency},
          {"bed_occupancy_efficiency", metrics.bed_occupancy_efficiency},
          {"used_minutes", metrics.used_minutes},
          {"offered_minutes", metrics.offered_minutes},
          {"occupied_bed_days", metrics.occupied_bed_days},
          {"available_bed_days", metrics.available_bed_days}};
}

Json RescheduleObjectiveToJson(const RescheduleObjective& objective) {
  return {{"level4", objective.level4},
          {"level3", objective.level3},
          {"level2", objective.level2},
          {"level1", objective.level1}};
}

Json DisruptionToJson(const RescheduleRequest& request) {
  Json doc = {{"disruption_day", request.disruption_day},
              {"postponed", request.postponed}};
  if (request.first_day > 0 || request.last_day > 0) {
    doc["reschedule_days"] = {{"first", request.first_day},
                              {"last", request.last_day}};
  }
  doc["specialty"] = request.specialty ? Json(*request.specialty) : Json(nullptr);
  return doc;
}

void DisruptionFromJson(const Json& doc, RescheduleRequest& request) {
  Guard("disruption", [&] {
    if (!doc.is_object()) {
      throw Error(ErrorCode::kParse, "disruption: expected an object");
    }
    request.disruption_day = doc.value("disruption_day", 2);
    if (doc.contains("reschedule_days")) {
      const Json& days = doc.at("reschedule_days");
      request.first_day = days.value("first", 0);
      request.last_day = days.value("last", 0);
    }
    request.specialty.reset();
    if (doc.contains("specialty") && !doc.at("specialty").is_null()) {
      request.specialty = doc.at("specialty").get<int>();
    }
    if (doc.contains("postponed_count")) {
      request.postponed = FirstPlannedOn(
          request.instance, request.old_schedule, request.disruption_day,
          request.specialty, doc.at("postponed_count").get<int>());
    } else {
      request.postponed = doc.at("postponed").get<std::vector<int>>();
    }
    return 0;
  });
}

Json SolveOutcomeToJson(const SolveOutcome& outcome) {
  return {{"schedule", ScheduleToJson(outcome.best_schedule)},
          {"objective", ObjectiveToJson(outcome.objective)},
          {"proved_optimal", outcome.proved_optimal},
          {"incumbents_emitted", outcome.incumbents_emitted},
          {"elapsed", outcome.elapsed},
          {"iterations", outcome.iterations},
          {"restarts", outcome.restarts}};
}

Json RescheduleOutcomeToJson(const RescheduleOutcome& outcome) {
  return {{"schedule", ScheduleToJson(outcome.new_schedule)},
          {"objective", RescheduleObjectiveToJson(outcome.objective)},
          {"dropped", outcome.dropped},
          {"level4_offset", outcome.level4_offset},
          {"proved_optimal", outcome.proved_optimal},
          {"incumbents_emitted", outcome.incumbents_emitted},
          {"elapsed", outcome.elapsed},
          {"iterations", outcome.iterations}};
}

Json ScenarioSpecToJson(const ScenarioSpec& spec) {
  Json params = Json::array();
  for (const SpecialtyGenParams& p : spec.specialty_params) {
    params.push_back({{"specialty", p.specialty},
                      {"registrations_per_5day", p.registrations_per_5day},
                      {"or_count", p.or_count},
                      {"surgery_mean", p.surgery_mean},
                      {"surgery_std", p.surgery_std},
                      {"los_mean", p.los_mean},
                      {"los_std", p.los_std},
                      {"icu_fraction", p.icu_fraction},
                      {"icu_mean", p.icu_mean},
                      {"icu_std", p.icu_std},
                      {"admit_advance", p.admit_advance}});
  }
  Json beds = Json::array();
  for (const BedAvailability& b : spec.bed_table) {
    beds.push_back({{"ward", b.ward}, {"day", b.day}, {"available", b.available}});
  }
  return {{"name", spec.name},
          {"specialty_params", params},
          {"bed_table", beds},
          {"priority_weights", spec.priority_weights},
          {"sessions_per_day", spec.sessions_per_day},
          {"session_minutes", spec.session_minutes}};
}

ScenarioSpec ScenarioSpecFromJson(const Json& doc) {
  return Guard("scenario", [&] {
    ScenarioSpec spec;
    spec.name = doc.at("name").get<std::string>();
    for (const Json& p : doc.at("specialty_params")) {
      SpecialtyGenParams g;
      g.specialty = p.at("specialty").get<int>();
      g.registrations_per_5day = p.at("registrations_per_5day").get<int>();
      g.or_count = p.at("or_count").get<int>();
      g.surgery_mean = p.at("surgery_mean").get<double>();
      g.surgery_std = p.at("surgery_std").get<double>();
      g.los_mean = p.at("los_mean").get<double>();
      g.los_std = p.at("los_std").get<double>();
      g.icu_fraction = p.at("icu_fraction").get<double>();
      g.icu_mean = p.at("icu_mean").get<double>();
      g.icu_std = p.at("icu_std").get<double>();
      g.admit_advance = p.at("admit_advance").get<int>();
      spec.specialty_params.push_back(g);
    }
    for (const Json& b : doc.at("bed_table")) {
      spec.bed_table.push_back({b.at("ward").get<int>(), b.at("day").get<int>(),
                                b.at("available").get<int>()});
    }
    if (doc.contains("priority_weights")) {
      spec.priority_weights = doc.at("priority_weights").get<std::array<double, 3>>();
    }
    spec.sessions_per_day = doc.value("sessions_per_day", 2);
    spec.session_minutes = doc.value("session_minutes", 300);
    return spec;
  });
}

std::string Dump(const Json& doc) { return doc.dump(2) + "\n"; }

Json ParseJson(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, e.what());
  }
}

Json ReadJsonFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return ParseJson(text.str());
}

void WriteJsonFile(const std::string& path, const Json& doc) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIo, "cannot write " + tmp);
    out << Dump(doc);
    if (!out) throw Error(ErrorCode::kIo, "short write to " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot rename " + tmp + ": " + ec.message());
}

}  // namespace orsched
