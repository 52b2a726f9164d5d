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

#include "fixtures.h"

#include <algorithm>

#include "generator.h"
#include "solver.h"
#include "status.h"

namespace orsched::testing {

Instance Grid(int horizon, int ors, int sessions, int minutes, int ward_beds,
              int icu_beds) {
  Instance instance;
  instance.horizon = horizon;
  for (int o = 1; o <= ors; ++o) {
    for (int s = 1; s <= sessions; ++s) {
      instance.capacities.push_back({o, s, minutes});
      for (int d = 1; d <= horizon; ++d) instance.mss.push_back({o, s, 1, d});
    }
  }
  for (int d = 1; d <= horizon; ++d) {
    instance.beds.push_back({0, d, icu_beds});
    instance.beds.push_back({1, d, ward_beds});
  }
  return instance;
}

Registration Reg(int id, int priority, int duration, int los_after,
                 int specialty, int icu_los, int admit_advance) {
  return {id, priority, duration, los_after, specialty, icu_los, admit_advance};
}

namespace {

int Between(Rng& rng, int lo, int hi) {
  return lo + static_cast<int>(rng.Below(static_cast<uint64_t>(hi - lo + 1)));
}

}  // namespace

Instance RandomTinyInstance(Rng& rng) {
  Instance instance;
  instance.horizon = Between(rng, 1, 2);
  const int ors = Between(rng, 1, 2);
  const int sessions = Between(rng, 1, 2);
  const int specialties = Between(rng, 1, 2);
  for (int o = 1; o <= ors; ++o) {
    for (int s = 1; s <= sessions; ++s) {
      instance.capacities.push_back({o, s, 60 * Between(rng, 2, 5)});
      for (int d = 1; d <= instance.horizon; ++d) {
        // Some sessions stay out of the MSS.
        if (rng.Below(6) == 0) continue;
        instance.mss.push_back({o, s, Between(rng, 1, specialties), d});
      }
    }
  }
  const int count = Between(rng, 1, 8);
  for (int id = 1; id <= count; ++id) {
    Registration r;
    r.id = id;
    const uint64_t p = rng.Below(10);
    r.priority = p < 2 ? 1 : (p < 6 ? 2 : 3);
    r.surgery_duration = 10 * Between(rng, 3, 20);
    r.specialty = Between(rng, 1, specialties);
    r.los_after = Between(rng, 0, 3);
    r.icu_los = rng.Below(3) == 0 ? Between(rng, 0, r.los_after) : 0;
    r.admit_advance = Between(rng, 0, 1);
    instance.registrations.push_back(r);
  }
  for (int ward = 0; ward <= specialties; ++ward) {
    for (int d = 1; d <= instance.horizon; ++d) {
      instance.beds.push_back({ward, d, Between(rng, ward == 0 ? 0 : 1, 4)});
    }
  }
  return instance;
}

std::optional<RescheduleRequest> RandomTinyReschedule(Rng& rng) {
  Instance instance;
  instance.horizon = 3;
  const int ors = Between(rng, 1, 2);
  const int specialties = Between(rng, 1, 2);
  for (int o = 1; o <= ors; ++o) {
    const int specialty = 1 + (o - 1) % specialties;
    for (int s = 1; s <= 2; ++s) {
      instance.capacities.push_back({o, s, 60 * Between(rng, 3, 5)});
      for (int d = 1; d <= 3; ++d) instance.mss.push_back({o, s, specialty, d});
    }
  }
  const int count = Between(rng, 4, 14);
  for (int id = 1; id <= count; ++id) {
    Registration r;
    r.id = id;
    const uint64_t p = rng.Below(10);
    r.priority = p < 2 ? 1 : (p < 5 ? 2 : 3);
    r.surgery_duration = 10 * Between(rng, 6, 20);
    r.specialty = Between(rng, 1, specialties);
    r.los_after = Between(rng, 0, 3);
    r.icu_los = rng.Below(4) == 0 ? Between(rng, 0, r.los_after) : 0;
    r.admit_advance = Between(rng, 0, 1);
    instance.registrations.push_back(r);
  }
  for (int ward = 0; ward <= specialties; ++ward) {
    for (int d = 1; d <= 3; ++d) {
      instance.beds.push_back({ward, d, Between(rng, ward == 0 ? 1 : 3, 8)});
    }
  }

  SolverConfig config;
  config.seed = rng.Next();
  config.iteration_limit = 20000;
  config.emit_incumbents = false;
  RescheduleRequest request;
  try {
    request.old_schedule = Solve(instance, config).best_schedule;
  } catch (const Error&) {
    return std::nullopt;
  }
  request.instance = instance;
  request.disruption_day = 1;
  if (rng.Below(3) == 0) request.specialty = 1;
  for (const Assignment& a : request.old_schedule.assignments) {
    const Registration& r = instance.registrations[a.registration_id - 1];
    const bool in_scope = !request.specialty || r.specialty == *request.specialty;
    if (a.day == 1 && in_scope && rng.Below(3) != 0) {
      request.postponed.push_back(a.registration_id);
    }
  }
  if (request.postponed.empty()) return std::nullopt;
  const ResidualProblem problem = BuildResidualProblem(request);
  if (problem.instance.registrations.size() > 8 || problem.instance.mss.size() > 8) {
    return std::nullopt;
  }
  return request;
}

RescheduleRequest DayTwoRepairRequest(uint64_t seed, int postponed,
                                     int64_t baseline_iterations) {
  RescheduleRequest request;
  request.instance = GenerateInstance(ScenarioPreset("A"), 5, seed);
  SolverConfig config;
  config.seed = seed;
  config.iteration_limit = baseline_iterations;
  config.emit_incumbents = false;
  request.old_schedule = Solve(request.instance, config).best_schedule;
  request.disruption_day = 2;
  request.specialty = 1;
  request.postponed = FirstPlannedOn(request.instance, request.old_schedule, 2,
                                     request.specialty, postponed);
  return request;
}

}  // namespace orsched::testing
