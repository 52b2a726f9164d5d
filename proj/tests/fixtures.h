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

#ifndef ORSCHED_TESTS_FIXTURES_H_
#define ORSCHED_TESTS_FIXTURES_H_

#include <cstdint>
#include <optional>

#include "model.h"
#include "rescheduler.h"
#include "rng.h"

namespace orsched::testing {

// One specialty (ward 1): `ors` rooms x `sessions` sessions per day, all days
// in the MSS, every ward/ICU day with the given beds.
Instance Grid(int horizon, int ors, int sessions, int minutes, int ward_beds,
              int icu_beds);

Registration Reg(int id, int priority, int duration, int los_after = 0,
                 int specialty = 1, int icu_los = 0, int admit_advance = 0);

// Random instance with <= 8 registrations, <= 2 ORs, <= 2 days, <= 2
// sessions and tight beds. Always passes ValidateInstance.
Instance RandomTinyInstance(Rng& rng);

// Random repair request over a 3-day horizon disrupted on day 1, built on a
// feasible old schedule, whose residual problem fits the oracle limits.
// Returns nullopt when the draw does not yield such a request.
std::optional<RescheduleRequest> RandomTinyReschedule(Rng& rng);

// Baseline plan and disruption of the repair fixture: Scenario A,
// 5 days, specialty 1, the `postponed` smallest day-2 ids postponed.
RescheduleRequest DayTwoRepairRequest(uint64_t seed, int postponed,
                                     int64_t baseline_iterations);

}  // namespace orsched::testing

#endif  // ORSCHED_TESTS_FIXTURES_H_
