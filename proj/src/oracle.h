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

#ifndef ORSCHED_ORACLE_H_
#define ORSCHED_ORACLE_H_

#include <cstdint>

#include "model.h"
#include "rescheduler.h"
#include "verifier.h"

namespace orsched {

struct OracleLimits {
  int max_registrations = 8;
  int max_slots = 8;
  // Cap on the number of complete assignments, i.e. the product over
  // registrations of (1 + compatible slots).
  int64_t max_states = 50'000'000;
};

// How the enumeration explores the tree. kExhaustive visits every complete
// assignment that respects the capacity and bed limits; kBranchAndBound also
// skips subtrees that cannot beat the incumbent. Both return the same
// optimum.
enum class OracleMode { kBranchAndBound, kExhaustive };

struct OracleResult {
  ObjectiveVector objective;
  Schedule schedule;
  int64_t leaves = 0;  // complete feasible assignments examined
};

struct RescheduleOracleResult {
  RescheduleObjective objective;
  Schedule schedule;  // original day numbering, untouched assignments included
  int64_t leaves = 0;
};

bool WithinOracleLimits(const Instance& instance, const OracleLimits& limits);

// Exact optimum of the scheduling model. Throws Error(kLimitsExceeded) before
// enumerating when the instance is too large, Error(kInfeasibleP1) when no
// schedule assigns every priority-1 registration.
OracleResult BruteForceSchedule(const Instance& instance,
                                const OracleLimits& limits,
                                OracleMode mode = OracleMode::kBranchAndBound);

// Exact optimum of the rescheduling model. Throws Error(kLimitsExceeded) or
// Error(kInfeasiblePostponed).
RescheduleOracleResult BruteForceReschedule(
    const RescheduleRequest& request, const OracleLimits& limits,
    OracleMode mode = OracleMode::kBranchAndBound);

}  // namespace orsched

#endif  // ORSCHED_ORACLE_H_
