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

#ifndef ORSCHED_VERIFIER_H_
#define ORSCHED_VERIFIER_H_

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "model.h"

namespace orsched {

// Lexicographic scheduling cost: unassigned priority-2 registrations weigh
// more than any number of unassigned priority-3 ones.
struct ObjectiveVector {
  int unassigned_p2 = 0;
  int unassigned_p3 = 0;

  friend bool operator==(const ObjectiveVector&,
                         const ObjectiveVector&) = default;
};

enum class Ordering { kFirstBetter, kEqual, kSecondBetter };

Ordering CompareObjectives(const ObjectiveVector& a, const ObjectiveVector& b);

enum class ViolationCode {
  kDuplicateSession,
  kDuplicateOr,
  kCapacityOverflow,
  kWardOverflow,
  kIcuOverflow,
  kP1Unassigned,
  kMssMismatch,
};

std::string_view ViolationCodeName(ViolationCode code);

struct Violation {
  ViolationCode code;
  std::vector<int> registrations;
  // -1 where the field does not apply to the code.
  int or_id = -1;
  int session = -1;
  int day = -1;
  int ward = -1;
  std::string detail;
};

// One violation per offending (constraint, context); empty iff the schedule
// is feasible for the instance.
std::vector<Violation> CheckSchedule(const Instance& instance,
                                     const Schedule& schedule);

// Both throw Error(kViolations) when CheckSchedule is not empty.
ObjectiveVector EvaluateObjective(const Instance& instance,
                                  const Schedule& schedule);

struct PriorityCount {
  int assigned = 0;
  int total = 0;

  friend bool operator==(const PriorityCount&, const PriorityCount&) = default;
};

struct Metrics {
  std::array<PriorityCount, 3> assigned_by_priority;  // index = priority - 1
  double or_time_efficiency = 0.0;
  double bed_occupancy_efficiency = 0.0;
  int64_t used_minutes = 0;
  int64_t offered_minutes = 0;
  int64_t occupied_bed_days = 0;
  int64_t available_bed_days = 0;
};

Metrics ComputeMetrics(const Instance& instance, const Schedule& schedule);

struct OccupancyCell {
  int ward = 0;
  int day = 1;
  int occupied = 0;
  int available = 0;
};

// Occupied beds per (ward, day) for every bed entry of the instance, ordered
// by ward then day. Does not check feasibility.
std::vector<OccupancyCell> OccupancyGrid(const Instance& instance,
                                         const Schedule& schedule);

}  // namespace orsched

#endif  // ORSCHED_VERIFIER_H_
