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

#ifndef ORSCHED_RESCHEDULER_H_
#define ORSCHED_RESCHEDULER_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "model.h"
#include "solver.h"
#include "verifier.h"

namespace orsched {

struct RescheduleRequest {
  Instance instance;      // original instance
  Schedule old_schedule;  // plan being repaired
  int disruption_day = 2;
  // Registrations planned on the disruption day that must be placed again.
  std::vector<int> postponed;
  // Days open for rescheduling; 0 means disruption_day + 1 and horizon.
  int first_day = 0;
  int last_day = 0;
  // Only this specialty is rescheduled; others pass through untouched.
  std::optional<int> specialty;
};

// Drop counts: level4 = old priority 1/2 registrations missing from the new
// plan (executed ones included, see RescheduleOutcome::level4_offset);
// level3 = old priority-3 registrations of the days strictly between the
// disruption and the horizon end; level2 = old priority-3 registrations of
// the last day; level1 = total day shift of registrations kept.
struct RescheduleObjective {
  int64_t level4 = 0;
  int64_t level3 = 0;
  int64_t level2 = 0;
  int64_t level1 = 0;

  friend bool operator==(const RescheduleObjective&,
                         const RescheduleObjective&) = default;
};

Ordering CompareRescheduleObjectives(const RescheduleObjective& a,
                                     const RescheduleObjective& b);

struct RescheduleOutcome {
  Schedule new_schedule;  // original day numbering, executed days excluded
  RescheduleObjective objective;
  std::vector<int> dropped;  // previously planned, now removed
  int64_t level4_offset = 0;  // executed priority 1/2 registrations
  bool proved_optimal = false;
  int incumbents_emitted = 0;
  double elapsed = 0.0;
  int64_t iterations = 0;
};

struct RescheduleIncumbent {
  int index = 0;
  Schedule schedule;
  RescheduleObjective objective;
  double elapsed = 0.0;
};

using RescheduleSink = std::function<void(const RescheduleIncumbent&)>;

// Declared beds minus the stays, on days after `executed_through`, of the
// assignments performed on or before that day. Entries cover days
// executed_through + 1 .. horizon. Throws Error(kNegativeAvailability).
std::vector<BedAvailability> ComputeResidualAvailability(
    const Instance& instance, const Schedule& old_schedule,
    int executed_through);

// The repair problem in its own day frame: day 1 is the day after the
// disruption. Holds the registrations that may move (kept candidates and
// postponed ones), the MSS slots of the rescheduling days and the beds left
// after executed and untouched assignments.
struct ResidualProblem {
  Instance instance;
  int day_offset = 0;  // original day = residual day + day_offset
  int first_day = 0;   // original numbering
  int last_day = 0;
  std::vector<int> candidates;  // registration ids, kept ones first
  std::vector<int> postponed;
  std::vector<int> old_day;  // per candidate, original numbering
  Schedule pass_through;     // untouched future assignments
  int64_t level4_offset = 0;
};

// Throws Error(kInvalidArgument) for inconsistent requests.
ResidualProblem BuildResidualProblem(const RescheduleRequest& request);

// Maps a schedule of the residual problem back to original days and adds the
// untouched assignments.
Schedule ExpandResidualSchedule(const ResidualProblem& problem,
                                const Schedule& residual_schedule);

RescheduleObjective EvaluateRescheduleObjective(
    const RescheduleRequest& request, const Schedule& new_schedule);

// Violations of the new plan against the residual problem, ignoring the
// priority-1 rule (only postponed registrations are mandatory here) and
// reporting each missing postponed registration as p1-unassigned.
std::vector<Violation> CheckReschedule(const ResidualProblem& problem,
                                       const Schedule& new_schedule);

// The `count` smallest registration ids planned on `day` (optionally within
// one specialty). Throws Error(kInvalidArgument) if fewer are planned.
std::vector<int> FirstPlannedOn(const Instance& instance,
                                const Schedule& schedule, int day,
                                std::optional<int> specialty, int count);

// Throws Error(kInfeasiblePostponed) when the postponed registrations could
// not all be placed.
RescheduleOutcome Reschedule(const RescheduleRequest& request,
                             const SolverConfig& config,
                             const RescheduleSink& sink = {});

}  // namespace orsched

#endif  // ORSCHED_RESCHEDULER_H_
