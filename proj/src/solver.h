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

#ifndef ORSCHED_SOLVER_H_
#define ORSCHED_SOLVER_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <stop_token>
#include <string>

#include "model.h"
#include "rng.h"
#include "search.h"
#include "verifier.h"

namespace orsched {

struct SolverConfig {
  double time_limit = 60.0;  // seconds of wall clock
  uint64_t seed = 1;
  int64_t max_stall_iterations = 2000;
  bool emit_incumbents = true;
  // Total local-search iterations; 0 = bounded by time only. With a limit the
  // outcome depends only on (instance, seed, limit).
  int64_t iteration_limit = 0;
  std::stop_token stop;
};

struct Incumbent {
  int index = 0;  // 0-based position in the emitted sequence
  Schedule schedule;
  ObjectiveVector objective;
  double elapsed = 0.0;
};

using IncumbentSink = std::function<void(const Incumbent&)>;

struct SolveOutcome {
  Schedule best_schedule;
  ObjectiveVector objective;
  bool proved_optimal = false;
  int incumbents_emitted = 0;
  double elapsed = 0.0;
  int64_t iterations = 0;
  int restarts = 0;
  // The local search found nothing and exhaustive enumeration supplied the
  // schedule (tiny instances only).
  bool exhaustive_fallback = false;
};

// Anytime optimizer. Throws Error(kInvalidInstance) on a malformed instance,
// Error(kInfeasibleP1) when priority-1 registrations provably cannot all be
// placed, Error(kTimeoutNoSolution) when the budget ran out before a
// placement of every priority-1 registration was found.
SolveOutcome Solve(const Instance& instance, const SolverConfig& config,
                   const IncumbentSink& sink = {});

// Greedy schedule in priority order (ties shuffled by rng), each registration
// in its first fitting slot. May leave priority-1 registrations unassigned.
Schedule ConstructInitial(const Instance& instance, Rng& rng);

// Local search from `schedule`, which must be feasible apart from unassigned
// priority-1 registrations. The result is never worse than the input.
Schedule Improve(const Schedule& schedule, const Instance& instance, Rng& rng,
                 const SearchBudget& budget);

// Reason why the priority-1 registrations cannot all be placed, if a simple
// certificate exists (no slot fits alone, specialty minutes exceeded, or a bed
// cell that every placement must use is oversubscribed).
std::optional<std::string> P1InfeasibilityCertificate(const SearchModel& model);

// Weights making the scalar search cost order equal the lexicographic
// (unassigned P1, unassigned P2, unassigned P3) order.
std::vector<ItemSpec> SchedulingItems(const Instance& instance);

Schedule ToSchedule(const SearchModel& model, const std::vector<int>& slot_of);

}  // namespace orsched

#endif  // ORSCHED_SOLVER_H_
