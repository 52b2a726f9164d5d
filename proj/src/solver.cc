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

#include "solver.h"

#include <algorithm>
#include <chrono>
#include <map>

#include "oracle.h"
#include "status.h"

namespace orsched {
namespace {

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

ObjectiveVector ObjectiveOf(const SearchState& state) {
  ObjectiveVector v;
  const SearchModel& m = state.model();
  for (size_t i = 0; i < m.items.size(); ++i) {
    if (state.slot_of(static_cast<int>(i)) >= 0) continue;
    if (m.items[i].priority == 2) ++v.unassigned_p2;
    if (m.items[i].priority == 3) ++v.unassigned_p3;
  }
  return v;
}

std::vector<int> SlotsFromSchedule(const SearchModel& model,
                                   const Schedule& schedule) {
  std::map<std::tuple<int, int, int>, int> slot_index;
  for (size_t s = 0; s < model.slots.size(); ++s) {
    const SearchModel::Slot& slot = model.slots[s];
    slot_index[{slot.or_id, slot.session, slot.day}] = static_cast<int>(s);
  }
  std::map<int, int> item_of;
  for (size_t i = 0; i < model.items.size(); ++i) {
    item_of[model.items[i].registration_id] = static_cast<int>(i);
  }
  std::vector<int> slot_of(model.items.size(), -1);
  for (const Assignment& a : schedule.assignments) {
    auto item = item_of.find(a.registration_id);
    auto slot = slot_index.find({a.or_id, a.session, a.day});
    if (item == item_of.end() || slot == slot_index.end()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "assignment of registration " +
                      std::to_string(a.registration_id) +
                      " does not match the instance");
    }
    slot_of[item->second] = slot->second;
  }
  return slot_of;
}

}  // namespace

std::vector<ItemSpec> SchedulingItems(const Instance& instance) {
  const int64_t n = static_cast<int64_t>(instance.registrations.size());
  std::vector<ItemSpec> items;
  items.reserve(instance.registrations.size());
  for (size_t i = 0; i < instance.registrations.size(); ++i) {
    const int priority = instance.registrations[i].priority;
    ItemSpec spec;
    spec.registration = static_cast<int>(i);
    spec.hard = priority == 1;
    spec.unassigned_penalty =
        priority == 1 ? (n + 1) * (n + 1) : (priority == 2 ? n + 1 : 1);
    items.push_back(std::move(spec));
  }
  return items;
}

Schedule ToSchedule(const SearchModel& model, const std::vector<int>& slot_of) {
  Schedule schedule;
  for (size_t i = 0; i < model.items.size(); ++i) {
    if (slot_of[i] < 0) continue;
    const SearchModel::Item& item = model.items[i];
    const SearchModel::Slot& slot = model.slots[slot_of[i]];
    schedule.assignments.push_back(
        {item.registration_id, item.priority, slot.or_id, slot.session, slot.day});
  }
  Canonicalize(schedule);
  return schedule;
}

std::optional<std::string> P1InfeasibilityCertificate(const SearchModel& model) {
  std::vector<int64_t> group_minutes(model.num_groups, 0);
  std::vector<int64_t> group_demand(model.num_groups, 0);
  std::vector<bool> group_seen(model.num_groups, false);
  std::vector<int> forced(model.cell_capacity.size(), 0);
  for (const SearchModel::Item& item : model.items) {
    if (!group_seen[item.group]) {
      group_seen[item.group] = true;
      for (int s : item.slots) group_minutes[item.group] += model.slots[s].capacity;
    }
  }
  for (size_t i = 0; i < model.items.size(); ++i) {
    const SearchModel::Item& item = model.items[i];
    if (!item.hard) continue;
    group_demand[item.group] += item.duration;
    // Cells used by every placement this item could take on its own.
    std::vector<int> always;
    bool any = false;
    for (int s : item.slots) {
      const SearchModel::Slot& slot = model.slots[s];
      if (item.duration > slot.capacity) continue;
      const auto profile = model.Profile(static_cast<int>(i), slot.day);
      if (std::any_of(profile.begin(), profile.end(),
                      [&](int c) { return model.cell_capacity[c] < 1; })) {
        continue;
      }
      std::vector<int> cells(profile.begin(), profile.end());
      std::sort(cells.begin(), cells.end());
      if (!any) {
        always = cells;
        any = true;
      } else {
        std::vector<int> common;
        std::set_intersection(always.begin(), always.end(), cells.begin(),
                              cells.end(), std::back_inserter(common));
        always.swap(common);
      }
    }
    if (!any) {
      return "priority-1 registration " + std::to_string(item.registration_id) +
             " fits no slot on its own";
    }
    for (int c : always) ++forced[c];
  }
  for (int g = 0; g < model.num_groups; ++g) {
    if (group_demand[g] > group_minutes[g]) {
      return "priority-1 surgery minutes exceed the OR time of a specialty";
    }
  }
  for (size_t c = 0; c < forced.size(); ++c) {
    if (forced[c] > model.cell_capacity[c]) {
      return std::to_string(forced[c]) +
             " priority-1 registrations must occupy ward " +
             std::to_string(model.cell_ward[c]) + " on day " +
             std::to_string(model.cell_day[c]) + " which has " +
             std::to_string(model.cell_capacity[c]) + " beds";
    }
  }
  return std::nullopt;
}

Schedule ConstructInitial(const Instance& instance, Rng& rng) {
  const std::vector<ItemSpec> items = SchedulingItems(instance);
  const SearchModel model = CompileModel(instance, items);
  SearchState state(model);
  GreedyFill(state, ConstructionOrder(model, &rng));
  return ToSchedule(model, state.assignment());
}

Schedule Improve(const Schedule& schedule, const Instance& instance, Rng& rng,
                 const SearchBudget& budget) {
  const std::vector<ItemSpec> items = SchedulingItems(instance);
  const SearchModel model = CompileModel(instance, items);
  SearchState state(model);
  LoadAssignment(state, SlotsFromSchedule(model, schedule));
  const SearchResult result = LocalSearch(state, rng, budget, {});
  return ToSchedule(model, result.best);
}

SolveOutcome Solve(const Instance& instance, const SolverConfig& config,
                   const IncumbentSink& sink) {
  const Clock::time_point start = Clock::now();
  if (!(config.time_limit > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "time_limit must be > 0");
  }
  const ValidationReport report = ValidateInstance(instance);
  if (!report.ok()) {
    throw Error(ErrorCode::kInvalidInstance,
                report.issues.front().code + ": " + report.issues.front().detail);
  }
  const std::vector<ItemSpec> items = SchedulingItems(instance);
  const SearchModel model = CompileModel(instance, items);
  if (auto reason = P1InfeasibilityCertificate(model)) {
    throw Error(ErrorCode::kInfeasibleP1, *reason);
  }

  const auto deadline =
      start + std::chrono::duration_cast<Clock::duration>(
                  std::chrono::duration<double>(config.time_limit));
  Rng rng(config.seed);
  SolveOutcome outcome;
  std::vector<int> best;
  int64_t best_cost = 0;
  bool have_best = false;

  auto consider = [&](const SearchState& state) {
    if (state.hard_unassigned() > 0) return;
    if (have_best && state.cost() >= best_cost) return;
    have_best = true;
    best = state.assignment();
    best_cost = state.cost();
    if (config.emit_incumbents && sink) {
      Incumbent incumbent;
      incumbent.index = outcome.incumbents_emitted;
      incumbent.schedule = ToSchedule(model, best);
      incumbent.objective = ObjectiveOf(state);
      incumbent.elapsed = Seconds(start);
      sink(incumbent);
    }
    ++outcome.incumbents_emitted;
  };

  int64_t used = 0;
  for (int restart = 0;; ++restart) {
    SearchState state(model);
    GreedyFill(state, ConstructionOrder(model, &rng));
    consider(state);
    if (have_best && best_cost == 0) break;

    SearchBudget budget;
    budget.max_stall = config.max_stall_iterations;
    budget.deadline = deadline;
    budget.stop = config.stop;
    if (config.iteration_limit > 0) {
      budget.max_iterations = config.iteration_limit - used;
      if (budget.max_iterations <= 0) break;
    }
    const SearchResult result = LocalSearch(state, rng, budget, consider);
    used += result.iterations;
    outcome.restarts = restart;
    if (result.budget_exhausted) break;
    if (have_best && best_cost == 0) break;
  }
  outcome.iterations = used;
  outcome.elapsed = Seconds(start);

  if (!have_best) {
    if (config.stop.stop_requested()) {
      throw Error(ErrorCode::kCancelled, "solve cancelled before a solution");
    }
    const OracleLimits limits;
    if (WithinOracleLimits(instance, limits)) {
      // Small enough to settle by exhaustion.
      try {
        const OracleResult exact = BruteForceSchedule(instance, limits);
        SearchState state(model);
        LoadAssignment(state, SlotsFromSchedule(model, exact.schedule));
        consider(state);
        outcome.exhaustive_fallback = have_best;
      } catch (const Error& e) {
        if (e.code() == ErrorCode::kInfeasibleP1) throw;
      }
    }
    if (!have_best) {
      throw Error(ErrorCode::kTimeoutNoSolution,
                  "no placement of all priority-1 registrations found within "
                  "the budget");
    }
  }

  outcome.best_schedule = ToSchedule(model, best);
  SearchState final_state(model);
  LoadAssignment(final_state, best);
  outcome.objective = ObjectiveOf(final_state);
  outcome.proved_optimal = best_cost == 0;
  return outcome;
}

}  // namespace orsched
