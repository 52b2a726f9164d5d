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

#include "rescheduler.h"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <map>
#include <set>
#include <tuple>

#include "search.h"
#include "status.h"

namespace orsched {
namespace {

using Clock = std::chrono::steady_clock;

void Subtract(const InstanceIndex& index, const Assignment& a, int after_day,
              std::map<std::pair<int, int>, int>& beds) {
  const Registration* r = index.FindRegistration(a.registration_id);
  if (r == nullptr) {
    throw Error(ErrorCode::kInvalidArgument,
                "old schedule references unknown registration " +
                    std::to_string(a.registration_id));
  }
  for (const StayRecord& s : ExpandStays(*r, a.day, index.instance().horizon)) {
    if (s.day <= after_day) continue;
    auto it = beds.find({s.place, s.day});
    if (it == beds.end() || --it->second < 0) {
      throw Error(ErrorCode::kNegativeAvailability,
                  "stays exceed the beds of ward " + std::to_string(s.place) +
                      " on day " + std::to_string(s.day));
    }
  }
}

std::map<std::pair<int, int>, int> FutureBeds(const Instance& instance,
                                              int after_day) {
  std::map<std::pair<int, int>, int> beds;
  for (const BedAvailability& b : instance.beds) {
    if (b.day > after_day) beds[{b.ward, b.day}] = b.available;
  }
  return beds;
}

std::vector<BedAvailability> ToTable(
    const std::map<std::pair<int, int>, int>& beds) {
  std::vector<BedAvailability> table;
  for (const auto& [key, available] : beds) {
    table.push_back({key.first, key.second, available});
  }
  return table;
}

}  // namespace

Ordering CompareRescheduleObjectives(const RescheduleObjective& a,
                                     const RescheduleObjective& b) {
  const auto ka = std::tie(a.level4, a.level3, a.level2, a.level1);
  const auto kb = std::tie(b.level4, b.level3, b.level2, b.level1);
  if (ka < kb) return Ordering::kFirstBetter;
  if (kb < ka) return Ordering::kSecondBetter;
  return Ordering::kEqual;
}

std::vector<BedAvailability> ComputeResidualAvailability(
    const Instance& instance, const Schedule& old_schedule,
    int executed_through) {
  if (executed_through >= instance.horizon) {
    throw Error(ErrorCode::kInvalidArgument,
                "executed_through must be before the horizon end");
  }
  const InstanceIndex index(instance);
  auto beds = FutureBeds(instance, executed_through);
  for (const Assignment& a : old_schedule.assignments) {
    if (a.day <= executed_through) Subtract(index, a, executed_through, beds);
  }
  return ToTable(beds);
}

ResidualProblem BuildResidualProblem(const RescheduleRequest& request) {
  const Instance& instance = request.instance;
  const int horizon = instance.horizon;
  const int e = request.disruption_day;
  if (e < 1 || e >= horizon) {
    throw Error(ErrorCode::kInvalidArgument,
                "disruption day must lie in [1, horizon)");
  }
  ResidualProblem problem;
  problem.day_offset = e;
  problem.first_day = request.first_day > 0 ? request.first_day : e + 1;
  problem.last_day = request.last_day > 0 ? request.last_day : horizon;
  if (problem.first_day <= e || problem.last_day > horizon ||
      problem.first_day > problem.last_day) {
    throw Error(ErrorCode::kInvalidArgument,
                "rescheduling days must lie in (disruption day, horizon]");
  }
  const InstanceIndex index(instance);
  auto in_scope = [&](int specialty) {
    return !request.specialty || *request.specialty == specialty;
  };

  std::set<int> postponed(request.postponed.begin(), request.postponed.end());
  std::map<int, const Assignment*> old_by_id;
  for (const Assignment& a : request.old_schedule.assignments) {
    if (!old_by_id.emplace(a.registration_id, &a).second) {
      throw Error(ErrorCode::kInvalidArgument,
                  "old schedule assigns registration " +
                      std::to_string(a.registration_id) + " twice");
    }
  }
  for (int id : postponed) {
    auto it = old_by_id.find(id);
    if (it == old_by_id.end() || it->second->day != e) {
      throw Error(ErrorCode::kInvalidArgument,
                  "postponed registration " + std::to_string(id) +
                      " is not planned on the disruption day");
    }
    if (!in_scope(index.FindRegistration(id)->specialty)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "postponed registration " + std::to_string(id) +
                      " is outside the rescheduled specialty");
    }
  }

  auto beds = FutureBeds(instance, e);
  std::vector<int> kept;
  for (const Assignment& a : request.old_schedule.assignments) {
    const Registration* r = index.FindRegistration(a.registration_id);
    if (r == nullptr) {
      throw Error(ErrorCode::kInvalidArgument,
                  "old schedule references unknown registration " +
                      std::to_string(a.registration_id));
    }
    if (a.day < e || (a.day == e && !postponed.count(a.registration_id))) {
      Subtract(index, a, e, beds);
      if (r->priority <= 2) ++problem.level4_offset;
    } else if (a.day > e) {
      if (in_scope(r->specialty) && a.day >= problem.first_day &&
          a.day <= problem.last_day) {
        kept.push_back(a.registration_id);
      } else {
        Subtract(index, a, e, beds);
        problem.pass_through.assignments.push_back(a);
      }
    }
  }
  std::sort(kept.begin(), kept.end());
  problem.candidates = kept;
  problem.postponed.assign(postponed.begin(), postponed.end());
  problem.candidates.insert(problem.candidates.end(), problem.postponed.begin(),
                            problem.postponed.end());
  for (int id : problem.candidates) {
    problem.old_day.push_back(old_by_id.at(id)->day);
  }

  Instance& residual = problem.instance;
  residual.horizon = horizon - e;
  for (int id : problem.candidates) {
    residual.registrations.push_back(*index.FindRegistration(id));
  }
  for (const MssSlot& s : instance.mss) {
    if (s.day >= problem.first_day && s.day <= problem.last_day &&
        in_scope(s.specialty)) {
      residual.mss.push_back({s.or_id, s.session, s.specialty, s.day - e});
    }
  }
  residual.capacities = instance.capacities;
  for (const BedAvailability& b : ToTable(beds)) {
    residual.beds.push_back({b.ward, b.day - e, b.available});
  }
  Canonicalize(problem.pass_through);
  return problem;
}

std::vector<int> FirstPlannedOn(const Instance& instance,
                                const Schedule& schedule, int day,
                                std::optional<int> specialty, int count) {
  const InstanceIndex index(instance);
  std::vector<int> ids;
  for (const Assignment& a : schedule.assignments) {
    const Registration* r = index.FindRegistration(a.registration_id);
    if (a.day == day && r != nullptr && (!specialty || r->specialty == *specialty)) {
      ids.push_back(a.registration_id);
    }
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  if (count < 0 || static_cast<int>(ids.size()) < count) {
    throw Error(ErrorCode::kInvalidArgument,
                "only " + std::to_string(ids.size()) +
                    " registrations are planned on day " + std::to_string(day));
  }
  ids.resize(count);
  return ids;
}

Schedule ExpandResidualSchedule(const ResidualProblem& problem,
                                const Schedule& residual_schedule) {
  Schedule schedule = problem.pass_through;
  for (Assignment a : residual_schedule.assignments) {
    a.day += problem.day_offset;
    schedule.assignments.push_back(a);
  }
  Canonicalize(schedule);
  return schedule;
}

RescheduleObjective EvaluateRescheduleObjective(
    const RescheduleRequest& request, const Schedule& new_schedule) {
  const int horizon = request.instance.horizon;
  const int e = request.disruption_day;
  std::map<int, int> new_day;
  for (const Assignment& a : new_schedule.assignments) {
    new_day.emplace(a.registration_id, a.day);
  }
  RescheduleObjective objective;
  for (const Assignment& x : request.old_schedule.assignments) {
    auto y = new_day.find(x.registration_id);
    const bool kept = y != new_day.end();
    if (kept) objective.level1 += std::abs(y->second - x.day);
    if (kept) continue;
    if (x.priority <= 2) {
      ++objective.level4;
    } else if (x.day > e && x.day < horizon) {
      ++objective.level3;
    } else if (x.day == horizon) {
      ++objective.level2;
    }
  }
  return objective;
}

std::vector<Violation> CheckReschedule(const ResidualProblem& problem,
                                       const Schedule& new_schedule) {
  std::set<int> candidates(problem.candidates.begin(), problem.candidates.end());
  Schedule residual;
  for (Assignment a : new_schedule.assignments) {
    if (!candidates.count(a.registration_id)) continue;
    a.day -= problem.day_offset;
    residual.assignments.push_back(a);
  }
  std::vector<Violation> violations;
  for (Violation& v : CheckSchedule(problem.instance, residual)) {
    if (v.code == ViolationCode::kP1Unassigned) continue;
    if (v.day > 0) v.day += problem.day_offset;
    violations.push_back(std::move(v));
  }
  std::set<int> placed;
  for (const Assignment& a : residual.assignments) placed.insert(a.registration_id);
  for (int id : problem.postponed) {
    if (!placed.count(id)) {
      violations.push_back({ViolationCode::kP1Unassigned,
                            {id},
                            -1,
                            -1,
                            -1,
                            -1,
                            "postponed registration not placed"});
    }
  }
  return violations;
}

RescheduleOutcome Reschedule(const RescheduleRequest& request,
                             const SolverConfig& config,
                             const RescheduleSink& sink) {
  const Clock::time_point start = Clock::now();
  const ValidationReport report = ValidateInstance(request.instance);
  if (!report.ok()) {
    throw Error(ErrorCode::kInvalidInstance,
                report.issues.front().code + ": " + report.issues.front().detail);
  }
  const ResidualProblem problem = BuildResidualProblem(request);
  const int e = problem.day_offset;
  const int horizon = request.instance.horizon;
  const std::set<int> postponed(problem.postponed.begin(), problem.postponed.end());

  // Weights turning (level4, level3, level2, level1) plus the hard postponed
  // rule into one scalar with the same order.
  const int64_t n = static_cast<int64_t>(problem.candidates.size());
  const int64_t w1 = 1;
  const int64_t w2 = n * horizon + 1;
  const int64_t w3 = w2 * (n + 1);
  const int64_t w4 = w3 * (n + 1);
  const int64_t hard = w4 * (n + 1);
  std::vector<ItemSpec> items;
  for (size_t i = 0; i < problem.candidates.size(); ++i) {
    const Registration& r = problem.instance.registrations[i];
    const int old_day = problem.old_day[i];
    ItemSpec spec;
    spec.registration = static_cast<int>(i);
    if (postponed.count(r.id)) {
      spec.hard = true;
      spec.unassigned_penalty = hard;
    } else if (r.priority <= 2) {
      spec.unassigned_penalty = w4;
    } else if (old_day < horizon) {
      spec.unassigned_penalty = w3;
    } else {
      spec.unassigned_penalty = w2;
    }
    spec.day_cost.assign(problem.instance.horizon + 1, 0);
    for (int d = 1; d <= problem.instance.horizon; ++d) {
      spec.day_cost[d] = w1 * std::abs(d + e - old_day);
    }
    items.push_back(std::move(spec));
  }
  const SearchModel model = CompileModel(problem.instance, items);

  // Start from the old placements of the kept registrations.
  std::map<std::tuple<int, int, int>, int> slot_index;
  for (size_t s = 0; s < model.slots.size(); ++s) {
    const SearchModel::Slot& slot = model.slots[s];
    slot_index[{slot.or_id, slot.session, slot.day}] = static_cast<int>(s);
  }
  SearchState initial(model);
  for (const Assignment& a : request.old_schedule.assignments) {
    if (a.day <= e) continue;
    auto pos = std::find(problem.candidates.begin(), problem.candidates.end(),
                         a.registration_id);
    if (pos == problem.candidates.end()) continue;
    const int item = static_cast<int>(pos - problem.candidates.begin());
    auto slot = slot_index.find({a.or_id, a.session, a.day - e});
    if (slot != slot_index.end() && initial.CanAdd(item, slot->second)) {
      initial.Add(item, slot->second);
    }
  }
  initial.Commit();
  const std::vector<int> initial_assignment = initial.assignment();

  const auto deadline =
      start + std::chrono::duration_cast<Clock::duration>(
                  std::chrono::duration<double>(config.time_limit));
  Rng rng(config.seed);
  RescheduleOutcome outcome;
  outcome.level4_offset = problem.level4_offset;
  std::vector<int> best;
  int64_t best_cost = 0;
  bool have_best = false;
  // Cost of a plan that keeps every candidate where it was.
  int64_t floor_cost = 0;
  for (size_t i = 0; i < model.items.size(); ++i) {
    if (!model.items[i].hard) continue;
    const int64_t cheapest = *std::min_element(
        model.items[i].day_cost.begin() + 1, model.items[i].day_cost.end());
    floor_cost += cheapest;
  }

  auto materialize = [&](const std::vector<int>& slot_of) {
    return ExpandResidualSchedule(problem, ToSchedule(model, slot_of));
  };
  auto consider = [&](const SearchState& state) {
    if (state.hard_unassigned() > 0) return;
    if (have_best && state.cost() >= best_cost) return;
    have_best = true;
    best = state.assignment();
    best_cost = state.cost();
    if (config.emit_incumbents && sink) {
      RescheduleIncumbent incumbent;
      incumbent.index = outcome.incumbents_emitted;
      incumbent.schedule = materialize(best);
      incumbent.objective =
          EvaluateRescheduleObjective(request, incumbent.schedule);
      incumbent.elapsed =
          std::chrono::duration<double>(Clock::now() - start).count();
      sink(incumbent);
    }
    ++outcome.incumbents_emitted;
  };

  int64_t used = 0;
  for (int restart = 0;; ++restart) {
    SearchState state(model);
    LoadAssignment(state, initial_assignment);
    std::vector<int> order = ConstructionOrder(model, restart == 0 ? nullptr : &rng);
    GreedyFill(state, order);
    consider(state);
    if (have_best && best_cost <= floor_cost) break;

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
    if (result.budget_exhausted) break;
    if (have_best && best_cost <= floor_cost) break;
  }
  outcome.iterations = used;
  outcome.elapsed = std::chrono::duration<double>(Clock::now() - start).count();

  if (!have_best) {
    std::string why = "postponed registrations could not all be placed";
    if (auto reason = P1InfeasibilityCertificate(model)) why += ": " + *reason;
    throw Error(ErrorCode::kInfeasiblePostponed, why);
  }

  outcome.new_schedule = materialize(best);
  outcome.objective = EvaluateRescheduleObjective(request, outcome.new_schedule);
  outcome.proved_optimal = best_cost <= floor_cost;
  std::set<int> placed;
  for (const Assignment& a : outcome.new_schedule.assignments) {
    placed.insert(a.registration_id);
  }
  for (int id : problem.candidates) {
    if (!placed.count(id)) outcome.dropped.push_back(id);
  }
  return outcome;
}

}  // namespace orsched
