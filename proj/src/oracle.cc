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

#include "oracle.h"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <map>
#include <set>

#include "status.h"

namespace orsched {
namespace {

// Lexicographic cost, most significant level first.
using Cost = std::array<int64_t, 4>;

Cost Plus(const Cost& a, const Cost& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
}

struct Choice {
  int slot = -1;  // -1 = not assigned
  Cost cost{};
};

struct Item {
  const Registration* registration = nullptr;
  bool mandatory = false;
  std::vector<Choice> choices;  // "not assigned" first
};

// Depth-first enumeration of every assignment of items to MSS slots of their
// specialty that respects slot minutes and bed counts.
class Enumerator {
 public:
  Enumerator(const Instance& instance, std::vector<Item> items, OracleMode mode)
      : instance_(instance), index_(instance), items_(std::move(items)),
        mode_(mode) {
    for (const MssSlot& s : instance.mss) {
      loads_.push_back(0);
      capacity_.push_back(index_.FindSlot(s.or_id, s.session, s.day)->capacity);
    }
    for (const BedAvailability& b : instance.beds) {
      occupied_[{b.ward, b.day}] = 0;
    }
    choice_.assign(items_.size(), 0);
  }

  bool Run() {
    Visit(0, Cost{});
    return found_;
  }

  const Cost& best_cost() const { return best_cost_; }
  const std::vector<int>& best_choice() const { return best_choice_; }
  int64_t leaves() const { return leaves_; }
  const std::vector<Item>& items() const { return items_; }

 private:
  bool Place(const Registration& r, int slot) {
    if (loads_[slot] + r.surgery_duration > capacity_[slot]) return false;
    const auto stays = ExpandStays(r, instance_.mss[slot].day, instance_.horizon);
    for (const StayRecord& s : stays) {
      if (occupied_[{s.place, s.day}] + 1 > index_.Beds(s.place, s.day).value_or(0)) {
        return false;
      }
    }
    loads_[slot] += r.surgery_duration;
    for (const StayRecord& s : stays) ++occupied_[{s.place, s.day}];
    return true;
  }

  void Unplace(const Registration& r, int slot) {
    loads_[slot] -= r.surgery_duration;
    for (const StayRecord& s :
         ExpandStays(r, instance_.mss[slot].day, instance_.horizon)) {
      --occupied_[{s.place, s.day}];
    }
  }

  void Visit(size_t depth, const Cost& partial) {
    if (mode_ == OracleMode::kBranchAndBound && found_ &&
        partial >= best_cost_) {
      return;
    }
    if (depth == items_.size()) {
      ++leaves_;
      for (size_t i = 0; i < items_.size(); ++i) {
        if (items_[i].mandatory && items_[i].choices[choice_[i]].slot < 0) return;
      }
      if (!found_ || partial < best_cost_) {
        found_ = true;
        best_cost_ = partial;
        best_choice_ = choice_;
      }
      return;
    }
    const Item& item = items_[depth];
    for (size_t c = 0; c < item.choices.size(); ++c) {
      const Choice& choice = item.choices[c];
      if (choice.slot < 0 && mode_ == OracleMode::kBranchAndBound &&
          item.mandatory) {
        continue;
      }
      if (choice.slot >= 0 && !Place(*item.registration, choice.slot)) continue;
      choice_[depth] = static_cast<int>(c);
      Visit(depth + 1, Plus(partial, choice.cost));
      if (choice.slot >= 0) Unplace(*item.registration, choice.slot);
    }
  }

  const Instance& instance_;
  InstanceIndex index_;
  std::vector<Item> items_;
  OracleMode mode_;
  std::vector<int> loads_;
  std::vector<int> capacity_;
  std::map<std::pair<int, int>, int> occupied_;
  std::vector<int> choice_;
  std::vector<int> best_choice_;
  Cost best_cost_{};
  bool found_ = false;
  int64_t leaves_ = 0;
};

void EnforceLimits(const Instance& instance, const OracleLimits& limits) {
  if (!WithinOracleLimits(instance, limits)) {
    throw Error(ErrorCode::kLimitsExceeded,
                "instance too large for exhaustive enumeration");
  }
}

std::vector<int> CompatibleSlots(const Instance& instance,
                                 const Registration& r) {
  std::vector<int> slots;
  for (size_t s = 0; s < instance.mss.size(); ++s) {
    if (instance.mss[s].specialty == r.specialty) slots.push_back(static_cast<int>(s));
  }
  return slots;
}

Schedule ScheduleOf(const Instance& instance, const Enumerator& e) {
  Schedule schedule;
  const auto& items = e.items();
  for (size_t i = 0; i < items.size(); ++i) {
    const int slot = items[i].choices[e.best_choice()[i]].slot;
    if (slot < 0) continue;
    const MssSlot& s = instance.mss[slot];
    schedule.assignments.push_back({items[i].registration->id,
                                    items[i].registration->priority, s.or_id,
                                    s.session, s.day});
  }
  Canonicalize(schedule);
  return schedule;
}

}  // namespace

bool WithinOracleLimits(const Instance& instance, const OracleLimits& limits) {
  if (static_cast<int>(instance.registrations.size()) > limits.max_registrations ||
      static_cast<int>(instance.mss.size()) > limits.max_slots) {
    return false;
  }
  double states = 1.0;
  for (const Registration& r : instance.registrations) {
    states *= 1.0 + static_cast<double>(CompatibleSlots(instance, r).size());
  }
  return states <= static_cast<double>(limits.max_states);
}

OracleResult BruteForceSchedule(const Instance& instance,
                                const OracleLimits& limits, OracleMode mode) {
  EnforceLimits(instance, limits);
  const ValidationReport report = ValidateInstance(instance);
  if (!report.ok()) {
    throw Error(ErrorCode::kInvalidInstance, report.issues.front().code);
  }
  std::vector<Item> items;
  for (const Registration& r : instance.registrations) {
    Item item;
    item.registration = &r;
    item.mandatory = r.priority == 1;
    Choice skip;
    skip.cost = {r.priority == 2 ? 1 : 0, r.priority == 3 ? 1 : 0, 0, 0};
    item.choices.push_back(skip);
    for (int slot : CompatibleSlots(instance, r)) item.choices.push_back({slot, {}});
    items.push_back(std::move(item));
  }
  Enumerator enumerator(instance, std::move(items), mode);
  if (!enumerator.Run()) {
    throw Error(ErrorCode::kInfeasibleP1,
                "no schedule assigns every priority-1 registration");
  }
  OracleResult result;
  result.objective = {static_cast<int>(enumerator.best_cost()[0]),
                      static_cast<int>(enumerator.best_cost()[1])};
  result.schedule = ScheduleOf(instance, enumerator);
  result.leaves = enumerator.leaves();
  return result;
}

RescheduleOracleResult BruteForceReschedule(const RescheduleRequest& request,
                                            const OracleLimits& limits,
                                            OracleMode mode) {
  const ResidualProblem problem = BuildResidualProblem(request);
  const Instance& residual = problem.instance;
  EnforceLimits(residual, limits);
  const int horizon = request.instance.horizon;
  const std::set<int> postponed(problem.postponed.begin(), problem.postponed.end());

  std::vector<Item> items;
  for (size_t i = 0; i < residual.registrations.size(); ++i) {
    const Registration& r = residual.registrations[i];
    const int old_day = problem.old_day[i];
    Item item;
    item.registration = &r;
    item.mandatory = postponed.count(r.id) > 0;
    Choice drop;
    if (!item.mandatory) {
      if (r.priority <= 2) {
        drop.cost = {1, 0, 0, 0};
      } else if (old_day < horizon) {
        drop.cost = {0, 1, 0, 0};
      } else {
        drop.cost = {0, 0, 1, 0};
      }
    }
    item.choices.push_back(drop);
    for (int slot : CompatibleSlots(residual, r)) {
      const int day = residual.mss[slot].day + problem.day_offset;
      item.choices.push_back({slot, {0, 0, 0, std::abs(day - old_day)}});
    }
    items.push_back(std::move(item));
  }
  Enumerator enumerator(residual, std::move(items), mode);
  if (!enumerator.Run()) {
    throw Error(ErrorCode::kInfeasiblePostponed,
                "no placement of every postponed registration exists");
  }
  RescheduleOracleResult result;
  const Cost& c = enumerator.best_cost();
  result.objective = {c[0] + problem.level4_offset, c[1], c[2], c[3]};
  result.schedule =
      ExpandResidualSchedule(problem, ScheduleOf(residual, enumerator));
  result.leaves = enumerator.leaves();
  return result;
}

}  // namespace orsched
