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

#include "verifier.h"

#include <map>
#include <set>
#include <tuple>

#include "status.h"

namespace orsched {
namespace {

std::string Placement(const Assignment& a) {
  return "or " + std::to_string(a.or_id) + " session " +
         std::to_string(a.session) + " day " + std::to_string(a.day);
}

// Assignments that reference a known registration and an MSS slot of the
// registration's specialty, in schedule order.
std::vector<const Assignment*> ValidAssignments(
    const InstanceIndex& index, const Schedule& schedule,
    std::vector<Violation>* violations) {
  std::vector<const Assignment*> valid;
  for (const Assignment& a : schedule.assignments) {
    const Registration* r = index.FindRegistration(a.registration_id);
    const InstanceIndex::SlotInfo* slot =
        index.FindSlot(a.or_id, a.session, a.day);
    std::string reason;
    if (r == nullptr) {
      reason = "unknown registration";
    } else if (slot == nullptr) {
      reason = "no MSS slot";
    } else if (slot->specialty != r->specialty) {
      reason = "slot belongs to specialty " + std::to_string(slot->specialty);
    } else if (a.priority != r->priority) {
      reason = "priority differs from registration";
    }
    if (reason.empty()) {
      valid.push_back(&a);
    } else if (violations != nullptr) {
      violations->push_back({ViolationCode::kMssMismatch,
                             {a.registration_id},
                             a.or_id,
                             a.session,
                             a.day,
                             -1,
                             reason});
    }
  }
  return valid;
}

// Distinct (registration, place, day) occupancy implied by the assignments.
std::map<std::pair<int, int>, std::set<int>> Occupants(
    const InstanceIndex& index, const std::vector<const Assignment*>& valid) {
  std::map<std::pair<int, int>, std::set<int>> occupants;
  const int horizon = index.instance().horizon;
  for (const Assignment* a : valid) {
    const Registration* r = index.FindRegistration(a->registration_id);
    for (const StayRecord& s : ExpandStays(*r, a->day, horizon)) {
      occupants[{s.place, s.day}].insert(r->id);
    }
  }
  return occupants;
}

void RequireFeasible(const Instance& instance, const Schedule& schedule) {
  const std::vector<Violation> violations = CheckSchedule(instance, schedule);
  if (!violations.empty()) {
    throw Error(ErrorCode::kViolations,
                "schedule has " + std::to_string(violations.size()) +
                    " violation(s), first: " +
                    std::string(ViolationCodeName(violations.front().code)));
  }
}

}  // namespace

Ordering CompareObjectives(const ObjectiveVector& a, const ObjectiveVector& b) {
  const auto ka = std::tie(a.unassigned_p2, a.unassigned_p3);
  const auto kb = std::tie(b.unassigned_p2, b.unassigned_p3);
  if (ka < kb) return Ordering::kFirstBetter;
  if (kb < ka) return Ordering::kSecondBetter;
  return Ordering::kEqual;
}

std::string_view ViolationCodeName(ViolationCode code) {
  switch (code) {
    case ViolationCode::kDuplicateSession: return "duplicate-session";
    case ViolationCode::kDuplicateOr: return "duplicate-or";
    case ViolationCode::kCapacityOverflow: return "capacity-overflow";
    case ViolationCode::kWardOverflow: return "ward-overflow";
    case ViolationCode::kIcuOverflow: return "icu-overflow";
    case ViolationCode::kP1Unassigned: return "p1-unassigned";
    case ViolationCode::kMssMismatch: return "mss-mismatch";
  }
  return "mss-mismatch";
}

std::vector<Violation> CheckSchedule(const Instance& instance,
                                     const Schedule& schedule) {
  const InstanceIndex index(instance);
  std::vector<Violation> violations;
  const std::vector<const Assignment*> valid =
      ValidAssignments(index, schedule, &violations);

  // A registration placed twice: sharing the session but not the OR is the
  // duplicate-or case, every other pair is a duplicate-session.
  std::map<int, std::vector<const Assignment*>> by_registration;
  for (const Assignment* a : valid) by_registration[a->registration_id].push_back(a);
  for (const auto& [id, placements] : by_registration) {
    for (size_t i = 0; i < placements.size(); ++i) {
      for (size_t j = i + 1; j < placements.size(); ++j) {
        const Assignment& a = *placements[i];
        const Assignment& b = *placements[j];
        const bool same_session_other_or =
            a.session == b.session && a.or_id != b.or_id;
        violations.push_back({same_session_other_or
                                  ? ViolationCode::kDuplicateOr
                                  : ViolationCode::kDuplicateSession,
                              {id},
                              -1,
                              -1,
                              -1,
                              -1,
                              Placement(a) + " and " + Placement(b)});
      }
    }
  }

  std::map<std::tuple<int, int, int>, std::set<int>> by_slot;
  for (const Assignment* a : valid) {
    by_slot[{a->or_id, a->session, a->day}].insert(a->registration_id);
  }
  for (const auto& [key, ids] : by_slot) {
    const auto& [or_id, session, day] = key;
    int64_t total = 0;
    for (int id : ids) total += index.FindRegistration(id)->surgery_duration;
    const int capacity = index.FindSlot(or_id, session, day)->capacity;
    if (total > capacity) {
      violations.push_back({ViolationCode::kCapacityOverflow,
                            {ids.begin(), ids.end()},
                            or_id,
                            session,
                            day,
                            -1,
                            std::to_string(total) + " > " +
                                std::to_string(capacity) + " minutes"});
    }
  }

  for (const auto& [cell, ids] : Occupants(index, valid)) {
    const auto& [place, day] = cell;
    const int available = index.Beds(place, day).value_or(0);
    if (static_cast<int>(ids.size()) > available) {
      violations.push_back({place == kIcuWard ? ViolationCode::kIcuOverflow
                                              : ViolationCode::kWardOverflow,
                            {ids.begin(), ids.end()},
                            -1,
                            -1,
                            day,
                            place,
                            std::to_string(ids.size()) + " > " +
                                std::to_string(available) + " beds"});
    }
  }

  for (const Registration& r : instance.registrations) {
    if (r.priority == 1 && !by_registration.count(r.id)) {
      violations.push_back({ViolationCode::kP1Unassigned,
                            {r.id},
                            -1,
                            -1,
                            -1,
                            -1,
                            "priority-1 registration not assigned"});
    }
  }
  return violations;
}

ObjectiveVector EvaluateObjective(const Instance& instance,
                                  const Schedule& schedule) {
  RequireFeasible(instance, schedule);
  const Metrics m = ComputeMetrics(instance, schedule);
  return {m.assigned_by_priority[1].total - m.assigned_by_priority[1].assigned,
          m.assigned_by_priority[2].total - m.assigned_by_priority[2].assigned};
}

Metrics ComputeMetrics(const Instance& instance, const Schedule& schedule) {
  RequireFeasible(instance, schedule);
  const InstanceIndex index(instance);
  Metrics m;
  const PriorityCensus census = CensusOf(instance);
  for (int p = 1; p <= 3; ++p) m.assigned_by_priority[p - 1].total = census.total(p);
  std::set<int> assigned;
  for (const Assignment& a : schedule.assignments) {
    if (!assigned.insert(a.registration_id).second) continue;
    const Registration* r = index.FindRegistration(a.registration_id);
    ++m.assigned_by_priority[r->priority - 1].assigned;
    m.used_minutes += r->surgery_duration;
  }
  for (const MssSlot& s : instance.mss) {
    m.offered_minutes += index.FindSlot(s.or_id, s.session, s.day)->capacity;
  }
  for (const OccupancyCell& cell : OccupancyGrid(instance, schedule)) {
    m.occupied_bed_days += cell.occupied;
    m.available_bed_days += cell.available;
  }
  if (m.offered_minutes > 0) {
    m.or_time_efficiency =
        static_cast<double>(m.used_minutes) / static_cast<double>(m.offered_minutes);
  }
  if (m.available_bed_days > 0) {
    m.bed_occupancy_efficiency = static_cast<double>(m.occupied_bed_days) /
                                 static_cast<double>(m.available_bed_days);
  }
  return m;
}

std::vector<OccupancyCell> OccupancyGrid(const Instance& instance,
                                         const Schedule& schedule) {
  const InstanceIndex index(instance);
  const auto occupants =
      Occupants(index, ValidAssignments(index, schedule, nullptr));
  std::map<std::pair<int, int>, OccupancyCell> grid;
  for (const BedAvailability& b : instance.beds) {
    grid[{b.ward, b.day}] = {b.ward, b.day, 0, b.available};
  }
  for (const auto& [cell, ids] : occupants) {
    auto it = grid.find(cell);
    if (it != grid.end()) it->second.occupied = static_cast<int>(ids.size());
  }
  std::vector<OccupancyCell> cells;
  cells.reserve(grid.size());
  for (const auto& [key, cell] : grid) cells.push_back(cell);
  return cells;
}

}  // namespace orsched
