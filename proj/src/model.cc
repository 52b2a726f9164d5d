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

#include "model.h"

#include <algorithm>
#include <set>
#include <string>

namespace orsched {
namespace {

std::string RegContext(const Registration& r) {
  return "registration " + std::to_string(r.id);
}

std::string SlotContext(int or_id, int session, int day) {
  return "or " + std::to_string(or_id) + " session " +
         std::to_string(session) + " day " + std::to_string(day);
}

}  // namespace

int PriorityCensus::total(int priority) const {
  switch (priority) {
    case 1: return total_p1;
    case 2: return total_p2;
    case 3: return total_p3;
    default: return 0;
  }
}

bool ValidationReport::Has(const std::string& code) const {
  return std::any_of(issues.begin(), issues.end(),
                     [&](const ValidationIssue& i) { return i.code == code; });
}

ValidationReport ValidateInstance(const Instance& instance) {
  ValidationReport report;
  auto add = [&](std::string code, std::string detail) {
    report.issues.push_back({std::move(code), std::move(detail)});
  };
  const int horizon = instance.horizon;
  if (horizon < 1) add("invalid-horizon", "horizon must be >= 1");

  std::set<int> ids;
  std::set<int> wards = {kIcuWard};
  for (const Registration& r : instance.registrations) {
    if (!ids.insert(r.id).second) add("duplicate-registration", RegContext(r));
    if (r.id < 0) add("negative-id", RegContext(r));
    if (r.priority < 1 || r.priority > 3) add("invalid-priority", RegContext(r));
    if (r.surgery_duration <= 0) add("nonpositive-duration", RegContext(r));
    if (r.los_after < 0) add("negative-los", RegContext(r));
    if (r.icu_los < 0) add("negative-icu-los", RegContext(r));
    if (r.admit_advance < 0) add("negative-admit-advance", RegContext(r));
    if (r.icu_los > r.los_after) add("icu-exceeds-los", RegContext(r));
    if (r.specialty < 1) {
      add("invalid-specialty", RegContext(r));
    } else {
      wards.insert(r.specialty);
    }
  }

  std::set<std::pair<int, int>> capacity_keys;
  for (const SessionCapacity& c : instance.capacities) {
    const std::string ctx = "or " + std::to_string(c.or_id) + " session " +
                            std::to_string(c.session);
    if (c.or_id < 0 || c.session < 0) add("negative-id", ctx);
    if (!capacity_keys.insert({c.or_id, c.session}).second) {
      add("duplicate-capacity", ctx);
    }
    if (c.duration <= 0) add("nonpositive-capacity", ctx);
  }

  std::set<std::tuple<int, int, int>> slot_keys;
  for (const MssSlot& s : instance.mss) {
    const std::string ctx = SlotContext(s.or_id, s.session, s.day);
    if (s.or_id < 0 || s.session < 0) add("negative-id", ctx);
    if (!slot_keys.insert({s.or_id, s.session, s.day}).second) {
      add("duplicate-slot", ctx);
    }
    if (s.day < 1 || s.day > horizon) add("slot-day-out-of-range", ctx);
    if (s.specialty < 1) add("invalid-specialty", ctx);
    if (!capacity_keys.count({s.or_id, s.session})) {
      add("missing-capacity", ctx);
    }
  }

  std::set<std::pair<int, int>> bed_keys;
  for (const BedAvailability& b : instance.beds) {
    const std::string ctx =
        "ward " + std::to_string(b.ward) + " day " + std::to_string(b.day);
    if (b.ward < 0) add("invalid-ward", ctx);
    if (b.day < 1 || b.day > horizon) add("beds-day-out-of-range", ctx);
    if (!bed_keys.insert({b.ward, b.day}).second) add("duplicate-beds", ctx);
    if (b.available < 0) add("negative-beds", ctx);
  }
  for (int ward : wards) {
    for (int day = 1; day <= horizon; ++day) {
      if (!bed_keys.count({ward, day})) {
        add("missing-beds",
            "ward " + std::to_string(ward) + " day " + std::to_string(day));
      }
    }
  }
  return report;
}

PriorityCensus CensusOf(const Instance& instance) {
  PriorityCensus census;
  for (const Registration& r : instance.registrations) {
    if (r.priority == 1) ++census.total_p1;
    if (r.priority == 2) ++census.total_p2;
    if (r.priority == 3) ++census.total_p3;
  }
  return census;
}

std::vector<StayRecord> ExpandStays(const Registration& registration,
                                    int surgery_day, int horizon) {
  std::vector<StayRecord> stays;
  const int d = surgery_day;
  auto emit = [&](int first, int last, int place) {
    for (int day = std::max(first, 1); day <= std::min(last, horizon); ++day) {
      stays.push_back({registration.id, day, place});
    }
  };
  if (registration.admit_advance > 0) {
    emit(d - registration.admit_advance, d - 1, registration.specialty);
  }
  if (registration.icu_los > 0) {
    emit(d, d + registration.icu_los - 1, kIcuWard);
  }
  if (registration.los_after > registration.icu_los) {
    emit(d + registration.icu_los, d + registration.los_after - 1,
         registration.specialty);
  }
  return stays;
}

void Canonicalize(Schedule& schedule) {
  std::sort(schedule.assignments.begin(), schedule.assignments.end(),
            [](const Assignment& a, const Assignment& b) {
              return std::tie(a.day, a.or_id, a.session, a.registration_id,
                              a.priority) < std::tie(b.day, b.or_id, b.session,
                                                     b.registration_id,
                                                     b.priority);
            });
}

InstanceIndex::InstanceIndex(const Instance& instance) : instance_(&instance) {
  for (size_t i = 0; i < instance.registrations.size(); ++i) {
    registration_by_id_.emplace(instance.registrations[i].id,
                                static_cast<int>(i));
  }
  std::map<std::pair<int, int>, int> capacity;
  for (const SessionCapacity& c : instance.capacities) {
    capacity[{c.or_id, c.session}] = c.duration;
  }
  for (const MssSlot& s : instance.mss) {
    auto it = capacity.find({s.or_id, s.session});
    slots_[{s.or_id, s.session, s.day}] = {
        s.specialty, it == capacity.end() ? 0 : it->second};
  }
  std::set<int> wards;
  for (const BedAvailability& b : instance.beds) {
    beds_[{b.ward, b.day}] = b.available;
    wards.insert(b.ward);
  }
  wards_.assign(wards.begin(), wards.end());
}

const Registration* InstanceIndex::FindRegistration(int id) const {
  auto it = registration_by_id_.find(id);
  return it == registration_by_id_.end()
             ? nullptr
             : &instance_->registrations[it->second];
}

const InstanceIndex::SlotInfo* InstanceIndex::FindSlot(int or_id, int session,
                                                       int day) const {
  auto it = slots_.find({or_id, session, day});
  return it == slots_.end() ? nullptr : &it->second;
}

std::optional<int> InstanceIndex::Beds(int ward, int day) const {
  auto it = beds_.find({ward, day});
  if (it == beds_.end()) return std::nullopt;
  return it->second;
}

}  // namespace orsched
