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

#ifndef ORSCHED_MODEL_H_
#define ORSCHED_MODEL_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

namespace orsched {

// Ward identifier reserved for the intensive care unit.
inline constexpr int kIcuWard = 0;

struct Registration {
  int id = 0;
  int priority = 3;          // 1 (must be operated), 2, 3
  int surgery_duration = 0;  // minutes
  int los_after = 0;         // days after surgery, ICU included
  int specialty = 1;         // ward of the specialty, >= 1
  int icu_los = 0;           // days
  int admit_advance = 0;     // days admitted before surgery

  friend bool operator==(const Registration&, const Registration&) = default;
};

// One Master Surgical Schedule entry: OR session on a day reserved for a
// specialty.
struct MssSlot {
  int or_id = 0;
  int session = 0;
  int specialty = 1;
  int day = 1;

  friend bool operator==(const MssSlot&, const MssSlot&) = default;
};

struct SessionCapacity {
  int or_id = 0;
  int session = 0;
  int duration = 0;  // minutes

  friend bool operator==(const SessionCapacity&,
                         const SessionCapacity&) = default;
};

struct BedAvailability {
  int ward = 0;
  int day = 1;
  int available = 0;

  friend bool operator==(const BedAvailability&,
                         const BedAvailability&) = default;
};

// Provenance of generated instances; absent for hand-written inputs.
struct GenerationInfo {
  std::string scenario;
  uint64_t seed = 0;
  int days = 0;
  std::string generator;
  bool cycled_beds = false;
  bool proportional_counts = false;

  friend bool operator==(const GenerationInfo&,
                         const GenerationInfo&) = default;
};

struct Instance {
  int horizon = 1;
  std::vector<Registration> registrations;
  std::vector<MssSlot> mss;
  std::vector<SessionCapacity> capacities;
  std::vector<BedAvailability> beds;
  std::optional<GenerationInfo> generation;

  friend bool operator==(const Instance&, const Instance&) = default;
};

struct PriorityCensus {
  int total_p1 = 0;
  int total_p2 = 0;
  int total_p3 = 0;

  int total(int priority) const;
};

struct Assignment {
  int registration_id = 0;
  int priority = 3;
  int or_id = 0;
  int session = 0;
  int day = 1;

  friend bool operator==(const Assignment&, const Assignment&) = default;
  friend auto operator<=>(const Assignment&, const Assignment&) = default;
};

struct Schedule {
  std::vector<Assignment> assignments;

  friend bool operator==(const Schedule&, const Schedule&) = default;
};

struct StayRecord {
  int registration_id = 0;
  int day = 1;
  int place = kIcuWard;

  friend bool operator==(const StayRecord&, const StayRecord&) = default;
  friend auto operator<=>(const StayRecord&, const StayRecord&) = default;
};

struct ValidationIssue {
  std::string code;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;

  bool ok() const { return issues.empty(); }
  bool Has(const std::string& code) const;
};

ValidationReport ValidateInstance(const Instance& instance);

PriorityCensus CensusOf(const Instance& instance);

// Bed-occupancy records of a registration operated on `surgery_day`: ward
// days before surgery, ICU days from the surgery day on, then ward days until
// the end of the stay. Records outside [1, horizon] are dropped.
std::vector<StayRecord> ExpandStays(const Registration& registration,
                                    int surgery_day, int horizon);

// Sorts assignments by (day, OR, session, registration) so that equal
// schedules serialize identically.
void Canonicalize(Schedule& schedule);

// Lookup tables over a validated instance.
class InstanceIndex {
 public:
  struct SlotInfo {
    int specialty = 0;
    int capacity = 0;
  };

  explicit InstanceIndex(const Instance& instance);

  const Instance& instance() const { return *instance_; }
  const Registration* FindRegistration(int id) const;
  const SlotInfo* FindSlot(int or_id, int session, int day) const;
  // Declared availability, or nullopt if the instance has no entry.
  std::optional<int> Beds(int ward, int day) const;
  // Every ward with a bed entry, ascending, ICU included.
  const std::vector<int>& wards() const { return wards_; }

 private:
  const Instance* instance_;
  std::unordered_map<int, int> registration_by_id_;
  std::map<std::tuple<int, int, int>, SlotInfo> slots_;
  std::map<std::pair<int, int>, int> beds_;
  std::vector<int> wards_;
};

}  // namespace orsched

#endif  // ORSCHED_MODEL_H_
