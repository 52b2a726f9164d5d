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

#include <algorithm>
#include <set>

#include "doctest.h"
#include "fixtures.h"
#include "generator.h"
#include "model.h"

namespace orsched {
namespace {

using testing::Grid;
using testing::Reg;

std::vector<StayRecord> Stays(std::initializer_list<StayRecord> records) {
  return records;
}

TEST_CASE("expand stays: pre-op ward, ICU, then ward") {
  const Registration r = Reg(7, 2, 60, /*los_after=*/3, /*specialty=*/2,
                             /*icu_los=*/1, /*admit_advance=*/1);
  auto stays = ExpandStays(r, 3, 5);
  std::sort(stays.begin(), stays.end());
  CHECK(stays == Stays({{7, 2, 2}, {7, 3, 0}, {7, 4, 2}, {7, 5, 2}}));
}

TEST_CASE("expand stays: one ward day on the last day") {
  const Registration r = Reg(1, 3, 60, 1, 4, 0, 0);
  CHECK(ExpandStays(r, 5, 5) == Stays({{1, 5, 4}}));
}

TEST_CASE("expand stays: pre-op day clamped and no ward when los equals icu") {
  const Registration r = Reg(3, 1, 60, 2, 1, 2, 1);
  auto stays = ExpandStays(r, 1, 5);
  std::sort(stays.begin(), stays.end());
  CHECK(stays == Stays({{3, 1, 0}, {3, 2, 0}}));
}

TEST_CASE("expand stays: size and partition properties") {
  for (int los = 0; los <= 6; ++los) {
    for (int icu = 0; icu <= los; ++icu) {
      for (int adv = 0; adv <= 2; ++adv) {
        for (int day = 1; day <= 5; ++day) {
          const Registration r = Reg(1, 2, 30, los, 3, icu, adv);
          const auto stays = ExpandStays(r, day, 5);
          std::set<int> icu_days, ward_days;
          for (const StayRecord& s : stays) {
            CHECK(s.day >= 1);
            CHECK(s.day <= 5);
            (s.place == 0 ? icu_days : ward_days).insert(s.day);
          }
          std::set<int> want_icu, want_ward;
          for (int d = day; d <= day + icu - 1; ++d) {
            if (d >= 1 && d <= 5) want_icu.insert(d);
          }
          for (int d = day - adv; d <= day - 1; ++d) {
            if (d >= 1 && d <= 5) want_ward.insert(d);
          }
          for (int d = day + icu; d <= day + los - 1; ++d) {
            if (d >= 1 && d <= 5) want_ward.insert(d);
          }
          CHECK(icu_days == want_icu);
          CHECK(ward_days == want_ward);
          CHECK(stays.size() == want_icu.size() + want_ward.size());
          CHECK(static_cast<int>(stays.size()) <= adv + los);
          const bool clamped = day - adv < 1 || day + los - 1 > 5;
          if (!clamped) CHECK(static_cast<int>(stays.size()) == adv + los);
        }
      }
    }
  }
}

TEST_CASE("validate: icu longer than stay") {
  Instance instance = Grid(5, 1, 1, 300, 5, 5);
  instance.registrations.push_back(Reg(1, 2, 60, 2, 1, 3, 0));
  const ValidationReport report = ValidateInstance(instance);
  CHECK_FALSE(report.ok());
  CHECK(report.Has("icu-exceeds-los"));
}

TEST_CASE("validate: empty instance with full bed tables is ok") {
  Instance instance;
  instance.horizon = 5;
  for (int d = 1; d <= 5; ++d) instance.beds.push_back({0, d, 3});
  CHECK(ValidateInstance(instance).ok());
}

TEST_CASE("validate: generated Scenario A instance is ok") {
  const Instance instance = GenerateInstance(ScenarioPreset("A"), 5, 11);
  CHECK(instance.registrations.size() == 350);
  std::set<int> ors;
  for (const MssSlot& s : instance.mss) ors.insert(s.or_id);
  CHECK(ors.size() == 10);
  CHECK(ValidateInstance(instance).ok());
}

TEST_CASE("validate: each structural problem has its own code") {
  struct Case {
    const char* code;
    void (*mutate)(Instance&);
  };
  const Case cases[] = {
      {"invalid-horizon", [](Instance& i) { i.horizon = 0; }},
      {"duplicate-registration",
       [](Instance& i) { i.registrations.push_back(i.registrations[0]); }},
      {"invalid-priority", [](Instance& i) { i.registrations[0].priority = 4; }},
      {"nonpositive-duration",
       [](Instance& i) { i.registrations[0].surgery_duration = 0; }},
      {"negative-los", [](Instance& i) { i.registrations[0].los_after = -1; }},
      {"negative-admit-advance",
       [](Instance& i) { i.registrations[0].admit_advance = -1; }},
      {"invalid-specialty", [](Instance& i) { i.registrations[0].specialty = 0; }},
      {"duplicate-capacity",
       [](Instance& i) { i.capacities.push_back(i.capacities[0]); }},
      {"nonpositive-capacity", [](Instance& i) { i.capacities[0].duration = 0; }},
      {"duplicate-slot", [](Instance& i) { i.mss.push_back(i.mss[0]); }},
      {"slot-day-out-of-range", [](Instance& i) { i.mss[0].day = 9; }},
      {"missing-capacity", [](Instance& i) { i.mss.push_back({7, 1, 1, 1}); }},
      {"beds-day-out-of-range", [](Instance& i) { i.beds.push_back({1, 9, 1}); }},
      {"duplicate-beds", [](Instance& i) { i.beds.push_back(i.beds[0]); }},
      {"negative-beds", [](Instance& i) { i.beds[0].available = -1; }},
      {"missing-beds", [](Instance& i) { i.beds.pop_back(); }},
  };
  for (const Case& c : cases) {
    Instance instance = Grid(2, 1, 1, 300, 5, 5);
    instance.registrations.push_back(Reg(1, 2, 60, 2));
    REQUIRE(ValidateInstance(instance).ok());
    c.mutate(instance);
    INFO(c.code);
    CHECK(ValidateInstance(instance).Has(c.code));
  }
}

TEST_CASE("census counts priorities") {
  Instance instance = Grid(1, 1, 1, 300, 5, 5);
  for (int i = 1; i <= 6; ++i) instance.registrations.push_back(Reg(i, 1 + i % 3, 10));
  const PriorityCensus c = CensusOf(instance);
  CHECK(c.total_p1 == 2);
  CHECK(c.total_p2 == 2);
  CHECK(c.total_p3 == 2);
  CHECK(c.total(1) + c.total(2) + c.total(3) == 6);
}

TEST_CASE("canonical order is day, OR, session, registration") {
  Schedule s;
  s.assignments = {{5, 2, 1, 1, 2}, {3, 2, 2, 1, 1}, {4, 2, 1, 2, 1}, {2, 2, 1, 1, 1}};
  Canonicalize(s);
  std::vector<int> ids;
  for (const Assignment& a : s.assignments) ids.push_back(a.registration_id);
  CHECK(ids == std::vector<int>{2, 4, 3, 5});
}

}  // namespace
}  // namespace orsched
