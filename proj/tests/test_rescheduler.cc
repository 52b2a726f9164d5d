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
#include <map>
#include <optional>
#include <vector>

#include "doctest.h"
#include "fixtures.h"
#include "generator.h"
#include "oracle.h"
#include "rescheduler.h"
#include "solver.h"
#include "status.h"
#include "verifier.h"

namespace orsched {
namespace {

using testing::Grid;
using testing::Reg;

SolverConfig Budget(int64_t iterations, uint64_t seed = 1) {
  SolverConfig config;
  config.iteration_limit = iterations;
  config.seed = seed;
  return config;
}

ErrorCode RescheduleError(const RescheduleRequest& request) {
  try {
    Reschedule(request, Budget(2000));
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInternal;
}

// Beds in use per (ward, day) counted straight from the stay rules: ward
// before surgery, then ICU, then ward again; ICU is ward 0.
std::map<std::pair<int, int>, int> Recount(const Instance& instance,
                                           const Schedule& schedule,
                                           int through_day) {
  std::map<int, Registration> by_id;
  for (const Registration& r : instance.registrations) by_id[r.id] = r;
  std::map<std::pair<int, int>, int> used;
  auto occupy = [&](int ward, int day) {
    if (day >= 1 && day <= instance.horizon) ++used[{ward, day}];
  };
  for (const Assignment& a : schedule.assignments) {
    if (a.day > through_day) continue;
    const Registration& r = by_id.at(a.registration_id);
    for (int d = a.day - r.admit_advance; d < a.day; ++d) occupy(r.specialty, d);
    for (int d = a.day; d < a.day + r.icu_los; ++d) occupy(0, d);
    for (int d = a.day + r.icu_los; d < a.day + r.los_after; ++d) {
      occupy(r.specialty, d);
    }
  }
  return used;
}

// Every candidate in every residual slot of its specialty or nowhere, judged
// by CheckReschedule and EvaluateRescheduleObjective.
std::optional<RescheduleObjective> NaiveRepair(const RescheduleRequest& request) {
  const ResidualProblem problem = BuildResidualProblem(request);
  std::vector<std::vector<Assignment>> options;
  for (const Registration& r : problem.instance.registrations) {
    std::vector<Assignment> mine;
    for (const MssSlot& s : problem.instance.mss) {
      if (s.specialty == r.specialty) {
        mine.push_back({r.id, r.priority, s.or_id, s.session, s.day});
      }
    }
    options.push_back(std::move(mine));
  }
  std::optional<RescheduleObjective> best;
  std::vector<size_t> pick(options.size(), 0);
  while (true) {
    Schedule residual;
    for (size_t i = 0; i < options.size(); ++i) {
      if (pick[i] > 0) residual.assignments.push_back(options[i][pick[i] - 1]);
    }
    const Schedule full = ExpandResidualSchedule(problem, residual);
    if (CheckReschedule(problem, full).empty()) {
      const RescheduleObjective o = EvaluateRescheduleObjective(request, full);
      if (!best || CompareRescheduleObjectives(o, *best) == Ordering::kFirstBetter) {
        best = o;
      }
    }
    size_t k = 0;
    while (k < pick.size() && ++pick[k] > options[k].size()) pick[k++] = 0;
    if (k == pick.size()) break;
  }
  return best;
}

double SearchSpace(const RescheduleRequest& request) {
  const ResidualProblem problem = BuildResidualProblem(request);
  double states = 1;
  for (const Registration& r : problem.instance.registrations) {
    int slots = 0;
    for (const MssSlot& s : problem.instance.mss) slots += s.specialty == r.specialty;
    states *= slots + 1;
  }
  return states;
}

// One room, one 300-minute session a day over three days, disrupted on day 1.
// The postponed 200-minute P2 fits nowhere without a drop.
RescheduleRequest ZeroSlack() {
  RescheduleRequest request;
  request.instance = Grid(3, 1, 1, 300, 9, 9);
  request.instance.registrations = {Reg(1, 2, 200), Reg(2, 3, 200), Reg(3, 3, 100),
                                    Reg(4, 3, 200), Reg(5, 3, 100)};
  request.old_schedule.assignments = {{1, 2, 1, 1, 1},
                                      {2, 3, 1, 1, 2},
                                      {3, 3, 1, 1, 2},
                                      {4, 3, 1, 1, 3},
                                      {5, 3, 1, 1, 3}};
  request.disruption_day = 1;
  request.postponed = {1};
  return request;
}

TEST_CASE("residual availability: one stay") {
  Instance i = Grid(3, 1, 2, 300, 3, 3);
  i.registrations = {Reg(1, 2, 100, 2), Reg(2, 2, 100, 3, 1, 1, 1)};
  const Schedule s{{{1, 2, 1, 1, 1}, {2, 2, 1, 2, 2}}};
  const auto table = ComputeResidualAvailability(i, s, 1);
  std::map<std::pair<int, int>, int> got;
  for (const BedAvailability& b : table) got[{b.ward, b.day}] = b.available;
  // Registration 1 uses ward beds on days 1-2; registration 2 is not executed.
  CHECK(got == std::map<std::pair<int, int>, int>{
                   {{0, 2}, 3}, {{0, 3}, 3}, {{1, 2}, 2}, {{1, 3}, 3}});
  const auto later = ComputeResidualAvailability(i, s, 2);
  std::map<std::pair<int, int>, int> got2;
  for (const BedAvailability& b : later) got2[{b.ward, b.day}] = b.available;
  // Registration 2: ward day 1, ICU day 2, ward days 3-4 (clamped).
  CHECK(got2 == std::map<std::pair<int, int>, int>{{{0, 3}, 3}, {{1, 3}, 2}});
}

TEST_CASE("residual availability matches an independent recount") {
  for (const char* name : {"A", "B", "C"}) {
    const Instance i = GenerateInstance(ScenarioPreset(name), 5, 2);
    const Schedule s = Solve(i, Budget(20000)).best_schedule;
    for (int e = 1; e < 5; ++e) {
      const auto used = Recount(i, s, e);
      const auto table = ComputeResidualAvailability(i, s, e);
      int expected_rows = 0;
      for (const BedAvailability& b : i.beds) expected_rows += b.day > e;
      CHECK(static_cast<int>(table.size()) == expected_rows);
      for (const BedAvailability& b : table) {
        const BedAvailability* declared = nullptr;
        for (const BedAvailability& d : i.beds) {
          if (d.ward == b.ward && d.day == b.day) declared = &d;
        }
        REQUIRE(declared != nullptr);
        auto it = used.find({b.ward, b.day});
        CHECK(b.available == declared->available - (it == used.end() ? 0 : it->second));
      }
    }
  }
}

TEST_CASE("residual availability refuses an overfull plan") {
  Instance i = Grid(3, 2, 1, 300, 1, 3);
  i.registrations = {Reg(1, 2, 100, 2), Reg(2, 2, 100, 2)};
  const Schedule s{{{1, 2, 1, 1, 1}, {2, 2, 2, 1, 1}}};
  try {
    ComputeResidualAvailability(i, s, 1);
    FAIL("expected negative availability");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNegativeAvailability);
  }
}

TEST_CASE("reschedule objective: hand example") {
  RescheduleRequest request;
  request.instance = Grid(5, 1, 2, 300, 9, 9);
  request.instance.registrations = {Reg(1, 2, 60), Reg(2, 3, 60), Reg(3, 3, 60),
                                    Reg(4, 3, 60), Reg(5, 1, 60)};
  request.old_schedule.assignments = {{1, 2, 1, 1, 3},
                                      {2, 3, 1, 2, 3},
                                      {3, 3, 1, 1, 5},
                                      {4, 3, 1, 1, 4},
                                      {5, 1, 1, 1, 1}};
  request.disruption_day = 2;
  const Schedule next{{{4, 3, 1, 1, 5}}};
  const RescheduleObjective o = EvaluateRescheduleObjective(request, next);
  CHECK(o.level4 == 2);  // registration 1 dropped, registration 5 executed
  CHECK(o.level3 == 1);
  CHECK(o.level2 == 1);
  CHECK(o.level1 == 1);
  // Keeping everything in place costs nothing but the executed one.
  Schedule same = request.old_schedule;
  same.assignments.pop_back();
  CHECK(EvaluateRescheduleObjective(request, same) == RescheduleObjective{1, 0, 0, 0});
}

TEST_CASE("reschedule objective order") {
  using O = RescheduleObjective;
  CHECK(CompareRescheduleObjectives(O{0, 5, 5, 90}, O{1, 0, 0, 0}) ==
        Ordering::kFirstBetter);
  CHECK(CompareRescheduleObjectives(O{0, 1, 0, 0}, O{0, 0, 9, 9}) ==
        Ordering::kSecondBetter);
  CHECK(CompareRescheduleObjectives(O{0, 0, 1, 0}, O{0, 0, 0, 40}) ==
        Ordering::kSecondBetter);
  CHECK(CompareRescheduleObjectives(O{2, 1, 1, 3}, O{2, 1, 1, 3}) == Ordering::kEqual);
}

TEST_CASE("one postponed with slack: nothing dropped") {
  RescheduleRequest request;
  request.instance = Grid(3, 1, 1, 300, 9, 9);
  request.instance.registrations = {Reg(1, 3, 100), Reg(2, 3, 100), Reg(3, 2, 100)};
  request.old_schedule.assignments = {
      {1, 3, 1, 1, 1}, {2, 3, 1, 1, 2}, {3, 2, 1, 1, 3}};
  request.disruption_day = 1;
  request.postponed = {1};
  const RescheduleOutcome out = Reschedule(request, Budget(5000));
  CHECK(out.dropped.empty());
  CHECK(out.objective == RescheduleObjective{0, 0, 0, 1});
  CHECK(out.proved_optimal);
  CHECK(out.new_schedule.assignments.size() == 3);
}

TEST_CASE("one postponed with zero slack drops a last-day P3") {
  const RescheduleRequest request = ZeroSlack();
  const RescheduleOutcome out = Reschedule(request, Budget(20000));
  CHECK(out.objective == RescheduleObjective{0, 0, 1, 2});
  CHECK(out.dropped == std::vector<int>{4});
  CHECK(CheckReschedule(BuildResidualProblem(request), out.new_schedule).empty());
  const auto exact = BruteForceReschedule(request, OracleLimits{});
  CHECK(exact.objective == out.objective);
  CHECK(NaiveRepair(request) == out.objective);
}

TEST_CASE("executed priority 1/2 registrations only shift level 4") {
  RescheduleRequest base = ZeroSlack();
  base.instance = Grid(3, 2, 1, 300, 9, 9);
  base.instance.registrations = ZeroSlack().instance.registrations;
  base.instance.mss.erase(
      std::remove_if(base.instance.mss.begin(), base.instance.mss.end(),
                     [](const MssSlot& s) { return s.or_id == 2 && s.day > 1; }),
      base.instance.mss.end());
  RescheduleRequest more = base;
  more.instance.registrations.push_back(Reg(6, 2, 250));
  more.old_schedule.assignments.push_back({6, 2, 2, 1, 1});
  const RescheduleOutcome a = Reschedule(base, Budget(20000, 3));
  const RescheduleOutcome b = Reschedule(more, Budget(20000, 3));
  CHECK(a.level4_offset == 0);
  CHECK(b.level4_offset == 1);
  CHECK(b.objective.level4 == a.objective.level4 + 1);
  CHECK(a.new_schedule == b.new_schedule);
  CHECK(a.dropped == b.dropped);
}

TEST_CASE("specialty scope leaves other specialties untouched") {
  RescheduleRequest request;
  request.instance = Grid(3, 1, 1, 300, 9, 9);
  for (int d = 1; d <= 3; ++d) request.instance.mss.push_back({2, 1, 2, d});
  request.instance.capacities.push_back({2, 1, 300});
  for (int d = 1; d <= 3; ++d) request.instance.beds.push_back({2, d, 9});
  request.instance.registrations = {Reg(1, 2, 200), Reg(2, 3, 200), Reg(3, 3, 200),
                                    Reg(4, 3, 100, 0, 2)};
  request.old_schedule.assignments = {
      {1, 2, 1, 1, 1}, {2, 3, 1, 1, 2}, {3, 3, 1, 1, 3}, {4, 3, 2, 1, 3}};
  request.disruption_day = 1;
  request.postponed = {1};
  request.specialty = 1;
  const RescheduleOutcome out = Reschedule(request, Budget(20000));
  const ResidualProblem problem = BuildResidualProblem(request);
  CHECK(problem.pass_through.assignments ==
        std::vector<Assignment>{{4, 3, 2, 1, 3}});
  CHECK(std::count(out.new_schedule.assignments.begin(),
                   out.new_schedule.assignments.end(), Assignment{4, 3, 2, 1, 3}) == 1);
  CHECK(out.objective == RescheduleObjective{0, 0, 1, 2});
}

TEST_CASE("request errors") {
  RescheduleRequest request = ZeroSlack();
  request.postponed = {2};  // planned on day 2, not the disruption day
  CHECK(RescheduleError(request) == ErrorCode::kInvalidArgument);
  request = ZeroSlack();
  request.disruption_day = 3;
  CHECK(RescheduleError(request) == ErrorCode::kInvalidArgument);
  request = ZeroSlack();
  request.specialty = 2;
  CHECK(RescheduleError(request) == ErrorCode::kInvalidArgument);
  request = ZeroSlack();
  request.instance.registrations[1].icu_los = 2;  // longer than its stay
  CHECK(RescheduleError(request) == ErrorCode::kInvalidInstance);
}

TEST_CASE("postponed that fits nowhere") {
  RescheduleRequest request = ZeroSlack();
  request.instance.beds = {};
  for (int d = 1; d <= 3; ++d) {
    request.instance.beds.push_back({0, d, 9});
    request.instance.beds.push_back({1, d, d == 1 ? 1 : 0});
  }
  request.instance.registrations[0].los_after = 1;
  CHECK(RescheduleError(request) == ErrorCode::kInfeasiblePostponed);
}

TEST_CASE("rescheduler matches the exact repair on tiny requests") {
  Rng draws(21);
  int runs = 0, matched = 0, naive = 0;
  for (int k = 0; k < 2000 && runs < 60; ++k) {
    const auto request = testing::RandomTinyReschedule(draws);
    if (!request) continue;
    std::optional<RescheduleOracleResult> exact;
    try {
      exact = BruteForceReschedule(*request, OracleLimits{});
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kInfeasiblePostponed);
      CHECK(RescheduleError(*request) == ErrorCode::kInfeasiblePostponed);
      continue;
    }
    ++runs;
    if (SearchSpace(*request) <= 20000) {
      CHECK(NaiveRepair(*request) == exact->objective);
      ++naive;
    }
    const RescheduleOutcome out = Reschedule(*request, Budget(20000, draws.Next()));
    const ResidualProblem problem = BuildResidualProblem(*request);
    CHECK(CheckReschedule(problem, out.new_schedule).empty());
    CHECK(EvaluateRescheduleObjective(*request, out.new_schedule) == out.objective);
    matched += out.objective == exact->objective;
  }
  CHECK(runs >= 40);
  CHECK(naive >= 10);
  CHECK(matched * 100 >= runs * 95);
}

TEST_CASE("check reschedule reports a missing postponed registration") {
  const RescheduleRequest request = ZeroSlack();
  const ResidualProblem problem = BuildResidualProblem(request);
  const RescheduleOutcome out = Reschedule(request, Budget(5000));
  Schedule missing = out.new_schedule;
  std::erase_if(missing.assignments,
                [](const Assignment& a) { return a.registration_id == 1; });
  const auto v = CheckReschedule(problem, missing);
  REQUIRE(v.size() == 1);
  CHECK(v[0].code == ViolationCode::kP1Unassigned);
  CHECK(v[0].registrations == std::vector<int>{1});
  Schedule crowded = out.new_schedule;
  crowded.assignments.push_back({4, 3, 1, 1, 3});  // day 3 was already full
  bool overflow = false;
  for (const Violation& x : CheckReschedule(problem, crowded)) {
    overflow |= x.code == ViolationCode::kCapacityOverflow && x.day == 3;
  }
  CHECK(overflow);
}

TEST_CASE("Scenario A repair: postponed placed, no priority 1/2 dropped") {
  const RescheduleRequest request = testing::DayTwoRepairRequest(1, 2, 200000);
  const RescheduleOutcome out = Reschedule(request, Budget(200000));
  CHECK(CheckReschedule(BuildResidualProblem(request), out.new_schedule).empty());
  CHECK(out.objective.level4 == out.level4_offset);
  for (int id : request.postponed) {
    CHECK(std::count_if(out.new_schedule.assignments.begin(),
                        out.new_schedule.assignments.end(),
                        [&](const Assignment& a) { return a.registration_id == id; }) == 1);
  }
}

}  // namespace
}  // namespace orsched
