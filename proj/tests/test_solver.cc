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

#include <stop_token>

#include "doctest.h"
#include "fixtures.h"
#include "generator.h"
#include "json_io.h"
#include "oracle.h"
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

ErrorCode SolveError(const Instance& instance) {
  try {
    Solve(instance, Budget(1000));
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInternal;
}

TEST_CASE("priority 1 longer than every session") {
  Instance i = Grid(2, 2, 2, 300, 5, 5);
  i.registrations = {Reg(1, 1, 301), Reg(2, 2, 100)};
  CHECK(SolveError(i) == ErrorCode::kInfeasibleP1);
}

TEST_CASE("priority 1 blocked by beds") {
  Instance i = Grid(1, 1, 2, 300, 1, 5);
  i.registrations = {Reg(1, 1, 100, 1), Reg(2, 1, 100, 1)};
  CHECK(SolveError(i) == ErrorCode::kInfeasibleP1);
}

TEST_CASE("priority 1 minutes exceed the specialty's sessions") {
  Instance i = Grid(1, 1, 2, 300, 9, 9);
  i.registrations = {Reg(1, 1, 250), Reg(2, 1, 250), Reg(3, 1, 250)};
  CHECK(SolveError(i) == ErrorCode::kInfeasibleP1);
}

TEST_CASE("invalid instance is rejected") {
  Instance i = Grid(1, 1, 1, 300, 5, 5);
  i.registrations = {Reg(1, 2, 60, 1, 1, 2)};
  CHECK(SolveError(i) == ErrorCode::kInvalidInstance);
}

TEST_CASE("construction: single registration") {
  Instance i = Grid(1, 1, 1, 300, 5, 5);
  i.registrations = {Reg(1, 3, 60)};
  Rng rng(1);
  const Schedule s = ConstructInitial(i, rng);
  REQUIRE(s.assignments.size() == 1);
  CHECK(s.assignments[0] == Assignment{1, 3, 1, 1, 1});
}

TEST_CASE("construction: two 200-minute P1 in one session") {
  Instance i = Grid(1, 1, 1, 300, 5, 5);
  i.registrations = {Reg(1, 1, 200), Reg(2, 1, 200)};
  Rng rng(1);
  const Schedule s = ConstructInitial(i, rng);
  CHECK(s.assignments.size() == 1);
  const auto v = CheckSchedule(i, s);
  REQUIRE(v.size() == 1);
  CHECK(v[0].code == ViolationCode::kP1Unassigned);
}

TEST_CASE("construction places priority 1 before the rest") {
  Instance i = Grid(1, 1, 1, 300, 5, 5);
  i.registrations = {Reg(1, 3, 200), Reg(2, 2, 200), Reg(3, 1, 200)};
  Rng rng(4);
  const Schedule s = ConstructInitial(i, rng);
  REQUIRE(s.assignments.size() == 1);
  CHECK(s.assignments[0].registration_id == 3);
}

TEST_CASE("improve inserts a waiting registration") {
  Instance i = Grid(1, 1, 2, 300, 5, 5);
  i.registrations = {Reg(1, 1, 200), Reg(2, 2, 200)};
  const Schedule start{{{1, 1, 1, 1, 1}}};
  CHECK(EvaluateObjective(i, start) == ObjectiveVector{1, 0});
  Rng rng(1);
  SearchBudget budget;
  budget.max_iterations = 1000;
  const Schedule out = Improve(start, i, rng, budget);
  CHECK(CheckSchedule(i, out).empty());
  CHECK(EvaluateObjective(i, out) == ObjectiveVector{0, 0});
}

TEST_CASE("improve keeps a local optimum") {
  Instance i = Grid(1, 1, 1, 300, 5, 5);
  i.registrations = {Reg(1, 2, 250), Reg(2, 3, 250)};
  const Schedule start{{{1, 2, 1, 1, 1}}};
  Rng rng(1);
  SearchBudget budget;
  budget.max_iterations = 2000;
  CHECK(Improve(start, i, rng, budget) == start);
}

TEST_CASE("improve never worsens its input") {
  for (uint64_t seed = 1; seed <= 5; ++seed) {
    const Instance i = GenerateInstance(ScenarioPreset("B"), 3, seed);
    Rng rng(seed);
    const Schedule start = ConstructInitial(i, rng);
    REQUIRE(CheckSchedule(i, start).empty());
    SearchBudget budget;
    budget.max_iterations = 5000;
    const Schedule out = Improve(start, i, rng, budget);
    CHECK(CheckSchedule(i, out).empty());
    CHECK(CompareObjectives(EvaluateObjective(i, out), EvaluateObjective(i, start)) !=
          Ordering::kSecondBetter);
  }
}

TEST_CASE("local search improves the initial OR efficiency on Scenario A") {
  int improved = 0;
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    const Instance i = GenerateInstance(ScenarioPreset("A"), 5, seed);
    Rng rng(seed);
    const Schedule start = ConstructInitial(i, rng);
    SearchBudget budget;
    budget.max_iterations = 20000;
    const Schedule out = Improve(start, i, rng, budget);
    improved += ComputeMetrics(i, out).or_time_efficiency >
                ComputeMetrics(i, start).or_time_efficiency;
  }
  CHECK(improved >= 9);
}

TEST_CASE("incumbents are feasible and strictly improving") {
  const Instance i = GenerateInstance(ScenarioPreset("C"), 5, 1);
  std::vector<Incumbent> seen;
  const SolveOutcome outcome =
      Solve(i, Budget(100000), [&](const Incumbent& inc) { seen.push_back(inc); });
  REQUIRE(!seen.empty());
  CHECK(outcome.incumbents_emitted == static_cast<int>(seen.size()));
  for (size_t k = 0; k < seen.size(); ++k) {
    CHECK(seen[k].index == static_cast<int>(k));
    CHECK(CheckSchedule(i, seen[k].schedule).empty());
    CHECK(EvaluateObjective(i, seen[k].schedule) == seen[k].objective);
    if (k > 0) {
      CHECK(CompareObjectives(seen[k].objective, seen[k - 1].objective) ==
            Ordering::kFirstBetter);
    }
  }
  CHECK(seen.back().schedule == outcome.best_schedule);
  CHECK(seen.back().objective == outcome.objective);
}

TEST_CASE("fixed iteration budget is deterministic") {
  const Instance i = GenerateInstance(ScenarioPreset("B"), 5, 3);
  const SolveOutcome a = Solve(i, Budget(50000, 9));
  const SolveOutcome b = Solve(i, Budget(50000, 9));
  CHECK(Dump(ScheduleToJson(a.best_schedule)) == Dump(ScheduleToJson(b.best_schedule)));
  CHECK(a.iterations == b.iterations);
}

TEST_CASE("solver output passes the verifier on every scenario") {
  for (const char* name : {"A", "B", "C"}) {
    for (uint64_t seed = 1; seed <= 3; ++seed) {
      const Instance i = GenerateInstance(ScenarioPreset(name), 5, seed);
      const SolveOutcome outcome = Solve(i, Budget(30000, seed));
      INFO(name, seed);
      CHECK(CheckSchedule(i, outcome.best_schedule).empty());
      CHECK(EvaluateObjective(i, outcome.best_schedule) == outcome.objective);
    }
  }
}

TEST_CASE("everything fits: proved optimal") {
  Instance i = Grid(2, 2, 2, 300, 9, 9);
  i.registrations = {Reg(1, 1, 100, 2), Reg(2, 2, 150, 1), Reg(3, 3, 250, 3)};
  const SolveOutcome outcome = Solve(i, Budget(0));
  CHECK(outcome.proved_optimal);
  CHECK(outcome.objective == ObjectiveVector{0, 0});
  CHECK(outcome.best_schedule.assignments.size() == 3);
}

TEST_CASE("stop request before the first solution") {
  const Instance i = GenerateInstance(ScenarioPreset("A"), 5, 1);
  std::stop_source stop;
  stop.request_stop();
  SolverConfig config = Budget(0);
  config.stop = stop.get_token();
  // The construction still yields a feasible schedule.
  const SolveOutcome outcome = Solve(i, config);
  CHECK(CheckSchedule(i, outcome.best_schedule).empty());
  CHECK(outcome.iterations == 0);
}

TEST_CASE("tiny instances: repeated improve calls reach the oracle optimum") {
  Rng draws(77);
  int runs = 0, converged = 0;
  while (runs < 100) {
    const Instance i = testing::RandomTinyInstance(draws);
    OracleResult exact;
    try {
      exact = BruteForceSchedule(i, OracleLimits{});
    } catch (const Error&) {
      continue;  // infeasible draw
    }
    ++runs;
    Rng rng(draws.Next());
    Schedule s = ConstructInitial(i, rng);
    SearchBudget budget;
    budget.max_iterations = 2000;
    for (int call = 0; call < 5; ++call) s = Improve(s, i, rng, budget);
    if (CheckSchedule(i, s).empty() && EvaluateObjective(i, s) == exact.objective) {
      ++converged;
    }
  }
  CHECK(converged >= 95);
}

}  // namespace
}  // namespace orsched
