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

#ifndef ORSCHED_BENCH_H_
#define ORSCHED_BENCH_H_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "generator.h"
#include "json.hpp"
#include "solver.h"
#include "verifier.h"

namespace orsched {

struct BenchConfig {
  ScenarioSpec scenario;
  int days = 5;
  int runs = 10;
  uint64_t first_seed = 1;  // run k uses seed first_seed + k
  SolverConfig solver;      // seed is overridden per run
};

struct BenchRow {
  std::string scenario;
  int days = 0;
  uint64_t seed = 0;
  // "ok", or the error code that ended the run (e.g. "infeasible-p1").
  std::string status = "ok";
  std::array<PriorityCount, 3> assigned{};
  double or_time_efficiency = 0.0;
  double bed_occupancy_efficiency = 0.0;
  double elapsed = 0.0;
  int64_t iterations = 0;
  int violations = 0;
};

struct BenchmarkReport {
  std::vector<BenchRow> rows;  // ordered by seed
  // Means over rows with status "ok".
  int solved_runs = 0;
  double mean_or_time_efficiency = 0.0;
  double mean_bed_occupancy_efficiency = 0.0;
  double mean_elapsed = 0.0;
};

BenchRow RunBenchmarkInstance(const BenchConfig& config, uint64_t seed);
BenchmarkReport RunBenchmark(const BenchConfig& config);
BenchmarkReport Summarize(std::vector<BenchRow> rows);

std::string FormatBenchmarkText(const BenchmarkReport& report);
nlohmann::json BenchmarkToJson(const BenchmarkReport& report);

}  // namespace orsched

#endif  // ORSCHED_BENCH_H_
