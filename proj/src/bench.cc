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

#include "bench.h"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "status.h"

namespace orsched {

BenchRow RunBenchmarkInstance(const BenchConfig& config, uint64_t seed) {
  BenchRow row;
  row.scenario = config.scenario.name;
  row.days = config.days;
  row.seed = seed;
  const Instance instance = GenerateInstance(config.scenario, config.days, seed);
  const PriorityCensus census = CensusOf(instance);
  for (int p = 1; p <= 3; ++p) row.assigned[p - 1].total = census.total(p);

  SolverConfig solver = config.solver;
  solver.seed = seed;
  solver.emit_incumbents = false;
  try {
    const SolveOutcome outcome = Solve(instance, solver);
    row.elapsed = outcome.elapsed;
    row.iterations = outcome.iterations;
    row.violations =
        static_cast<int>(CheckSchedule(instance, outcome.best_schedule).size());
    if (row.violations > 0) {
      row.status = std::string(ErrorCodeName(ErrorCode::kViolations));
      return row;
    }
    const Metrics metrics = ComputeMetrics(instance, outcome.best_schedule);
    row.assigned = metrics.assigned_by_priority;
    row.or_time_efficiency = metrics.or_time_efficiency;
    row.bed_occupancy_efficiency = metrics.bed_occupancy_efficiency;
  } catch (const Error& e) {
    row.status = std::string(ErrorCodeName(e.code()));
  }
  return row;
}

BenchmarkReport Summarize(std::vector<BenchRow> rows) {
  std::stable_sort(rows.begin(), rows.end(),
                   [](const BenchRow& a, const BenchRow& b) {
                     return a.seed < b.seed;
                   });
  BenchmarkReport report;
  for (const BenchRow& row : rows) {
    if (row.status != "ok") continue;
    ++report.solved_runs;
    report.mean_or_time_efficiency += row.or_time_efficiency;
    report.mean_bed_occupancy_efficiency += row.bed_occupancy_efficiency;
    report.mean_elapsed += row.elapsed;
  }
  if (report.solved_runs > 0) {
    report.mean_or_time_efficiency /= report.solved_runs;
    report.mean_bed_occupancy_efficiency /= report.solved_runs;
    report.mean_elapsed /= report.solved_runs;
  }
  report.rows = std::move(rows);
  return report;
}

BenchmarkReport RunBenchmark(const BenchConfig& config) {
  if (config.runs < 1) {
    throw Error(ErrorCode::kInvalidArgument, "runs must be >= 1");
  }
  std::vector<BenchRow> rows;
  for (int k = 0; k < config.runs; ++k) {
    rows.push_back(RunBenchmarkInstance(config, config.first_seed + k));
  }
  return Summarize(std::move(rows));
}

namespace {

std::string Ratio(const PriorityCount& c) {
  return std::to_string(c.assigned) + " / " + std::to_string(c.total);
}

std::string Percent(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f%%", value * 100.0);
  return buf;
}

}  // namespace

std::string FormatBenchmarkText(const BenchmarkReport& report) {
  const char* kHeader[] = {"scenario", "days", "seed",    "P1",     "P2",
                           "P3",       "OR eff", "bed eff", "time s", "status"};
  std::vector<std::vector<std::string>> table;
  table.emplace_back(std::begin(kHeader), std::end(kHeader));
  for (const BenchRow& row : report.rows) {
    const bool ok = row.status == "ok";
    char elapsed[32];
    std::snprintf(elapsed, sizeof(elapsed), "%.2f", row.elapsed);
    table.push_back({row.scenario, std::to_string(row.days),
                     std::to_string(row.seed),
                     ok ? Ratio(row.assigned[0]) : "-",
                     ok ? Ratio(row.assigned[1]) : "-",
                     ok ? Ratio(row.assigned[2]) : "-",
                     ok ? Percent(row.or_time_efficiency) : "-",
                     ok ? Percent(row.bed_occupancy_efficiency) : "-",
                     elapsed, row.status});
  }
  std::vector<size_t> width(table[0].size(), 0);
  for (const auto& line : table) {
    for (size_t c = 0; c < line.size(); ++c) {
      width[c] = std::max(width[c], line[c].size());
    }
  }
  std::ostringstream out;
  for (const auto& line : table) {
    for (size_t c = 0; c < line.size(); ++c) {
      if (c > 0) out << "  ";
      out << line[c] << std::string(width[c] - line[c].size(), ' ');
    }
    out << "\n";
  }
  char summary[160];
  std::snprintf(summary, sizeof(summary),
                "mean over %d solved runs: OR eff %s, bed eff %s, time %.2f s\n",
                report.solved_runs, Percent(report.mean_or_time_efficiency).c_str(),
                Percent(report.mean_bed_occupancy_efficiency).c_str(),
                report.mean_elapsed);
  out << summary;
  return out.str();
}

nlohmann::json BenchmarkToJson(const BenchmarkReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const BenchRow& row : report.rows) {
    nlohmann::json assigned = nlohmann::json::array();
    for (const PriorityCount& c : row.assigned) {
      assigned.push_back({{"assigned", c.assigned}, {"total", c.total}});
    }
    rows.push_back({{"scenario", row.scenario},
                    {"days", row.days},
                    {"seed", row.seed},
                    {"status", row.status},
                    {"assigned_by_priority", assigned},
                    {"or_time_efficiency", row.or_time_efficiency},
                    {"bed_occupancy_efficiency", row.bed_occupancy_efficiency},
                    {"elapsed", row.elapsed},
                    {"iterations", row.iterations},
                    {"violations", row.violations}});
  }
  return {{"rows", rows},
          {"solved_runs", report.solved_runs},
          {"mean_or_time_efficiency", report.mean_or_time_efficiency},
          {"mean_bed_occupancy_efficiency", report.mean_bed_occupancy_efficiency},
          {"mean_elapsed", report.mean_elapsed}};
}

}  // namespace orsched
