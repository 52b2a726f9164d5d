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

#include "generator.h"

#include <algorithm>
#include <cmath>

#include "status.h"

namespace orsched {
namespace {

std::vector<SpecialtyGenParams> DefaultSpecialties() {
  // specialty, registrations per 5 days, ORs, surgery mean (std), LOS mean
  // (std), ICU fraction, ICU LOS mean (std), days admitted before surgery.
  return {
      {1, 80, 3, 124.0, 59.52, 7.91, 2.0, 0.10, 1.0, 1.0, 1},
      {2, 70, 2, 99.0, 17.82, 9.81, 2.0, 0.10, 1.0, 1.0, 1},
      {3, 70, 2, 134.0, 25.46, 11.06, 3.0, 0.10, 1.0, 1.0, 1},
      {4, 60, 1, 95.0, 19.95, 6.36, 1.0, 0.10, 1.0, 1.0, 0},
      {5, 70, 2, 105.0, 30.45, 2.48, 1.0, 0.10, 1.0, 1.0, 0},
  };
}

std::vector<BedAvailability> BedTable(
    const std::array<std::array<int, 5>, 6>& rows) {
  std::vector<BedAvailability> table;
  for (int ward = 0; ward < 6; ++ward) {
    for (int day = 1; day <= 5; ++day) {
      table.push_back({ward, day, rows[ward][day - 1]});
    }
  }
  return table;
}

}  // namespace

ScenarioSpec ScenarioPreset(std::string_view name) {
  ScenarioSpec spec;
  spec.name = std::string(name);
  spec.specialty_params = DefaultSpecialties();
  if (name == "A") {
    spec.bed_table = BedTable({{{40, 40, 40, 40, 40},
                                {80, 80, 80, 80, 80},
                                {58, 58, 58, 58, 58},
                                {65, 65, 65, 65, 65},
                                {57, 57, 57, 57, 57},
                                {40, 40, 40, 40, 40}}});
  } else if (name == "B") {
    spec.bed_table = BedTable({{{4, 4, 5, 5, 6},
                                {20, 30, 40, 45, 50},
                                {10, 15, 23, 30, 35},
                                {10, 14, 21, 30, 35},
                                {8, 10, 14, 16, 18},
                                {10, 14, 20, 23, 25}}});
  } else if (name == "C") {
    spec.bed_table = BedTable({{{4, 4, 5, 5, 6},
                                {10, 15, 20, 25, 30},
                                {7, 10, 11, 14, 18},
                                {7, 10, 13, 16, 20},
                                {4, 6, 8, 11, 13},
                                {6, 9, 12, 15, 18}}});
  } else {
    throw Error(ErrorCode::kInvalidArgument,
                "unknown scenario '" + std::string(name) + "' (use A, B or C)");
  }
  return spec;
}

int SampleTruncatedNormal(double mean, double std, int lower_bound, Rng& rng,
                          int upper_bound) {
  if (upper_bound < lower_bound) {
    throw Error(ErrorCode::kInvalidArgument, "empty truncation interval");
  }
  if (std <= 0.0) {
    return std::clamp(static_cast<int>(std::lround(mean)), lower_bound,
                      upper_bound);
  }
  for (;;) {
    const int value = static_cast<int>(std::lround(mean + std * rng.Normal()));
    if (value >= lower_bound && value <= upper_bound) return value;
  }
}

int RegistrationsFor(const SpecialtyGenParams& params, int days, bool* exact) {
  const int64_t scaled = static_cast<int64_t>(params.registrations_per_5day) * days;
  if (exact != nullptr) *exact = scaled % 5 == 0;
  return static_cast<int>(std::lround(static_cast<double>(scaled) / 5.0));
}

Instance GenerateInstance(const ScenarioSpec& scenario, int days,
                          uint64_t seed, std::vector<std::string>* warnings) {
  if (days < 1) {
    throw Error(ErrorCode::kInvalidArgument, "days must be >= 1");
  }
  Instance instance;
  instance.horizon = days;
  Rng rng(seed);

  int or_id = 1;
  for (const SpecialtyGenParams& p : scenario.specialty_params) {
    for (int k = 0; k < p.or_count; ++k, ++or_id) {
      for (int session = 1; session <= scenario.sessions_per_day; ++session) {
        instance.capacities.push_back(
            {or_id, session, scenario.session_minutes});
        for (int day = 1; day <= days; ++day) {
          instance.mss.push_back({or_id, session, p.specialty, day});
        }
      }
    }
  }

  bool proportional = false;
  int next_id = 1;
  const auto& w = scenario.priority_weights;
  const double total_weight = w[0] + w[1] + w[2];
  for (const SpecialtyGenParams& p : scenario.specialty_params) {
    bool exact = true;
    const int count = RegistrationsFor(p, days, &exact);
    if (!exact) {
      proportional = true;
      if (warnings != nullptr) {
        warnings->push_back("specialty " + std::to_string(p.specialty) +
                            ": " + std::to_string(p.registrations_per_5day) +
                            " x " + std::to_string(days) +
                            "/5 registrations rounded to " +
                            std::to_string(count));
      }
    }
    for (int k = 0; k < count; ++k) {
      Registration r;
      r.id = next_id++;
      r.specialty = p.specialty;
      const double u = rng.Uniform01() * total_weight;
      r.priority = u < w[0] ? 1 : (u < w[0] + w[1] ? 2 : 3);
      r.surgery_duration =
          SampleTruncatedNormal(p.surgery_mean, p.surgery_std, 1, rng,
                                scenario.session_minutes);
      r.los_after = SampleTruncatedNormal(p.los_mean, p.los_std, 1, rng);
      if (rng.Uniform01() < p.icu_fraction) {
        r.icu_los = std::min(
            SampleTruncatedNormal(p.icu_mean, p.icu_std, 1, rng), r.los_after);
      }
      r.admit_advance = p.admit_advance;
      instance.registrations.push_back(r);
    }
  }

  std::vector<BedAvailability> table = scenario.bed_table;
  std::sort(table.begin(), table.end(),
            [](const BedAvailability& a, const BedAvailability& b) {
              return std::tie(a.ward, a.day) < std::tie(b.ward, b.day);
            });
  int table_days = 0;
  for (const BedAvailability& b : table) table_days = std::max(table_days, b.day);
  for (const BedAvailability& b : table) {
    for (int day = b.day; day <= days; day += table_days) {
      instance.beds.push_back({b.ward, day, b.available});
    }
  }
  std::sort(instance.beds.begin(), instance.beds.end(),
            [](const BedAvailability& a, const BedAvailability& b) {
              return std::tie(a.ward, a.day) < std::tie(b.ward, b.day);
            });
  if (days > table_days && warnings != nullptr) {
    warnings->push_back("bed table cycled beyond day " +
                        std::to_string(table_days));
  }

  GenerationInfo info;
  info.scenario = scenario.name;
  info.seed = seed;
  info.days = days;
  info.generator = std::string(kGeneratorVersion);
  info.cycled_beds = days > table_days;
  info.proportional_counts = proportional;
  instance.generation = info;
  return instance;
}

}  // namespace orsched
