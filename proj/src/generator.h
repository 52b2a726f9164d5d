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

#ifndef ORSCHED_GENERATOR_H_
#define ORSCHED_GENERATOR_H_

#include <array>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "model.h"
#include "rng.h"

namespace orsched {

inline constexpr std::string_view kGeneratorVersion = "orsched-gen/1";

struct SpecialtyGenParams {
  int specialty = 1;
  int registrations_per_5day = 0;
  int or_count = 0;
  double surgery_mean = 0.0;  // minutes
  double surgery_std = 0.0;
  double los_mean = 0.0;  // days
  double los_std = 0.0;
  double icu_fraction = 0.0;
  double icu_mean = 0.0;
  double icu_std = 0.0;
  int admit_advance = 0;

  friend bool operator==(const SpecialtyGenParams&,
                         const SpecialtyGenParams&) = default;
};

struct ScenarioSpec {
  std::string name;
  // Five-day table, wards 0 (ICU) to 5; cycled for longer horizons.
  std::vector<BedAvailability> bed_table;
  std::vector<SpecialtyGenParams> specialty_params;
  std::array<double, 3> priority_weights = {0.20, 0.40, 0.40};
  int sessions_per_day = 2;
  int session_minutes = 300;

  friend bool operator==(const ScenarioSpec&, const ScenarioSpec&) = default;
};

// Presets "A" (ample beds), "B" (bed shortage) and "C" (severe shortage).
// Throws Error(kInvalidArgument) for other names.
ScenarioSpec ScenarioPreset(std::string_view name);

// Integer draw from N(mean, std) rounded to nearest, redrawn until it lies in
// [lower_bound, upper_bound]. std == 0 yields round(mean) clamped.
int SampleTruncatedNormal(double mean, double std, int lower_bound, Rng& rng,
                          int upper_bound = std::numeric_limits<int>::max());

// Registrations of one specialty for a `days` horizon. Sets *exact to false
// when the proportional count is not an integer and had to be rounded.
int RegistrationsFor(const SpecialtyGenParams& params, int days, bool* exact);

// Deterministic in (scenario, days, seed). Registrations depend only on the
// specialty parameters and the seed, so scenarios sharing parameters share
// waiting lists.
Instance GenerateInstance(const ScenarioSpec& scenario, int days,
                          uint64_t seed,
                          std::vector<std::string>* warnings = nullptr);

}  // namespace orsched

#endif  // ORSCHED_GENERATOR_H_
