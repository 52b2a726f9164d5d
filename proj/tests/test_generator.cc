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

#include <cmath>
#include <map>

#include "doctest.h"
#include "generator.h"
#include "json_io.h"
#include "status.h"

namespace orsched {
namespace {

int Beds(const Instance& i, int ward, int day) {
  for (const BedAvailability& b : i.beds) {
    if (b.ward == ward && b.day == day) return b.available;
  }
  return -1;
}

std::map<int, int> CountBySpecialty(const Instance& i) {
  std::map<int, int> counts;
  for (const Registration& r : i.registrations) ++counts[r.specialty];
  return counts;
}

TEST_CASE("bed tables of the three scenarios") {
  // Rows: ICU, then specialties 1 to 5; columns: days 1 to 5.
  const int a[6][5] = {{40, 40, 40, 40, 40}, {80, 80, 80, 80, 80},
                       {58, 58, 58, 58, 58}, {65, 65, 65, 65, 65},
                       {57, 57, 57, 57, 57}, {40, 40, 40, 40, 40}};
  const int b[6][5] = {{4, 4, 5, 5, 6},      {20, 30, 40, 45, 50},
                       {10, 15, 23, 30, 35}, {10, 14, 21, 30, 35},
                       {8, 10, 14, 16, 18},  {10, 14, 20, 23, 25}};
  const int c[6][5] = {{4, 4, 5, 5, 6},    {10, 15, 20, 25, 30},
                       {7, 10, 11, 14, 18}, {7, 10, 13, 16, 20},
                       {4, 6, 8, 11, 13},  {6, 9, 12, 15, 18}};
  const std::pair<const char*, const int(*)[5]> tables[] = {{"A", a}, {"B", b}, {"C", c}};
  for (const auto& [name, table] : tables) {
    const Instance i = GenerateInstance(ScenarioPreset(name), 5, 1);
    CHECK(i.beds.size() == 30);
    for (int ward = 0; ward <= 5; ++ward) {
      for (int day = 1; day <= 5; ++day) {
        INFO(name, " ward ", ward, " day ", day);
        CHECK(Beds(i, ward, day) == table[ward][day - 1]);
      }
    }
  }
}

TEST_CASE("longer horizons cycle the weekly bed table") {
  const Instance i = GenerateInstance(ScenarioPreset("B"), 12, 1);
  for (int ward = 0; ward <= 5; ++ward) {
    for (int day = 1; day <= 12; ++day) {
      CHECK(Beds(i, ward, day) == Beds(i, ward, (day - 1) % 5 + 1));
    }
  }
  REQUIRE(i.generation.has_value());
  CHECK(i.generation->cycled_beds);
  CHECK_FALSE(GenerateInstance(ScenarioPreset("B"), 5, 1).generation->cycled_beds);
}

TEST_CASE("registration counts per horizon") {
  const int per_day[] = {16, 14, 14, 12, 14};
  for (int days : {1, 2, 3, 5, 7, 10, 15}) {
    std::vector<std::string> warnings;
    const Instance i = GenerateInstance(ScenarioPreset("A"), days, 4, &warnings);
    CHECK(warnings.size() == (days > 5 ? 1u : 0u));  // only the bed-cycling note
    CHECK(i.registrations.size() == static_cast<size_t>(70 * days));
    const auto counts = CountBySpecialty(i);
    for (int s = 1; s <= 5; ++s) CHECK(counts.at(s) == per_day[s - 1] * days);
  }
}

TEST_CASE("Scenario A, 5 days: 80/70/70/60/70 and 30,000 minutes") {
  const Instance i = GenerateInstance(ScenarioPreset("A"), 5, 9);
  const auto counts = CountBySpecialty(i);
  CHECK(counts == std::map<int, int>{{1, 80}, {2, 70}, {3, 70}, {4, 60}, {5, 70}});
  std::map<int, int> capacity;
  for (const SessionCapacity& c : i.capacities) capacity[c.or_id * 10 + c.session] = c.duration;
  int64_t minutes = 0;
  std::map<int, int> ors_per_specialty;
  for (const MssSlot& s : i.mss) minutes += capacity.at(s.or_id * 10 + s.session);
  for (const MssSlot& s : i.mss) {
    if (s.day == 1 && s.session == 1) ++ors_per_specialty[s.specialty];
  }
  CHECK(minutes == 30000);
  CHECK(ors_per_specialty == std::map<int, int>{{1, 3}, {2, 2}, {3, 2}, {4, 1}, {5, 2}});
}

TEST_CASE("scenarios share waiting lists for a seed") {
  const Instance a = GenerateInstance(ScenarioPreset("A"), 5, 21);
  const Instance b = GenerateInstance(ScenarioPreset("B"), 5, 21);
  CHECK(a.registrations == b.registrations);
  CHECK(a.beds != b.beds);
}

TEST_CASE("generation is deterministic per seed") {
  const std::string first =
      Dump(InstanceToJson(GenerateInstance(ScenarioPreset("B"), 5, 7)));
  const std::string second =
      Dump(InstanceToJson(GenerateInstance(ScenarioPreset("B"), 5, 7)));
  const std::string other =
      Dump(InstanceToJson(GenerateInstance(ScenarioPreset("B"), 5, 8)));
  CHECK(first == second);
  CHECK(first != other);
}

TEST_CASE("registration fields respect their bounds") {
  int icu = 0, total = 0;
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    const Instance i = GenerateInstance(ScenarioPreset("C"), 5, seed);
    CHECK(ValidateInstance(i).ok());
    for (const Registration& r : i.registrations) {
      CHECK(r.surgery_duration >= 1);
      CHECK(r.surgery_duration <= 300);
      CHECK(r.los_after >= 1);
      CHECK(r.icu_los >= 0);
      CHECK(r.icu_los <= r.los_after);
      icu += r.icu_los > 0;
      ++total;
    }
  }
  // All specialties use a 10% ICU share.
  const double share = static_cast<double>(icu) / total;
  const double se = std::sqrt(0.1 * 0.9 / total);
  CHECK(std::abs(share - 0.1) < 4 * se);
}

TEST_CASE("priority shares over 50 seeds") {
  std::array<int, 3> counts{};
  int total = 0;
  for (uint64_t seed = 1; seed <= 50; ++seed) {
    for (const Registration& r : GenerateInstance(ScenarioPreset("A"), 5, seed).registrations) {
      ++counts[r.priority - 1];
      ++total;
    }
  }
  const double weights[] = {0.20, 0.40, 0.40};
  for (int p = 0; p < 3; ++p) {
    CHECK(std::abs(static_cast<double>(counts[p]) / total - weights[p]) <= 0.05);
  }
}

TEST_CASE("truncated normal with zero deviation") {
  Rng rng(1);
  CHECK(SampleTruncatedNormal(7.91, 0.0, 1, rng) == 8);
  CHECK(SampleTruncatedNormal(0.2, 0.0, 1, rng) == 1);
}

TEST_CASE("truncated normal never goes below the bound") {
  Rng rng(2);
  bool ok = true;
  for (int k = 0; k < 1000000; ++k) ok &= SampleTruncatedNormal(2.48, 1.0, 1, rng) >= 1;
  CHECK(ok);
}

// Mean and deviation of round(N(mean, std)) conditioned on >= lower.
std::pair<double, double> DiscreteTruncatedMoments(double mean, double std, int lower) {
  auto cdf = [&](double x) { return 0.5 * std::erfc(-(x - mean) / (std * std::sqrt(2.0))); };
  double mass = 0, m1 = 0, m2 = 0;
  for (int k = lower; k <= static_cast<int>(mean + 40 * std) + 1; ++k) {
    const double p = cdf(k + 0.5) - cdf(k - 0.5);
    mass += p;
    m1 += p * k;
    m2 += p * k * k;
  }
  const double mu = m1 / mass;
  return {mu, std::sqrt(m2 / mass - mu * mu)};
}

TEST_CASE("truncated normal sample mean matches the analytic mean") {
  const struct {
    double mean, std;
  } cases[] = {{2.48, 1.0}, {1.0, 1.0}, {7.91, 2.0}, {11.06, 3.0}};
  Rng rng(3);
  const int n = 100000;
  for (const auto& c : cases) {
    double sum = 0;
    for (int k = 0; k < n; ++k) sum += SampleTruncatedNormal(c.mean, c.std, 1, rng);
    const auto [mu, sd] = DiscreteTruncatedMoments(c.mean, c.std, 1);
    INFO("mean ", c.mean, " std ", c.std, " analytic ", mu);
    CHECK(std::abs(sum / n - mu) <= 3 * sd / std::sqrt(static_cast<double>(n)));
  }
}

TEST_CASE("upper bound on draws") {
  Rng rng(4);
  bool ok = true;
  for (int k = 0; k < 100000; ++k) {
    const int v = SampleTruncatedNormal(124.0, 59.52, 1, rng, 300);
    ok &= v >= 1 && v <= 300;
  }
  CHECK(ok);
  CHECK_THROWS_AS(SampleTruncatedNormal(5.0, 1.0, 3, rng, 2), Error);
}

TEST_CASE("unknown preset and bad horizon") {
  CHECK_THROWS_AS(ScenarioPreset("D"), Error);
  CHECK_THROWS_AS(GenerateInstance(ScenarioPreset("A"), 0, 1), Error);
}

TEST_CASE("proportional counts warn") {
  SpecialtyGenParams p;
  p.registrations_per_5day = 80;
  bool exact = true;
  CHECK(RegistrationsFor(p, 4, &exact) == 64);
  CHECK(exact);
  p.registrations_per_5day = 7;
  CHECK(RegistrationsFor(p, 3, &exact) == 4);
  CHECK_FALSE(exact);
}

}  // namespace
}  // namespace orsched
