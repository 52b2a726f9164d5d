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

#ifndef ORSCHED_SERVICE_H_
#define ORSCHED_SERVICE_H_

#include <memory>
#include <string>

#include "model.h"

namespace orsched {

// Beds after applying a quota: floor(available * percent / 100).
Instance ApplyBedQuota(Instance instance, int percent);

struct ServiceOptions {
  // Scenario documents live in <store_dir>/scenarios; created on demand and
  // seeded with the A, B and C presets.
  std::string store_dir = "orsched-store";
  // When non-empty every request must carry "Authorization: Bearer <token>".
  std::string token;
};

// HTTP front end for scenarios and long-running solve/reschedule jobs.
//
//   POST   /scenarios          {"scenario": {...}}
//   GET    /scenarios
//   GET    /scenarios/{id}
//   POST   /jobs               {"kind", "scenario_id" | "instance", ...}
//   GET    /jobs/{id}?since=k  state plus incumbents with index >= k
//   GET    /jobs/{id}/incumbents/{index}
//   GET    /jobs/{id}/results
//   DELETE /jobs/{id}
//
// Errors are {"error": {"code", "message"}} with a 4xx status.
class Service {
 public:
  explicit Service(ServiceOptions options);
  ~Service();

  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  // Returns the bound port, or -1.
  int BindToAnyPort(const std::string& host);
  bool Bind(const std::string& host, int port);
  // Serves until Stop(); call after a successful bind.
  bool Listen();
  void Stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace orsched

#endif  // ORSCHED_SERVICE_H_
