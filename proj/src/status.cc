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

#include "status.h"

namespace orsched {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kParse: return "parse-error";
    case ErrorCode::kInvalidInstance: return "invalid-instance";
    case ErrorCode::kInfeasibleP1: return "infeasible-p1";
    case ErrorCode::kTimeoutNoSolution: return "timeout-no-solution";
    case ErrorCode::kInfeasiblePostponed: return "infeasible-postponed";
    case ErrorCode::kLimitsExceeded: return "limits-exceeded";
    case ErrorCode::kNegativeAvailability: return "negative-availability";
    case ErrorCode::kViolations: return "schedule-violations";
    case ErrorCode::kIo: return "io-error";
    case ErrorCode::kNotFound: return "not-found";
    case ErrorCode::kCancelled: return "cancelled";
    case ErrorCode::kInternal: return "internal";
  }
  return "internal";
}

}  // namespace orsched
