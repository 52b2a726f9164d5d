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

#ifndef ORSCHED_STATUS_H_
#define ORSCHED_STATUS_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace orsched {

// Failure categories surfaced through the C API as stable error codes.
enum class ErrorCode {
  kInvalidArgument = 1,
  kParse,
  kInvalidInstance,
  kInfeasibleP1,
  kTimeoutNoSolution,
  kInfeasiblePostponed,
  kLimitsExceeded,
  kNegativeAvailability,
  kViolations,
  kIo,
  kNotFound,
  kCancelled,
  kInternal,
};

// Machine-readable kebab-case name, e.g. "infeasible-p1".
std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace orsched

#endif  // ORSCHED_STATUS_H_
