// Copyright 2026 The starreg Authors
//
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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace starreg {

// Numeric values are part of the C ABI (see starreg.h); append only.
enum class ErrorCode : int {
  kInvalidSpec = 1,
  kBackendLimit = 2,
  kShapeMismatch = 3,
  kNonHermitianObservable = 4,
  kIndexOutOfRange = 5,
  kNoSuchOrder = 6,
  kUnnormalizedDistribution = 7,
  kSymmetryViolation = 8,
  kInsufficientFilters = 9,
  kMissingRelaxationTimes = 10,
  kDegenerateObservable = 11,
  kAllZeroProbabilities = 12,
  kNonpositiveFisher = 13,
  kSeriesTooShort = 14,
  kParseError = 15,
  kUnknownKey = 16,
  kMissingRequired = 17,
  kColumnMismatch = 18,
  kInvalidArgument = 19,
  kIoError = 20,
};

std::string_view error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) throw Error(code, what);
}

}  // namespace starreg
