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

#include "core/error.hpp"

namespace starreg {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidSpec: return "InvalidSpec";
    case ErrorCode::kBackendLimit: return "BackendLimit";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kNonHermitianObservable: return "NonHermitianObservable";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kNoSuchOrder: return "NoSuchOrder";
    case ErrorCode::kUnnormalizedDistribution: return "UnnormalizedDistribution";
    case ErrorCode::kSymmetryViolation: return "SymmetryViolation";
    case ErrorCode::kInsufficientFilters: return "InsufficientFilters";
    case ErrorCode::kMissingRelaxationTimes: return "MissingRelaxationTimes";
    case ErrorCode::kDegenerateObservable: return "DegenerateObservable";
    case ErrorCode::kAllZeroProbabilities: return "AllZeroProbabilities";
    case ErrorCode::kNonpositiveFisher: return "NonpositiveFisher";
    case ErrorCode::kSeriesTooShort: return "SeriesTooShort";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kUnknownKey: return "UnknownKey";
    case ErrorCode::kMissingRequired: return "MissingRequired";
    case ErrorCode::kColumnMismatch: return "ColumnMismatch";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace starreg
