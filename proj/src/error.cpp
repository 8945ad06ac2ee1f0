// Copyright 2026 The lpclt Authors.
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


#include "lpclt/error.hpp"

namespace lpclt {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidOrder: return "invalid-order";
    case ErrorCode::kInvalidTolerance: return "invalid-tolerance";
    case ErrorCode::kInvalidInput: return "invalid-input";
    case ErrorCode::kEmptyGrid: return "empty-grid";
    case ErrorCode::kDimensionMismatch: return "dimension-mismatch";
    case ErrorCode::kInsufficientReps: return "insufficient-reps";
    case ErrorCode::kUnsupported: return "unsupported";
    case ErrorCode::kDegenerateCovariance: return "degenerate-covariance";
    case ErrorCode::kConfig: return "config";
  }
  return "unknown";
}

}  // namespace lpclt
