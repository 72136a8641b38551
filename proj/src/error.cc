// Copyright 2026 The rtgdiag Authors
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

#include "rtgdiag/error.h"

namespace rtgdiag {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSyntax: return "SyntaxError";
    case ErrorCode::kUndefinedVariable: return "UndefinedVariable";
    case ErrorCode::kUnsupportedOperation: return "UnsupportedOperation";
    case ErrorCode::kInvalidGraph: return "InvalidGraph";
    case ErrorCode::kMergeConflict: return "MergeConflict";
    case ErrorCode::kPathExplosion: return "PathExplosion";
    case ErrorCode::kTermExplosion: return "TermExplosion";
    case ErrorCode::kUncoverable: return "Uncoverable";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kDivisionByZero: return "DivisionByZero";
    case ErrorCode::kUnboundVariable: return "UnboundVariable";
    case ErrorCode::kNoSuchStatement: return "NoSuchStatement";
    case ErrorCode::kArityMismatch: return "ArityMismatch";
    case ErrorCode::kNoOpMutation: return "NoOpMutation";
    case ErrorCode::kInfeasiblePath: return "InfeasiblePath";
    case ErrorCode::kNoFailures: return "NoFailures";
    case ErrorCode::kEmptyDiagnosis: return "EmptyDiagnosis";
    case ErrorCode::kCandidateExplosion: return "CandidateExplosion";
    case ErrorCode::kFormat: return "FormatError";
    case ErrorCode::kIo: return "IoError";
  }
  return "Unknown";
}

}  // namespace rtgdiag
