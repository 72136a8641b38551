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

#ifndef RTGDIAG_ERROR_H_
#define RTGDIAG_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace rtgdiag {

enum class ErrorCode {
  kSyntax,
  kUndefinedVariable,
  kUnsupportedOperation,
  kInvalidGraph,
  kMergeConflict,
  kPathExplosion,
  kTermExplosion,
  kUncoverable,
  kLengthMismatch,
  kDivisionByZero,
  kUnboundVariable,
  kNoSuchStatement,
  kArityMismatch,
  kNoOpMutation,
  kInfeasiblePath,
  kNoFailures,
  kEmptyDiagnosis,
  kCandidateExplosion,
  kFormat,
  kIo,
};

std::string_view ErrorCodeName(ErrorCode code);

// Every failure raised by the library carries a machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace rtgdiag

#endif  // RTGDIAG_ERROR_H_
