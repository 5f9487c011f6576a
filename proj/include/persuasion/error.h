// Copyright 2026 The Persuasion Harness Authors.
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

#ifndef PERSUASION_ERROR_H_
#define PERSUASION_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace persuasion {

// Every failure raised by the library carries one of these codes so callers
// (and the CLI's exit-code mapping) can branch without parsing messages.
enum class ErrorCode {
  kInvalidArgument,
  kConfigError,
  kParseError,
  kIoError,
  // Dialogue protocol.
  kEmptyHistory,
  kNonAlternatingHistory,
  kAmbiguousSignal,
  kBackendError,
  // Chat-completion gateway.
  kTimeout,
  kRemoteError,
  kExhaustedRetries,
  kUnknownCell,
  // Experiment aggregation.
  kEmptyCell,
  kDivisionByZero,
  // Statistics.
  kDegenerateTally,
  kUnknownEntity,
  kUnequalRaterCounts,
  kDegenerateAllOneCategory,
  kInsufficientData,
  kAllZeroMargin,
  kDimensionMismatch,
  kZeroVector,
  // Annotation service.
  kInsufficientArguments,
  kEmptyControlCorpus,
  kUnknownWorker,
  kUnknownPair,
  kDuplicateJudgment,
  kUnservedPair,
  kRedundancyReached,
};

std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace persuasion

#endif  // PERSUASION_ERROR_H_
