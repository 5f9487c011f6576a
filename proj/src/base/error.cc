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

#include "persuasion/error.h"

namespace persuasion {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kConfigError: return "ConfigError";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kEmptyHistory: return "EmptyHistory";
    case ErrorCode::kNonAlternatingHistory: return "NonAlternatingHistory";
    case ErrorCode::kAmbiguousSignal: return "AmbiguousSignal";
    case ErrorCode::kBackendError: return "BackendError";
    case ErrorCode::kTimeout: return "Timeout";
    case ErrorCode::kRemoteError: return "RemoteError";
    case ErrorCode::kExhaustedRetries: return "ExhaustedRetries";
    case ErrorCode::kUnknownCell: return "UnknownCell";
    case ErrorCode::kEmptyCell: return "EmptyCell";
    case ErrorCode::kDivisionByZero: return "DivisionByZero";
    case ErrorCode::kDegenerateTally: return "DegenerateTally";
    case ErrorCode::kUnknownEntity: return "UnknownEntity";
    case ErrorCode::kUnequalRaterCounts: return "UnequalRaterCounts";
    case ErrorCode::kDegenerateAllOneCategory: return "DegenerateAllOneCategory";
    case ErrorCode::kInsufficientData: return "InsufficientData";
    case ErrorCode::kAllZeroMargin: return "AllZeroMargin";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kZeroVector: return "ZeroVector";
    case ErrorCode::kInsufficientArguments: return "InsufficientArguments";
    case ErrorCode::kEmptyControlCorpus: return "EmptyControlCorpus";
    case ErrorCode::kUnknownWorker: return "UnknownWorker";
    case ErrorCode::kUnknownPair: return "UnknownPair";
    case ErrorCode::kDuplicateJudgment: return "DuplicateJudgment";
    case ErrorCode::kUnservedPair: return "UnservedPair";
    case ErrorCode::kRedundancyReached: return "RedundancyReached";
  }
  return "Unknown";
}

}  // namespace persuasion
