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

#include "persuasion/dimensions.h"

#include <string>

#include "persuasion/error.h"

namespace persuasion {

std::string_view DimensionId(SocialDimension dimension) {
  switch (dimension) {
    case SocialDimension::kKnowledge: return "knowledge";
    case SocialDimension::kPower: return "power";
    case SocialDimension::kStatus: return "status";
    case SocialDimension::kTrust: return "trust";
    case SocialDimension::kSupport: return "support";
    case SocialDimension::kSimilarity: return "similarity";
    case SocialDimension::kIdentity: return "identity";
    case SocialDimension::kFun: return "fun";
    case SocialDimension::kConflict: return "conflict";
    case SocialDimension::kBaseline: return "baseline";
  }
  return "";
}

std::string_view StubbornnessId(Stubbornness level) {
  switch (level) {
    case Stubbornness::kSoft: return "soft";
    case Stubbornness::kModerate: return "moderate";
    case Stubbornness::kHard: return "hard";
  }
  return "";
}

std::optional<SocialDimension> ParseDimension(std::string_view id) {
  for (SocialDimension d : kAllDimensions) {
    if (DimensionId(d) == id) return d;
  }
  return std::nullopt;
}

std::optional<Stubbornness> ParseStubbornness(std::string_view id) {
  for (Stubbornness s : kAllStubbornness) {
    if (StubbornnessId(s) == id) return s;
  }
  return std::nullopt;
}

SocialDimension DimensionFromId(std::string_view id) {
  auto d = ParseDimension(id);
  if (!d) {
    throw Error(ErrorCode::kParseError,
                "unknown social dimension '" + std::string(id) + "'");
  }
  return *d;
}

Stubbornness StubbornnessFromId(std::string_view id) {
  auto s = ParseStubbornness(id);
  if (!s) {
    throw Error(ErrorCode::kParseError,
                "unknown stubbornness level '" + std::string(id) + "'");
  }
  return *s;
}

}  // namespace persuasion
