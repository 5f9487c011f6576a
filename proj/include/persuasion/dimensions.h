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

#ifndef PERSUASION_DIMENSIONS_H_
#define PERSUASION_DIMENSIONS_H_

#include <array>
#include <optional>
#include <string_view>

namespace persuasion {

// Social-pragmatics strategy a Convincer is told to use. kBaseline is the
// uninstructed Convincer and is ranked alongside the others as its own entity.
enum class SocialDimension {
  kKnowledge,
  kPower,
  kStatus,
  kTrust,
  kSupport,
  kSimilarity,
  kIdentity,
  kFun,
  kConflict,
  kBaseline,
};

inline constexpr std::array<SocialDimension, 10> kAllDimensions = {
    SocialDimension::kKnowledge,  SocialDimension::kPower,
    SocialDimension::kStatus,     SocialDimension::kTrust,
    SocialDimension::kSupport,    SocialDimension::kSimilarity,
    SocialDimension::kIdentity,   SocialDimension::kFun,
    SocialDimension::kConflict,   SocialDimension::kBaseline,
};

enum class Stubbornness { kSoft, kModerate, kHard };

inline constexpr std::array<Stubbornness, 3> kAllStubbornness = {
    Stubbornness::kSoft, Stubbornness::kModerate, Stubbornness::kHard};

// Lowercase ids used in catalogs, configs and CSV files.
std::string_view DimensionId(SocialDimension dimension);
std::string_view StubbornnessId(Stubbornness level);

std::optional<SocialDimension> ParseDimension(std::string_view id);
std::optional<Stubbornness> ParseStubbornness(std::string_view id);

// Throwing variants for config and file parsing.
SocialDimension DimensionFromId(std::string_view id);
Stubbornness StubbornnessFromId(std::string_view id);

}  // namespace persuasion

#endif  // PERSUASION_DIMENSIONS_H_
