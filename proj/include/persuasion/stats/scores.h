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

#ifndef PERSUASION_STATS_SCORES_H_
#define PERSUASION_STATS_SCORES_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "persuasion/dimensions.h"
#include "persuasion/stats/hypothesis.h"

namespace persuasion::stats {

// A named rule for normalizing a classifier score by argument length.
struct LengthDiscountPolicy {
  std::string name;
  std::function<double(double raw_score, int64_t word_count)> apply;
};

// "log1p" (default): raw / ln(1 + words)
// "per_word":        raw / words
// "none":            raw
// Throws kConfigError for other names.
const LengthDiscountPolicy& DiscountPolicy(std::string_view name);
inline constexpr std::string_view kDefaultDiscount = "log1p";

// Requires word_count >= 1.
double LengthDiscount(double raw_score, int64_t word_count,
                      std::string_view policy = kDefaultDiscount);

// One classifier reading: how strongly `dimension` is present in an argument.
struct DimensionScore {
  std::string argument_id;
  SocialDimension dimension;
  double raw = 0.0;  // in [0, 1]
  int64_t word_count = 1;
  double discounted = 0.0;
};

struct DimensionScoreSet {
  std::vector<DimensionScore> scores;
  std::string discount_policy = std::string(kDefaultDiscount);
};

// CSV with header argument_id,dimension,score,word_count. Discounted scores
// are filled in with `policy`.
DimensionScoreSet ReadScoresCsv(const std::filesystem::path& path,
                                std::string_view policy = kDefaultDiscount);

struct ExpressionTest {
  SocialDimension dimension;
  size_t n_dimension;
  size_t n_baseline;
  double mean_dimension;
  double mean_baseline;
  WelchResult welch;
};

// For each dimension d other than baseline: Welch test of the discounted
// d-scores of arguments written under strategy d against the discounted
// d-scores of baseline arguments. `strategy_of` maps argument id to the
// strategy that produced it; unmapped arguments are ignored. Dimensions
// lacking data on either side are skipped.
std::vector<ExpressionTest> DimensionExpressionTests(
    const DimensionScoreSet& scores,
    const std::map<std::string, SocialDimension>& strategy_of);

struct EmbeddingSet {
  std::vector<std::string> ids;
  std::vector<std::vector<double>> vectors;

  // Throws kDimensionMismatch on ragged vectors, kZeroVector on a zero vector.
  void Validate() const;
};

// CSV with header argument_id,v0,...,v{D-1}.
EmbeddingSet ReadEmbeddingsCsv(const std::filesystem::path& path);

// Mean of x.y / (|x| |y|) over every cross pair x in a, y in b.
double MeanCosineSimilarity(const EmbeddingSet& a, const EmbeddingSet& b);

}  // namespace persuasion::stats

#endif  // PERSUASION_STATS_SCORES_H_
