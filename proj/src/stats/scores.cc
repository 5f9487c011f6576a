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

#include "persuasion/stats/scores.h"

#include <cmath>

#include "persuasion/csv.h"
#include "persuasion/error.h"

namespace persuasion::stats {

const LengthDiscountPolicy& DiscountPolicy(std::string_view name) {
  static const LengthDiscountPolicy kPolicies[] = {
      {"log1p", [](double raw, int64_t words) {
         return raw / std::log1p(static_cast<double>(words));
       }},
      {"per_word", [](double raw, int64_t words) {
         return raw / static_cast<double>(words);
       }},
      {"none", [](double raw, int64_t) { return raw; }},
  };
  for (const auto& policy : kPolicies) {
    if (policy.name == name) return policy;
  }
  throw Error(ErrorCode::kConfigError,
              "unknown length-discount policy '" + std::string(name) + "'");
}

double LengthDiscount(double raw_score, int64_t word_count, std::string_view policy) {
  if (word_count < 1) {
    throw Error(ErrorCode::kInvalidArgument, "word_count must be >= 1");
  }
  return DiscountPolicy(policy).apply(raw_score, word_count);
}

DimensionScoreSet ReadScoresCsv(const std::filesystem::path& path,
                                std::string_view policy) {
  const csv::Table table = csv::ReadFile(path);
  const size_t id_col = table.Column("argument_id");
  const size_t dim_col = table.Column("dimension");
  const size_t score_col = table.Column("score");
  const size_t words_col = table.Column("word_count");
  const LengthDiscountPolicy& discount = DiscountPolicy(policy);

  DimensionScoreSet set;
  set.discount_policy = discount.name;
  for (const auto& row : table.rows) {
    DimensionScore s;
    s.argument_id = row[id_col];
    s.dimension = DimensionFromId(row[dim_col]);
    s.raw = csv::ParseDouble(row[score_col]);
    s.word_count = csv::ParseInt(row[words_col]);
    if (!(s.raw >= 0.0 && s.raw <= 1.0)) {
      throw Error(ErrorCode::kParseError,
                  "score for " + s.argument_id + " is outside [0, 1]");
    }
    if (s.word_count < 1) {
      throw Error(ErrorCode::kParseError, "word_count for " + s.argument_id + " < 1");
    }
    s.discounted = discount.apply(s.raw, s.word_count);
    set.scores.push_back(std::move(s));
  }
  return set;
}

std::vector<ExpressionTest> DimensionExpressionTests(
    const DimensionScoreSet& scores,
    const std::map<std::string, SocialDimension>& strategy_of) {
  std::vector<ExpressionTest> tests;
  for (SocialDimension d : kAllDimensions) {
    if (d == SocialDimension::kBaseline) continue;
    std::vector<double> with_strategy, baseline;
    for (const DimensionScore& s : scores.scores) {
      if (s.dimension != d) continue;
      auto it = strategy_of.find(s.argument_id);
      if (it == strategy_of.end()) continue;
      if (it->second == d) with_strategy.push_back(s.discounted);
      if (it->second == SocialDimension::kBaseline) baseline.push_back(s.discounted);
    }
    if (with_strategy.size() < 2 || baseline.size() < 2) continue;
    auto mean = [](const std::vector<double>& v) {
      double sum = 0.0;
      for (double x : v) sum += x;
      return sum / static_cast<double>(v.size());
    };
    WelchResult welch;
    try {
      welch = WelchTTest(with_strategy, baseline);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kInsufficientData) throw;
      continue;
    }
    tests.push_back({d, with_strategy.size(), baseline.size(), mean(with_strategy),
                     mean(baseline), welch});
  }
  return tests;
}

void EmbeddingSet::Validate() const {
  if (ids.size() != vectors.size()) {
    throw Error(ErrorCode::kInvalidArgument, "embedding ids and vectors differ in count");
  }
  for (size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].size() != vectors.front().size()) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "embedding " + ids[i] + " has length " +
                      std::to_string(vectors[i].size()));
    }
    double norm = 0.0;
    for (double v : vectors[i]) norm += v * v;
    if (norm == 0.0) throw Error(ErrorCode::kZeroVector, "embedding " + ids[i] + " is zero");
  }
}

EmbeddingSet ReadEmbeddingsCsv(const std::filesystem::path& path) {
  const csv::Table table = csv::ReadFile(path);
  const size_t id_col = table.Column("argument_id");
  EmbeddingSet set;
  for (const auto& row : table.rows) {
    set.ids.push_back(row[id_col]);
    std::vector<double> v;
    for (size_t c = 0; c < row.size(); ++c) {
      if (c != id_col) v.push_back(csv::ParseDouble(row[c]));
    }
    set.vectors.push_back(std::move(v));
  }
  set.Validate();
  return set;
}

double MeanCosineSimilarity(const EmbeddingSet& a, const EmbeddingSet& b) {
  a.Validate();
  b.Validate();
  if (a.vectors.empty() || b.vectors.empty()) {
    throw Error(ErrorCode::kInsufficientData, "cosine similarity of an empty set");
  }
  if (a.vectors.front().size() != b.vectors.front().size()) {
    throw Error(ErrorCode::kDimensionMismatch, "embedding sets differ in length");
  }
  auto norm = [](const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
  };
  double total = 0.0;
  for (const auto& x : a.vectors) {
    const double nx = norm(x);
    for (const auto& y : b.vectors) {
      double dot = 0.0;
      for (size_t k = 0; k < x.size(); ++k) dot += x[k] * y[k];
      total += dot / (nx * norm(y));
    }
  }
  return total / static_cast<double>(a.vectors.size() * b.vectors.size());
}

}  // namespace persuasion::stats
