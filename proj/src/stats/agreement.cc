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

#include "persuasion/stats/agreement.h"

#include <algorithm>
#include <set>

#include "persuasion/error.h"

namespace persuasion::stats {

KappaResult FleissKappa(const std::vector<std::vector<int64_t>>& ratings) {
  if (ratings.empty()) {
    throw Error(ErrorCode::kInsufficientData, "Fleiss kappa needs at least one item");
  }
  const size_t categories = ratings.front().size();
  if (categories < 2) {
    throw Error(ErrorCode::kInvalidArgument, "Fleiss kappa needs >= 2 categories");
  }
  int64_t raters = -1;
  for (size_t i = 0; i < ratings.size(); ++i) {
    if (ratings[i].size() != categories) {
      throw Error(ErrorCode::kInvalidArgument, "ragged ratings matrix");
    }
    int64_t total = 0;
    for (int64_t c : ratings[i]) {
      if (c < 0) throw Error(ErrorCode::kInvalidArgument, "negative rating count");
      total += c;
    }
    if (raters < 0) raters = total;
    if (total != raters) {
      throw Error(ErrorCode::kUnequalRaterCounts,
                  "item " + std::to_string(i) + " has " + std::to_string(total) +
                      " ratings, expected " + std::to_string(raters));
    }
  }
  if (raters < 2) {
    throw Error(ErrorCode::kUnequalRaterCounts, "each item needs at least 2 raters");
  }

  const double n = static_cast<double>(raters);
  const double items = static_cast<double>(ratings.size());
  std::vector<double> category_totals(categories, 0.0);
  double mean_item_agreement = 0.0;
  for (const auto& row : ratings) {
    double sum_sq = 0.0;
    for (size_t j = 0; j < categories; ++j) {
      const double c = static_cast<double>(row[j]);
      sum_sq += c * c;
      category_totals[j] += c;
    }
    mean_item_agreement += (sum_sq - n) / (n * (n - 1.0));
  }
  mean_item_agreement /= items;

  double chance = 0.0;
  for (double total : category_totals) {
    const double share = total / (items * n);
    chance += share * share;
  }
  if (chance >= 1.0) {
    throw Error(ErrorCode::kDegenerateAllOneCategory,
                "every rating falls in one category; kappa is undefined");
  }
  return {(mean_item_agreement - chance) / (1.0 - chance),
          static_cast<int64_t>(ratings.size()), raters,
          static_cast<int64_t>(categories)};
}

double AgreementFraction(std::span<const int64_t> category_counts) {
  int64_t total = 0;
  int64_t best = 0;
  for (int64_t c : category_counts) {
    total += c;
    best = std::max(best, c);
  }
  if (total <= 0) {
    throw Error(ErrorCode::kInsufficientData, "agreement needs at least one judgment");
  }
  return static_cast<double>(best) / static_cast<double>(total);
}

double AgreementFraction(const PairVotes& votes) {
  const int64_t counts[] = {votes.first_votes, votes.second_votes};
  return AgreementFraction(counts);
}

bool MeetsThreshold(double agreement, double threshold) {
  return agreement >= threshold - 1e-12;
}

std::vector<PairVotes> FilterByAgreement(std::span<const PairVotes> votes,
                                         double threshold) {
  std::vector<PairVotes> kept;
  for (const PairVotes& v : votes) {
    if (v.total() > 0 && MeetsThreshold(AgreementFraction(v), threshold)) {
      kept.push_back(v);
    }
  }
  return kept;
}

std::vector<SocialDimension> EntitiesOf(std::span<const PairVotes> votes) {
  std::set<SocialDimension> seen;
  for (const PairVotes& v : votes) {
    seen.insert(v.first);
    seen.insert(v.second);
  }
  return {seen.begin(), seen.end()};
}

PairwiseTally TallyFromVotes(std::span<const PairVotes> votes, double threshold,
                             std::vector<SocialDimension> entities) {
  PairwiseTally tally = PairwiseTally::Empty(std::move(entities));
  for (const PairVotes& v : FilterByAgreement(votes, threshold)) {
    if (v.first_votes > 0) tally.AddWin(v.first, v.second, v.first_votes);
    if (v.second_votes > 0) tally.AddWin(v.second, v.first, v.second_votes);
  }
  return tally;
}

std::vector<double> DefaultThresholdGrid() {
  std::vector<double> grid;
  for (int k = 10; k <= 18; ++k) grid.push_back(k / 20.0);
  return grid;
}

std::vector<SweepPoint> SensitivitySweep(std::span<const PairVotes> votes,
                                         std::span<const double> thresholds,
                                         const FitOptions& options) {
  for (double t : thresholds) {
    if (!(t >= 0.0 && t <= 1.0)) {
      throw Error(ErrorCode::kInvalidArgument, "thresholds must lie in [0, 1]");
    }
  }
  const std::vector<SocialDimension> entities = EntitiesOf(votes);
  std::vector<SweepPoint> points;
  for (double t : thresholds) {
    SweepPoint point{t, FilterByAgreement(votes, t).size(), std::nullopt,
                     std::nullopt, ""};
    try {
      BradleyTerryFit fit = FitBradleyTerry(TallyFromVotes(votes, t, entities), options);
      point.ranking = RankDimensions(fit);
      point.fit = std::move(fit);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kDegenerateTally) throw;
      point.degenerate_reason = e.what();
    }
    points.push_back(std::move(point));
  }
  return points;
}

}  // namespace persuasion::stats
