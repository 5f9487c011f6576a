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

#ifndef PERSUASION_STATS_AGREEMENT_H_
#define PERSUASION_STATS_AGREEMENT_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "persuasion/dimensions.h"
#include "persuasion/stats/bradley_terry.h"

namespace persuasion::stats {

struct KappaResult {
  double kappa;
  int64_t n_items;
  int64_t n_raters_per_item;
  int64_t category_count;
};

// Fleiss' kappa over an items x categories matrix of rater counts.
// Every item needs the same rater total n >= 2 (kUnequalRaterCounts
// otherwise); all ratings in one category raise kDegenerateAllOneCategory.
KappaResult FleissKappa(const std::vector<std::vector<int64_t>>& ratings);

// Aggregated forced-choice votes on one argument pair.
struct PairVotes {
  std::string pair_id;
  SocialDimension first;
  SocialDimension second;
  int64_t first_votes = 0;
  int64_t second_votes = 0;

  int64_t total() const { return first_votes + second_votes; }
};

// Share of judgments on the majority side: max count / total.
double AgreementFraction(std::span<const int64_t> category_counts);
double AgreementFraction(const PairVotes& votes);

// Comparison against a threshold with slack for thresholds built by
// repeated decimal steps (0.5 + 0.05 + ...).
bool MeetsThreshold(double agreement, double threshold);

// Pairs whose agreement fraction meets the threshold.
std::vector<PairVotes> FilterByAgreement(std::span<const PairVotes> votes,
                                         double threshold);

// Every vote on a kept pair adds one win for the chosen side's dimension.
// `entities` fixes the tally's entity set; an entity absent from every kept
// pair stays in it with no comparisons.
PairwiseTally TallyFromVotes(std::span<const PairVotes> votes, double threshold,
                             std::vector<SocialDimension> entities);

// Dimensions appearing in any pair, in enumeration order.
std::vector<SocialDimension> EntitiesOf(std::span<const PairVotes> votes);

// {0.50, 0.55, ..., 0.90}.
std::vector<double> DefaultThresholdGrid();

struct SweepPoint {
  double threshold;
  size_t retained_pairs;
  std::optional<Ranking> ranking;  // empty when the tally is degenerate
  std::optional<BradleyTerryFit> fit;
  std::string degenerate_reason;
};

// Refits and reranks at every threshold over the same entity set. A tally
// that cannot be fitted is recorded as a degenerate point, not an error.
std::vector<SweepPoint> SensitivitySweep(std::span<const PairVotes> votes,
                                         std::span<const double> thresholds,
                                         const FitOptions& options = {});

}  // namespace persuasion::stats

#endif  // PERSUASION_STATS_AGREEMENT_H_
