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

#ifndef PERSUASION_STATS_BRADLEY_TERRY_H_
#define PERSUASION_STATS_BRADLEY_TERRY_H_

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "persuasion/dimensions.h"

namespace persuasion::stats {

// Win counts between entities: wins[i][j] judgments preferred entities[i]
// over entities[j].
struct PairwiseTally {
  std::vector<SocialDimension> entities;
  std::vector<std::vector<int64_t>> wins;

  static PairwiseTally Empty(std::vector<SocialDimension> entities);

  size_t size() const { return entities.size(); }
  // Throws kUnknownEntity.
  size_t IndexOf(SocialDimension entity) const;
  void AddWin(SocialDimension winner, SocialDimension loser, int64_t count = 1);
  int64_t TotalComparisons() const;

  // Throws kInvalidArgument on a non-square matrix, duplicate entities,
  // a non-zero diagonal, or negative counts.
  void Validate() const;

  bool operator==(const PairwiseTally&) const = default;
};

// Throws kDegenerateTally unless the maximum-likelihood strengths exist and
// are finite: at least two entities, and the directed win graph strongly
// connected (every entity beats and is beaten by some path from every other).
// This subsumes the weaker checks for a connected comparison graph and for
// entities with no wins or no losses, and names those cases in the message.
void CheckIdentifiable(const PairwiseTally& tally);

struct FitOptions {
  double tolerance = 1e-8;  // max-norm change between iterations
  int max_iterations = 10000;
  // Called after every iteration with the current log-likelihood.
  std::function<void(int iteration, double log_likelihood)> observer;
};

struct BradleyTerryFit {
  std::vector<SocialDimension> entities;
  std::vector<double> strengths;  // geometric mean 1
  int iterations = 0;
  bool converged = false;
  double log_likelihood = 0.0;

  // Throws kUnknownEntity.
  double Strength(SocialDimension entity) const;
};

// Maximum-likelihood Bradley-Terry strengths by minorization-maximization:
//
//   p_i <- W_i / sum_{j != i} n_ij / (p_i + p_j)
//
// where W_i is the total wins of i and n_ij the comparisons between i and j,
// renormalized to geometric mean 1 after each sweep. Throws kDegenerateTally
// (see CheckIdentifiable).
BradleyTerryFit FitBradleyTerry(const PairwiseTally& tally,
                                const FitOptions& options = {});

// sum_{i != j} wins[i][j] * log(p_i / (p_i + p_j)).
double BradleyTerryLogLikelihood(const PairwiseTally& tally,
                                 std::span<const double> strengths);

// p_i / (p_i + p_j). Throws kUnknownEntity, or kInvalidArgument when i == j.
double PairwiseProb(const BradleyTerryFit& fit, SocialDimension i,
                    SocialDimension j);

struct RankedEntity {
  SocialDimension entity;
  double strength;
  bool tied;  // shares its strength with a neighbor in the ranking
};

struct Ranking {
  std::vector<RankedEntity> entries;
  bool fully_tied = false;
};

// Strengths closer than this relative gap are reported as ties.
inline constexpr double kTieRelativeTolerance = 1e-9;

// Descending by strength; ties fall back to lexicographic dimension id.
Ranking RankDimensions(const BradleyTerryFit& fit);

// Row i, column j holds P(entity_i > entity_j); the diagonal holds 0.5.
std::vector<std::vector<double>> ProbabilityMatrix(const BradleyTerryFit& fit);

}  // namespace persuasion::stats

#endif  // PERSUASION_STATS_BRADLEY_TERRY_H_
