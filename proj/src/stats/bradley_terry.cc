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

#include "persuasion/stats/bradley_terry.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "persuasion/error.h"

namespace persuasion::stats {
namespace {

// Entities reachable from `start` following edges i -> j where wins[i][j] > 0
// (or the reverse direction when `reverse` is set).
std::vector<bool> Reachable(const PairwiseTally& tally, size_t start, bool reverse) {
  const size_t n = tally.size();
  std::vector<bool> seen(n, false);
  std::vector<size_t> stack = {start};
  seen[start] = true;
  while (!stack.empty()) {
    size_t i = stack.back();
    stack.pop_back();
    for (size_t j = 0; j < n; ++j) {
      const int64_t w = reverse ? tally.wins[j][i] : tally.wins[i][j];
      if (w > 0 && !seen[j]) {
        seen[j] = true;
        stack.push_back(j);
      }
    }
  }
  return seen;
}

std::string Name(const PairwiseTally& tally, size_t i) {
  return std::string(DimensionId(tally.entities[i]));
}

void NormalizeGeometricMean(std::vector<double>& p) {
  double log_sum = 0.0;
  for (double v : p) log_sum += std::log(v);
  const double scale = std::exp(-log_sum / static_cast<double>(p.size()));
  for (double& v : p) v *= scale;
}

}  // namespace

PairwiseTally PairwiseTally::Empty(std::vector<SocialDimension> entities) {
  PairwiseTally tally;
  const size_t n = entities.size();
  tally.entities = std::move(entities);
  tally.wins.assign(n, std::vector<int64_t>(n, 0));
  return tally;
}

size_t PairwiseTally::IndexOf(SocialDimension entity) const {
  auto it = std::find(entities.begin(), entities.end(), entity);
  if (it == entities.end()) {
    throw Error(ErrorCode::kUnknownEntity,
                "'" + std::string(DimensionId(entity)) + "' is not in the tally");
  }
  return static_cast<size_t>(it - entities.begin());
}

void PairwiseTally::AddWin(SocialDimension winner, SocialDimension loser,
                           int64_t count) {
  if (winner == loser) {
    throw Error(ErrorCode::kInvalidArgument, "an entity cannot beat itself");
  }
  wins[IndexOf(winner)][IndexOf(loser)] += count;
}

int64_t PairwiseTally::TotalComparisons() const {
  int64_t total = 0;
  for (const auto& row : wins) total = std::accumulate(row.begin(), row.end(), total);
  return total;
}

void PairwiseTally::Validate() const {
  const size_t n = entities.size();
  if (std::set<SocialDimension>(entities.begin(), entities.end()).size() != n) {
    throw Error(ErrorCode::kInvalidArgument, "tally lists an entity twice");
  }
  if (wins.size() != n) {
    throw Error(ErrorCode::kInvalidArgument, "tally matrix is not square");
  }
  for (size_t i = 0; i < n; ++i) {
    if (wins[i].size() != n) {
      throw Error(ErrorCode::kInvalidArgument, "tally matrix is not square");
    }
    if (wins[i][i] != 0) {
      throw Error(ErrorCode::kInvalidArgument, "tally diagonal must be zero");
    }
    for (int64_t w : wins[i]) {
      if (w < 0) throw Error(ErrorCode::kInvalidArgument, "negative win count");
    }
  }
}

void CheckIdentifiable(const PairwiseTally& tally) {
  tally.Validate();
  const size_t n = tally.size();
  if (n < 2) {
    throw Error(ErrorCode::kDegenerateTally, "need at least two entities");
  }
  for (size_t i = 0; i < n; ++i) {
    int64_t won = 0, lost = 0;
    for (size_t j = 0; j < n; ++j) {
      won += tally.wins[i][j];
      lost += tally.wins[j][i];
    }
    if (won + lost == 0) {
      throw Error(ErrorCode::kDegenerateTally,
                  Name(tally, i) + " has no comparisons (not represented)");
    }
    if (lost == 0) {
      throw Error(ErrorCode::kDegenerateTally,
                  Name(tally, i) + " never lost; its strength diverges");
    }
    if (won == 0) {
      throw Error(ErrorCode::kDegenerateTally,
                  Name(tally, i) + " never won; its strength collapses to zero");
    }
  }
  const auto forward = Reachable(tally, 0, false);
  const auto backward = Reachable(tally, 0, true);
  for (size_t i = 0; i < n; ++i) {
    if (!forward[i] || !backward[i]) {
      throw Error(ErrorCode::kDegenerateTally,
                  "win graph is not strongly connected (" + Name(tally, 0) +
                      " and " + Name(tally, i) + " are separated)");
    }
  }
}

double BradleyTerryLogLikelihood(const PairwiseTally& tally,
                                 std::span<const double> strengths) {
  double ll = 0.0;
  for (size_t i = 0; i < tally.size(); ++i) {
    for (size_t j = 0; j < tally.size(); ++j) {
      if (tally.wins[i][j] == 0) continue;
      ll += static_cast<double>(tally.wins[i][j]) *
            std::log(strengths[i] / (strengths[i] + strengths[j]));
    }
  }
  return ll;
}

BradleyTerryFit FitBradleyTerry(const PairwiseTally& tally,
                                const FitOptions& options) {
  CheckIdentifiable(tally);
  const size_t n = tally.size();

  std::vector<double> total_wins(n, 0.0);
  std::vector<std::vector<double>> comparisons(n, std::vector<double>(n, 0.0));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      total_wins[i] += static_cast<double>(tally.wins[i][j]);
      comparisons[i][j] = static_cast<double>(tally.wins[i][j] + tally.wins[j][i]);
    }
  }

  BradleyTerryFit fit;
  fit.entities = tally.entities;
  std::vector<double> p(n, 1.0);
  std::vector<double> next(n);
  for (int iter = 1; iter <= options.max_iterations; ++iter) {
    for (size_t i = 0; i < n; ++i) {
      double denom = 0.0;
      for (size_t j = 0; j < n; ++j) {
        if (j != i && comparisons[i][j] > 0) denom += comparisons[i][j] / (p[i] + p[j]);
      }
      next[i] = total_wins[i] / denom;
    }
    NormalizeGeometricMean(next);
    double max_delta = 0.0;
    for (size_t i = 0; i < n; ++i) max_delta = std::max(max_delta, std::abs(next[i] - p[i]));
    p.swap(next);
    fit.iterations = iter;
    if (options.observer) options.observer(iter, BradleyTerryLogLikelihood(tally, p));
    if (max_delta < options.tolerance) {
      fit.converged = true;
      break;
    }
  }
  fit.strengths = std::move(p);
  fit.log_likelihood = BradleyTerryLogLikelihood(tally, fit.strengths);
  return fit;
}

double BradleyTerryFit::Strength(SocialDimension entity) const {
  auto it = std::find(entities.begin(), entities.end(), entity);
  if (it == entities.end()) {
    throw Error(ErrorCode::kUnknownEntity,
                "'" + std::string(DimensionId(entity)) + "' was not fitted");
  }
  return strengths[static_cast<size_t>(it - entities.begin())];
}

double PairwiseProb(const BradleyTerryFit& fit, SocialDimension i,
                    SocialDimension j) {
  if (i == j) {
    throw Error(ErrorCode::kInvalidArgument, "pairwise_prob needs two distinct entities");
  }
  const double pi = fit.Strength(i);
  const double pj = fit.Strength(j);
  return pi / (pi + pj);
}

Ranking RankDimensions(const BradleyTerryFit& fit) {
  Ranking ranking;
  for (size_t i = 0; i < fit.entities.size(); ++i) {
    ranking.entries.push_back({fit.entities[i], fit.strengths[i], false});
  }
  auto same = [](double a, double b) {
    return std::abs(a - b) <= kTieRelativeTolerance * std::max(std::abs(a), std::abs(b));
  };
  std::sort(ranking.entries.begin(), ranking.entries.end(),
            [](const RankedEntity& a, const RankedEntity& b) {
              return a.strength > b.strength;
            });
  // Runs of near-equal strengths are tied; order each run by id.
  for (size_t begin = 0; begin < ranking.entries.size();) {
    size_t end = begin + 1;
    while (end < ranking.entries.size() &&
           same(ranking.entries[end - 1].strength, ranking.entries[end].strength)) {
      ++end;
    }
    if (end - begin > 1) {
      std::sort(ranking.entries.begin() + begin, ranking.entries.begin() + end,
                [](const RankedEntity& a, const RankedEntity& b) {
                  return DimensionId(a.entity) < DimensionId(b.entity);
                });
      for (size_t k = begin; k < end; ++k) ranking.entries[k].tied = true;
    }
    begin = end;
  }
  ranking.fully_tied =
      ranking.entries.size() > 1 &&
      std::all_of(ranking.entries.begin(), ranking.entries.end(),
                  [&](const RankedEntity& e) {
                    return same(e.strength, ranking.entries.front().strength);
                  });
  return ranking;
}

std::vector<std::vector<double>> ProbabilityMatrix(const BradleyTerryFit& fit) {
  const size_t n = fit.entities.size();
  std::vector<std::vector<double>> matrix(n, std::vector<double>(n, 0.5));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      if (i != j) matrix[i][j] = fit.strengths[i] / (fit.strengths[i] + fit.strengths[j]);
    }
  }
  return matrix;
}

}  // namespace persuasion::stats
