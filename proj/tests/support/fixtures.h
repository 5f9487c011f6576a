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

// Fixture builders shared by the unit tests and the acceptance suite.

#ifndef PERSUASION_TESTS_SUPPORT_FIXTURES_H_
#define PERSUASION_TESTS_SUPPORT_FIXTURES_H_

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include "oracles.h"
#include "persuasion/annotation/judgments.h"
#include "persuasion/annotation/tasks.h"
#include "persuasion/dimensions.h"
#include "persuasion/stats/agreement.h"
#include "persuasion/stats/bradley_terry.h"

namespace persuasion::testing {

inline std::filesystem::path TestDataDir() { return PERSUASION_TEST_DATA_DIR; }

inline std::string ReadBytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Fresh, empty directory under the system temp dir.
inline std::filesystem::path MakeTempDir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("persuasion-" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

// Three entities: A beats B 8-2, B beats C 8-2, A beats C 9-1.
inline stats::PairwiseTally ThreeEntityTally() {
  auto tally = stats::PairwiseTally::Empty(
      {SocialDimension::kKnowledge, SocialDimension::kTrust, SocialDimension::kSupport});
  tally.wins = {{0, 8, 9}, {2, 0, 8}, {1, 2, 0}};
  return tally;
}

// `per_pair` simulated comparisons per entity pair with
// P(i beats j) = p_i / (p_i + p_j).
inline stats::PairwiseTally SimulatedTally(const std::vector<SocialDimension>& entities,
                                           const std::vector<double>& strengths,
                                           int per_pair, uint64_t seed) {
  auto tally = stats::PairwiseTally::Empty(entities);
  OracleUniform uniform(seed);
  for (size_t i = 0; i < entities.size(); ++i) {
    for (size_t j = i + 1; j < entities.size(); ++j) {
      const double p = strengths[i] / (strengths[i] + strengths[j]);
      for (int n = 0; n < per_pair; ++n) {
        if (uniform() < p) {
          ++tally.wins[i][j];
        } else {
          ++tally.wins[j][i];
        }
      }
    }
  }
  return tally;
}

inline annotation::Judgment MakeJudgment(const std::string& worker,
                                         const std::string& pair, bool chose_first,
                                         SocialDimension first, SocialDimension second,
                                         bool is_control, int64_t timestamp) {
  annotation::Judgment j;
  j.worker_id = worker;
  j.pair_id = pair;
  j.order = timestamp % 2 == 0 ? annotation::Placement::kOriginal
                               : annotation::Placement::kSwapped;
  const bool left_is_first = j.order == annotation::Placement::kOriginal;
  j.choice = chose_first == left_is_first ? annotation::Choice::kLeft
                                          : annotation::Choice::kRight;
  j.timestamp_ms = timestamp;
  j.is_control = is_control;
  j.first_dimension = first;
  j.second_dimension = is_control ? SocialDimension::kBaseline : second;
  return j;
}

// Four workers, each judging 12 tasks:
//   w-clean  4 controls, 0 failed  (0%)   retained
//   w-fifth  5 controls, 1 failed  (20%)  retained
//   w-half   4 controls, 2 failed  (50%)  discarded
//   w-none   0 controls                   discarded
// Non-control tasks compare knowledge with trust; the first argument
// (knowledge) is always chosen, so any control judgment leaking into a
// tally would show up as a baseline win.
inline std::vector<annotation::Judgment> GatingLog() {
  struct Plan {
    std::string worker;
    int controls;
    int failed;
  };
  const std::vector<Plan> plans = {
      {"w-clean", 4, 0}, {"w-fifth", 5, 1}, {"w-half", 4, 2}, {"w-none", 0, 0}};
  std::vector<annotation::Judgment> log;
  int64_t clock = 1000;
  for (const Plan& plan : plans) {
    for (int i = 0; i < 12; ++i) {
      const bool control = i < plan.controls;
      const std::string pair = control ? "control-pair-" + std::to_string(i)
                                       : "pair-" + std::to_string(i);
      const bool chose_first = control ? i >= plan.failed : true;
      log.push_back(MakeJudgment(plan.worker, pair, chose_first,
                                 control ? SocialDimension::kBaseline
                                         : SocialDimension::kKnowledge,
                                 SocialDimension::kTrust, control, clock++));
    }
  }
  return log;
}

// Entities knowledge, trust and support meet in pairs with 9-1 agreement in
// both directions; baseline meets knowledge only in pairs at 17-3 (0.85).
// Every threshold up to 0.85 keeps all four entities; at 0.9 baseline has no
// comparisons left.
inline std::vector<stats::PairVotes> SweepVotes() {
  using D = SocialDimension;
  std::vector<stats::PairVotes> votes;
  auto add = [&](D a, D b, int64_t first, int64_t second) {
    votes.push_back({"pair-" + std::to_string(votes.size()), a, b, first, second});
  };
  const D core[] = {D::kKnowledge, D::kTrust, D::kSupport};
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      add(core[i], core[j], 9, 1);
      add(core[i], core[j], 1, 9);
    }
  }
  add(D::kBaseline, D::kKnowledge, 17, 3);
  add(D::kBaseline, D::kKnowledge, 3, 17);
  return votes;
}

// `per_entity` successful arguments for each dimension outside `excluded`.
inline std::vector<annotation::ArgumentRecord> SuccessfulArguments(
    int per_entity, const std::vector<SocialDimension>& excluded) {
  std::vector<annotation::ArgumentRecord> arguments;
  for (SocialDimension d : kAllDimensions) {
    if (std::find(excluded.begin(), excluded.end(), d) != excluded.end()) continue;
    for (int i = 0; i < per_entity; ++i) {
      annotation::ArgumentRecord a;
      a.id = std::string(DimensionId(d)) + "-arg-" + std::to_string(i);
      a.dimension = d;
      a.text = "Argument " + std::to_string(i) + " in the " + std::string(DimensionId(d)) +
               " style.";
      a.source_transcript = a.id;
      a.successful = true;
      arguments.push_back(a);
    }
  }
  return arguments;
}

}  // namespace persuasion::testing

#endif  // PERSUASION_TESTS_SUPPORT_FIXTURES_H_
