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

#ifndef PERSUASION_ANNOTATION_JUDGMENTS_H_
#define PERSUASION_ANNOTATION_JUDGMENTS_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "persuasion/dimensions.h"
#include "persuasion/stats/agreement.h"
#include "persuasion/stats/bradley_terry.h"

namespace persuasion::annotation {

enum class Choice { kLeft, kRight };
// kOriginal: the task's first argument was displayed on the left.
enum class Placement { kOriginal, kSwapped };

std::string_view ChoiceId(Choice choice);
std::string_view PlacementId(Placement placement);
Choice ChoiceFromId(std::string_view id);
Placement PlacementFromId(std::string_view id);

// One forced-choice annotation. The dimensions follow the task's stored
// orientation; `order` says how the pair was displayed.
struct Judgment {
  std::string worker_id;
  std::string pair_id;
  Choice choice = Choice::kLeft;
  Placement order = Placement::kOriginal;
  int64_t timestamp_ms = 0;
  bool is_control = false;
  SocialDimension first_dimension = SocialDimension::kBaseline;
  SocialDimension second_dimension = SocialDimension::kBaseline;

  // True when the task's first argument was chosen.
  bool ChoseFirst() const;
  // Control tasks store the control argument second.
  bool ChoseControl() const { return is_control && !ChoseFirst(); }

  bool operator==(const Judgment&) const = default;
};

// CSV columns: worker,pair,choice,order,timestamp,is_control, then
// first_dimension,second_dimension so the log alone suffices for gating,
// agreement and tallies. The second dimension of a control task reads
// "control".
std::string JudgmentsCsvHeader();
std::string JudgmentCsvRow(const Judgment& judgment);
std::string JudgmentsCsv(const std::vector<Judgment>& judgments);
std::vector<Judgment> ReadJudgmentsCsv(const std::filesystem::path& path);
std::vector<Judgment> ParseJudgmentsCsv(const std::string& text);

struct WorkerRecord {
  std::string worker_id;
  int64_t pairs_completed = 0;  // control tasks included
  int64_t controls_seen = 0;
  int64_t controls_failed = 0;
  bool retained = false;

  bool operator==(const WorkerRecord&) const = default;
};

inline constexpr int kDefaultMinPairs = 10;
inline constexpr double kDefaultMaxControlFailRate = 0.25;

struct GateResult {
  std::vector<WorkerRecord> retained;   // by worker id
  std::vector<WorkerRecord> discarded;  // by worker id
  std::vector<Judgment> retained_judgments;  // by (pair, worker); controls kept
};

// Per-worker control accounting over a judgment log.
std::vector<WorkerRecord> WorkerRecords(const std::vector<Judgment>& judgments);

// Discards a worker who saw no control task, failed more than
// `max_control_fail_rate` of the controls seen, or completed fewer than
// `min_pairs` tasks. Output does not depend on log order.
GateResult GateWorkers(const std::vector<Judgment>& judgments,
                       int min_pairs = kDefaultMinPairs,
                       double max_control_fail_rate = kDefaultMaxControlFailRate);

// Non-control judgments aggregated per pair, ordered by pair id.
std::vector<stats::PairVotes> VotesByPair(const std::vector<Judgment>& judgments);

// Drops pairs with agreement below `threshold` and counts one win per kept
// judgment. Control judgments never enter. The entity set is every dimension
// seen in the non-control judgments, whether or not its pairs survive.
stats::PairwiseTally ExportTally(const std::vector<Judgment>& judgments,
                                 double threshold);

// Items x 2 rating matrix over non-control pairs, keeping only pairs whose
// judgment count equals the most common count (ties: the larger count).
struct KappaInput {
  std::vector<std::vector<int64_t>> ratings;
  size_t dropped_items = 0;
};
KappaInput KappaRatings(const std::vector<Judgment>& judgments);

// CSV with header winner,loser,wins listing every ordered pair of distinct
// entities, zeros included, so the entity set survives the round trip.
std::string TallyCsv(const stats::PairwiseTally& tally);
stats::PairwiseTally ParseTallyCsv(const std::string& text);

}  // namespace persuasion::annotation

#endif  // PERSUASION_ANNOTATION_JUDGMENTS_H_
