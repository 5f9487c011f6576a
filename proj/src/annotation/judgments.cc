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

#include "persuasion/annotation/judgments.h"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "persuasion/csv.h"
#include "persuasion/error.h"

namespace persuasion::annotation {
namespace {

constexpr std::string_view kControlLabel = "control";

}  // namespace

std::string_view ChoiceId(Choice choice) {
  return choice == Choice::kLeft ? "left" : "right";
}

std::string_view PlacementId(Placement placement) {
  return placement == Placement::kOriginal ? "original" : "swapped";
}

Choice ChoiceFromId(std::string_view id) {
  if (id == "left") return Choice::kLeft;
  if (id == "right") return Choice::kRight;
  throw Error(ErrorCode::kParseError, "choice must be left or right, got '" +
                                          std::string(id) + "'");
}

Placement PlacementFromId(std::string_view id) {
  if (id == "original") return Placement::kOriginal;
  if (id == "swapped") return Placement::kSwapped;
  throw Error(ErrorCode::kParseError, "order must be original or swapped, got '" +
                                          std::string(id) + "'");
}

bool Judgment::ChoseFirst() const {
  return (choice == Choice::kLeft) == (order == Placement::kOriginal);
}

std::string JudgmentsCsvHeader() {
  return csv::FormatRow({"worker", "pair", "choice", "order", "timestamp", "is_control",
                         "first_dimension", "second_dimension"});
}

std::string JudgmentCsvRow(const Judgment& j) {
  return csv::FormatRow(
      {j.worker_id, j.pair_id, std::string(ChoiceId(j.choice)),
       std::string(PlacementId(j.order)), std::to_string(j.timestamp_ms),
       j.is_control ? "true" : "false", std::string(DimensionId(j.first_dimension)),
       j.is_control ? std::string(kControlLabel)
                    : std::string(DimensionId(j.second_dimension))});
}

std::string JudgmentsCsv(const std::vector<Judgment>& judgments) {
  std::string out = JudgmentsCsvHeader();
  for (const Judgment& j : judgments) out += JudgmentCsvRow(j);
  return out;
}

namespace {

std::vector<Judgment> JudgmentsFromTable(const csv::Table& table) {
  const size_t worker = table.Column("worker");
  const size_t pair = table.Column("pair");
  const size_t choice = table.Column("choice");
  const size_t order = table.Column("order");
  const size_t timestamp = table.Column("timestamp");
  const size_t is_control = table.Column("is_control");
  const size_t first = table.Column("first_dimension");
  const size_t second = table.Column("second_dimension");
  std::vector<Judgment> judgments;
  for (const auto& row : table.rows) {
    Judgment j;
    j.worker_id = row[worker];
    j.pair_id = row[pair];
    j.choice = ChoiceFromId(row[choice]);
    j.order = PlacementFromId(row[order]);
    j.timestamp_ms = csv::ParseInt(row[timestamp]);
    j.is_control = csv::ParseBool(row[is_control]);
    j.first_dimension = DimensionFromId(row[first]);
    j.second_dimension = j.is_control ? SocialDimension::kBaseline
                                      : DimensionFromId(row[second]);
    judgments.push_back(std::move(j));
  }
  return judgments;
}

}  // namespace

std::vector<Judgment> ParseJudgmentsCsv(const std::string& text) {
  return JudgmentsFromTable(csv::Parse(text));
}

std::vector<Judgment> ReadJudgmentsCsv(const std::filesystem::path& path) {
  return JudgmentsFromTable(csv::ReadFile(path));
}

std::vector<WorkerRecord> WorkerRecords(const std::vector<Judgment>& judgments) {
  std::map<std::string, WorkerRecord> records;
  for (const Judgment& j : judgments) {
    WorkerRecord& r = records[j.worker_id];
    r.worker_id = j.worker_id;
    ++r.pairs_completed;
    if (j.is_control) {
      ++r.controls_seen;
      if (j.ChoseControl()) ++r.controls_failed;
    }
  }
  std::vector<WorkerRecord> out;
  for (auto& [id, r] : records) out.push_back(std::move(r));
  return out;
}

GateResult GateWorkers(const std::vector<Judgment>& judgments, int min_pairs,
                       double max_control_fail_rate) {
  GateResult result;
  std::set<std::string> kept;
  for (WorkerRecord r : WorkerRecords(judgments)) {
    const bool saw_controls = r.controls_seen > 0;
    const bool too_many_failures =
        saw_controls && static_cast<double>(r.controls_failed) /
                                static_cast<double>(r.controls_seen) >
                            max_control_fail_rate;
    r.retained = saw_controls && !too_many_failures && r.pairs_completed >= min_pairs;
    if (r.retained) {
      kept.insert(r.worker_id);
      result.retained.push_back(std::move(r));
    } else {
      result.discarded.push_back(std::move(r));
    }
  }
  for (const Judgment& j : judgments) {
    if (kept.contains(j.worker_id)) result.retained_judgments.push_back(j);
  }
  std::sort(result.retained_judgments.begin(), result.retained_judgments.end(),
            [](const Judgment& a, const Judgment& b) {
              return std::tie(a.pair_id, a.worker_id, a.timestamp_ms) <
                     std::tie(b.pair_id, b.worker_id, b.timestamp_ms);
            });
  return result;
}

std::vector<stats::PairVotes> VotesByPair(const std::vector<Judgment>& judgments) {
  std::map<std::string, stats::PairVotes> votes;
  for (const Judgment& j : judgments) {
    if (j.is_control) continue;
    auto [it, inserted] = votes.try_emplace(j.pair_id);
    stats::PairVotes& v = it->second;
    if (inserted) {
      v.pair_id = j.pair_id;
      v.first = j.first_dimension;
      v.second = j.second_dimension;
    } else if (v.first != j.first_dimension || v.second != j.second_dimension) {
      throw Error(ErrorCode::kInvalidArgument,
                  "judgments on " + j.pair_id + " disagree on its dimensions");
    }
    if (j.ChoseFirst()) {
      ++v.first_votes;
    } else {
      ++v.second_votes;
    }
  }
  std::vector<stats::PairVotes> out;
  for (auto& [id, v] : votes) out.push_back(std::move(v));
  return out;
}

stats::PairwiseTally ExportTally(const std::vector<Judgment>& judgments,
                                 double threshold) {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "agreement threshold must be in [0, 1]");
  }
  const auto votes = VotesByPair(judgments);
  return stats::TallyFromVotes(votes, threshold, stats::EntitiesOf(votes));
}

KappaInput KappaRatings(const std::vector<Judgment>& judgments) {
  const auto votes = VotesByPair(judgments);
  std::map<int64_t, size_t> count_frequency;
  for (const auto& v : votes) ++count_frequency[v.total()];
  int64_t modal = 0;
  size_t best = 0;
  for (const auto& [count, freq] : count_frequency) {
    if (freq >= best) {
      best = freq;
      modal = count;
    }
  }
  KappaInput input;
  for (const auto& v : votes) {
    if (v.total() == modal) {
      input.ratings.push_back({v.first_votes, v.second_votes});
    } else {
      ++input.dropped_items;
    }
  }
  return input;
}

std::string TallyCsv(const stats::PairwiseTally& tally) {
  std::string out = csv::FormatRow({"winner", "loser", "wins"});
  for (size_t i = 0; i < tally.size(); ++i) {
    for (size_t j = 0; j < tally.size(); ++j) {
      if (i == j) continue;
      out += csv::FormatRow({std::string(DimensionId(tally.entities[i])),
                             std::string(DimensionId(tally.entities[j])),
                             std::to_string(tally.wins[i][j])});
    }
  }
  return out;
}

stats::PairwiseTally ParseTallyCsv(const std::string& text) {
  const csv::Table table = csv::Parse(text);
  const size_t winner = table.Column("winner");
  const size_t loser = table.Column("loser");
  const size_t wins = table.Column("wins");
  std::set<SocialDimension> entities;
  for (const auto& row : table.rows) {
    entities.insert(DimensionFromId(row[winner]));
    entities.insert(DimensionFromId(row[loser]));
  }
  stats::PairwiseTally tally =
      stats::PairwiseTally::Empty({entities.begin(), entities.end()});
  for (const auto& row : table.rows) {
    const long long count = csv::ParseInt(row[wins]);
    if (count < 0) throw Error(ErrorCode::kParseError, "negative win count in tally");
    if (count > 0) {
      tally.AddWin(DimensionFromId(row[winner]), DimensionFromId(row[loser]), count);
    }
  }
  return tally;
}

}  // namespace persuasion::annotation
