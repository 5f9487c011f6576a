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

#include "persuasion/annotation/tasks.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>

#include "json.hpp"
#include "persuasion/error.h"
#include "persuasion/seeding.h"

namespace persuasion::annotation {
namespace {

using nlohmann::ordered_json;

constexpr uint64_t kPairIdSalt = 0x9a1;
constexpr uint64_t kPlacementSalt = 0x91ace;
constexpr uint64_t kControlSalt = 0xc0417;

std::vector<const ArgumentRecord*> EligibleOf(const std::vector<ArgumentRecord>& arguments,
                                              SocialDimension dimension) {
  std::vector<const ArgumentRecord*> pool;
  for (const ArgumentRecord& a : arguments) {
    if (a.successful && !a.is_control && a.dimension == dimension) pool.push_back(&a);
  }
  // Input order must not influence the draw.
  std::sort(pool.begin(), pool.end(),
            [](const ArgumentRecord* x, const ArgumentRecord* y) { return x->id < y->id; });
  return pool;
}

PairTask MakeTask(uint64_t seed, uint64_t index, uint64_t salt) {
  PairTask task;
  task.id = "pair-" + Hex64(DeriveSeed(seed, {salt, index}));
  task.placement_seed = DeriveSeed(seed, {kPlacementSalt, salt, index});
  return task;
}

}  // namespace

std::vector<ArgumentRecord> ArgumentsFromTranscripts(
    const std::vector<DialogueTranscript>& transcripts) {
  std::vector<ArgumentRecord> arguments;
  for (const DialogueTranscript& t : transcripts) {
    arguments.push_back({t.id, t.dimension, t.Argument(), t.id, t.Persuaded(), false});
  }
  return arguments;
}

std::filesystem::path DefaultControlCorpusPath() {
  return std::filesystem::path(PERSUASION_DATA_DIR) / "control_arguments.json";
}

std::vector<ArgumentRecord> LoadControlCorpus(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kConfigError, "cannot open control corpus " + path.string());
  std::vector<ArgumentRecord> corpus;
  try {
    for (const auto& item : nlohmann::json::parse(in)) {
      corpus.push_back({item.at("id").get<std::string>(), SocialDimension::kBaseline,
                        item.at("text").get<std::string>(), "", false, true});
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kConfigError, "control corpus " + path.string() + ": " + e.what());
  }
  return corpus;
}

std::vector<PairTask> SamplePairs(const std::vector<ArgumentRecord>& arguments,
                                  int pairs_per_dimension_pair,
                                  const std::set<SocialDimension>& excluded,
                                  uint64_t seed, int target_redundancy) {
  if (pairs_per_dimension_pair < 1) {
    throw Error(ErrorCode::kInvalidArgument, "pairs_per_dimension_pair must be >= 1");
  }
  if (target_redundancy < 1) {
    throw Error(ErrorCode::kInvalidArgument, "target_redundancy must be >= 1");
  }
  std::set<SocialDimension> present;
  for (const ArgumentRecord& a : arguments) {
    if (!a.is_control) present.insert(a.dimension);
  }
  std::vector<SocialDimension> entities;
  for (SocialDimension d : kAllDimensions) {
    if (present.contains(d) && !excluded.contains(d)) entities.push_back(d);
  }
  const auto k = static_cast<uint64_t>(pairs_per_dimension_pair);

  std::vector<PairTask> tasks;
  for (size_t i = 0; i < entities.size(); ++i) {
    for (size_t j = i + 1; j < entities.size(); ++j) {
      const auto pool_a = EligibleOf(arguments, entities[i]);
      const auto pool_b = EligibleOf(arguments, entities[j]);
      const uint64_t combos = pool_a.size() * pool_b.size();
      if (combos < k) {
        throw Error(ErrorCode::kInsufficientArguments,
                    std::string(DimensionId(entities[i])) + " vs " +
                        std::string(DimensionId(entities[j])) + ": " +
                        std::to_string(combos) + " argument combinations, need " +
                        std::to_string(k));
      }
      SplitMixRng rng(DeriveSeed(seed, {static_cast<uint64_t>(entities[i]),
                                        static_cast<uint64_t>(entities[j])}));
      std::set<uint64_t> drawn;
      while (drawn.size() < k) {
        const uint64_t combo = rng.NextBelow(combos);
        if (!drawn.insert(combo).second) continue;
        PairTask task = MakeTask(seed, tasks.size(), kPairIdSalt);
        task.first = pool_a[combo / pool_b.size()]->id;
        task.second = pool_b[combo % pool_b.size()]->id;
        task.first_dimension = entities[i];
        task.second_dimension = entities[j];
        task.target_redundancy = target_redundancy;
        tasks.push_back(std::move(task));
      }
    }
  }
  return tasks;
}

std::vector<PairTask> InjectControls(std::vector<PairTask> pairs, double fraction,
                                     const std::vector<ArgumentRecord>& control_corpus,
                                     const std::vector<ArgumentRecord>& arguments,
                                     uint64_t seed) {
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "control fraction must be in (0, 1]");
  }
  if (control_corpus.empty()) {
    throw Error(ErrorCode::kEmptyControlCorpus, "no control arguments to inject");
  }
  const auto baseline = EligibleOf(arguments, SocialDimension::kBaseline);
  // Slack absorbs products like 0.1 * 180 landing a hair above an integer.
  const auto count = static_cast<size_t>(
      std::ceil(fraction * static_cast<double>(pairs.size()) - 1e-9));
  if (count > 0 && baseline.empty()) {
    throw Error(ErrorCode::kInsufficientArguments,
                "no successful baseline argument to pair with controls");
  }

  // Walk the corpus in a seeded order so controls repeat as little as possible.
  std::vector<size_t> order(control_corpus.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  SplitMixRng rng(DeriveSeed(seed, {kControlSalt}));
  for (size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.NextBelow(i)]);

  const int redundancy = pairs.empty() ? kDefaultRedundancy : pairs.front().target_redundancy;
  for (size_t c = 0; c < count; ++c) {
    PairTask task = MakeTask(seed, c, kControlSalt);
    task.first = baseline[rng.NextBelow(baseline.size())]->id;
    task.second = control_corpus[order[c % order.size()]].id;
    task.first_dimension = SocialDimension::kBaseline;
    task.second_dimension = SocialDimension::kBaseline;
    task.is_control = true;
    task.target_redundancy = redundancy;
    pairs.push_back(std::move(task));
  }
  return pairs;
}

const ArgumentRecord& TaskSet::Argument(const std::string& id) const {
  for (const ArgumentRecord& a : arguments) {
    if (a.id == id) return a;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown argument '" + id + "'");
}

void TaskSet::Save(const std::filesystem::path& path) const {
  ordered_json root;
  root["seed"] = seed;
  root["arguments"] = ordered_json::array();
  for (const ArgumentRecord& a : arguments) {
    root["arguments"].push_back(ordered_json{{"id", a.id},
                                             {"dimension", DimensionId(a.dimension)},
                                             {"text", a.text},
                                             {"source_transcript", a.source_transcript},
                                             {"successful", a.successful},
                                             {"is_control", a.is_control}});
  }
  root["pairs"] = ordered_json::array();
  for (const PairTask& p : pairs) {
    root["pairs"].push_back(ordered_json{{"id", p.id},
                                         {"first", p.first},
                                         {"second", p.second},
                                         {"first_dimension", DimensionId(p.first_dimension)},
                                         {"second_dimension", DimensionId(p.second_dimension)},
                                         {"is_control", p.is_control},
                                         {"placement_seed", p.placement_seed},
                                         {"target_redundancy", p.target_redundancy}});
  }
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  out << root.dump(2) << '\n';
}

TaskSet TaskSet::Load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kConfigError, "cannot open task set " + path.string());
  TaskSet set;
  try {
    const auto root = nlohmann::json::parse(in);
    set.seed = root.value("seed", uint64_t{0});
    for (const auto& a : root.at("arguments")) {
      set.arguments.push_back({a.at("id").get<std::string>(),
                               DimensionFromId(a.at("dimension").get<std::string>()),
                               a.at("text").get<std::string>(),
                               a.value("source_transcript", ""),
                               a.value("successful", false), a.value("is_control", false)});
    }
    for (const auto& p : root.at("pairs")) {
      PairTask task;
      task.id = p.at("id").get<std::string>();
      task.first = p.at("first").get<std::string>();
      task.second = p.at("second").get<std::string>();
      task.first_dimension = DimensionFromId(p.at("first_dimension").get<std::string>());
      task.second_dimension = DimensionFromId(p.at("second_dimension").get<std::string>());
      task.is_control = p.value("is_control", false);
      task.placement_seed = p.at("placement_seed").get<uint64_t>();
      task.target_redundancy = p.value("target_redundancy", kDefaultRedundancy);
      set.pairs.push_back(std::move(task));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kConfigError, "task set " + path.string() + ": " + e.what());
  }
  return set;
}

}  // namespace persuasion::annotation
