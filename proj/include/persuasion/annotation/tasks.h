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

#ifndef PERSUASION_ANNOTATION_TASKS_H_
#define PERSUASION_ANNOTATION_TASKS_H_

#include <cstdint>
#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "persuasion/dialogue.h"
#include "persuasion/dimensions.h"

namespace persuasion::annotation {

struct ArgumentRecord {
  std::string id;
  SocialDimension dimension;
  std::string text;
  std::string source_transcript;  // empty for control arguments
  bool successful = false;        // only successful arguments are sampled
  bool is_control = false;

  bool operator==(const ArgumentRecord&) const = default;
};

// Stage-2 arguments of the transcripts; `successful` marks a valid "Yes".
std::vector<ArgumentRecord> ArgumentsFromTranscripts(
    const std::vector<DialogueTranscript>& transcripts);

// Weak arguments from a JSON file: [{"id": ..., "text": ...}, ...].
std::vector<ArgumentRecord> LoadControlCorpus(const std::filesystem::path& path);
std::filesystem::path DefaultControlCorpusPath();

inline constexpr int kDefaultRedundancy = 10;

// Two arguments to be judged side by side. `first` and `second` are the
// stored orientation; the displayed order is decided per serve. Control
// tasks put a baseline argument first and a control argument second.
struct PairTask {
  std::string id;
  std::string first;  // argument ids
  std::string second;
  SocialDimension first_dimension;
  SocialDimension second_dimension;
  bool is_control = false;
  uint64_t placement_seed = 0;
  int target_redundancy = kDefaultRedundancy;

  bool operator==(const PairTask&) const = default;
};

// Exactly `pairs_per_dimension_pair` distinct argument pairs for every
// unordered pair of dimensions that occur in `arguments` and are not
// excluded, drawing only successful arguments. Reproducible for a given
// seed. Throws kInsufficientArguments naming the first dimension pair with
// too few combinations.
std::vector<PairTask> SamplePairs(const std::vector<ArgumentRecord>& arguments,
                                  int pairs_per_dimension_pair,
                                  const std::set<SocialDimension>& excluded,
                                  uint64_t seed,
                                  int target_redundancy = kDefaultRedundancy);

// Appends ceil(fraction * |pairs|) control tasks, each pairing a successful
// baseline argument with a control-corpus argument. Throws
// kEmptyControlCorpus, kInsufficientArguments when no baseline argument is
// eligible, and kInvalidArgument unless 0 < fraction <= 1.
std::vector<PairTask> InjectControls(std::vector<PairTask> pairs, double fraction,
                                     const std::vector<ArgumentRecord>& control_corpus,
                                     const std::vector<ArgumentRecord>& arguments,
                                     uint64_t seed);

// Everything the annotation service needs: argument texts and tasks.
struct TaskSet {
  uint64_t seed = 0;
  std::vector<ArgumentRecord> arguments;  // including control arguments
  std::vector<PairTask> pairs;

  const ArgumentRecord& Argument(const std::string& id) const;

  void Save(const std::filesystem::path& path) const;
  static TaskSet Load(const std::filesystem::path& path);
};

}  // namespace persuasion::annotation

#endif  // PERSUASION_ANNOTATION_TASKS_H_
