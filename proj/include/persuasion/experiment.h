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

#ifndef PERSUASION_EXPERIMENT_H_
#define PERSUASION_EXPERIMENT_H_

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "persuasion/dialogue.h"
#include "persuasion/dimensions.h"
#include "persuasion/llm_gateway.h"
#include "persuasion/mock_backend.h"
#include "persuasion/prompt_catalog.h"

namespace persuasion {

using Cell = std::pair<SocialDimension, Stubbornness>;

struct ExperimentConfig {
  std::vector<SocialDimension> dimensions;
  std::vector<Stubbornness> stubbornness_levels;
  int dialogues_per_cell = 100;
  // Unset until the config or the command line provides one.
  std::optional<uint64_t> experiment_seed;
  int parallelism = 1;
  std::filesystem::path output_path = "transcripts.jsonl";
  std::filesystem::path estimates_path = "estimates.csv";
  std::filesystem::path catalog_path;  // empty: shipped catalog
  std::optional<std::string> topic;
  std::variant<BackendConfig, MockBehavior> backend;

  // Throws kConfigError.
  void Validate() const;

  // Keys mirror the fields; "backend" is {"type": "http", ...BackendConfig}
  // or {"type": "mock", "behavior_file": ..., "persuasion_prob": ...}.
  // Relative paths resolve against `base_dir`.
  static ExperimentConfig FromJson(const nlohmann::json& object,
                                   const std::filesystem::path& base_dir = {});
  static ExperimentConfig FromFile(const std::filesystem::path& path);

  std::vector<Cell> Grid() const;
};

std::unique_ptr<ChatBackend> MakeBackend(const ExperimentConfig& config);
PromptCatalog LoadCatalog(const ExperimentConfig& config);

// Per-dialogue seed: a hash of the experiment seed, the cell and the
// dialogue's index within it, so any cell can be rerun on its own.
uint64_t DialogueSeed(uint64_t experiment_seed, const Cell& cell, int index);
std::string DialogueId(const Cell& cell, int index);

struct DialogueFailure {
  Cell cell;
  int index;
  std::string message;
};

struct ExperimentRun {
  std::vector<DialogueTranscript> transcripts;  // grid order, then index
  std::vector<DialogueFailure> failures;
  size_t ambiguous = 0;
};

// Runs dialogues_per_cell dialogues for every grid cell on up to
// `parallelism` threads. Each finished transcript is written to `sink` as
// one JSON line, in grid order, as soon as all earlier ones are written, so
// output is byte-identical across runs and parallelism settings. A backend
// failure drops that dialogue only and is reported in `failures`.
ExperimentRun RunExperiment(const ExperimentConfig& config,
                            const ChatBackend& backend,
                            const PromptCatalog& catalog, std::ostream* sink);

struct PersuasionEstimate {
  SocialDimension dimension;
  Stubbornness stubbornness;
  int64_t n = 0;  // valid outcomes only
  int64_t k = 0;
  double p_hat = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  int64_t n_ambiguous = 0;  // excluded from n
};

// Persuasion probability per cell with a Wilson 95% interval, ordered by
// dimension then stubbornness. With `grid`, exactly those cells are reported.
// Throws kEmptyCell for a cell without a single valid outcome.
std::vector<PersuasionEstimate> EstimatePersuasion(
    const std::vector<DialogueTranscript>& transcripts,
    const std::optional<std::vector<Cell>>& grid = std::nullopt);

// (b - a) / a on the point estimates. Throws kDivisionByZero when a is 0.
double RelativeChange(const PersuasionEstimate& a, const PersuasionEstimate& b);

// Unweighted mean of RelativeChange from `from` to `to` across the
// dimensions estimated at both levels; dimensions with p_hat = 0 at `from`
// are skipped. Empty when nothing qualifies.
std::optional<double> MeanRelativeChange(
    const std::vector<PersuasionEstimate>& estimates, Stubbornness from,
    Stubbornness to);

enum class Stratum { kAll, kSuccessful, kUnsuccessful };
std::string_view StratumId(Stratum stratum);

struct LengthRow {
  SocialDimension dimension;
  Stubbornness stubbornness;
  Stratum stratum;
  int64_t n = 0;
  std::optional<double> mean;  // undefined when n = 0
  std::optional<double> std;   // sample std; undefined when n < 2
};

int64_t WordCount(std::string_view text);

// Word-count mean and standard deviation of the stage-2 argument for all,
// successful and unsuccessful dialogues of each cell. Ambiguous outcomes are
// left out of every stratum.
std::vector<LengthRow> ArgumentLengthStats(
    const std::vector<DialogueTranscript>& transcripts,
    const std::optional<std::vector<Cell>>& grid = std::nullopt);

// Header dimension,stubbornness,n,k,p_hat,ci_low,ci_high.
std::string EstimatesCsv(const std::vector<PersuasionEstimate>& estimates);
// Header dimension,stubbornness,stratum,n,mean_words,std_words,moments.
std::string LengthStatsCsv(const std::vector<LengthRow>& rows);

}  // namespace persuasion

#endif  // PERSUASION_EXPERIMENT_H_
