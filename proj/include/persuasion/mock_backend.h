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

#ifndef PERSUASION_MOCK_BACKEND_H_
#define PERSUASION_MOCK_BACKEND_H_

#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "persuasion/dimensions.h"
#include "persuasion/llm_gateway.h"

namespace persuasion {

// Scripted stand-in for a chat model. Stage-2 arguments and stage-3
// pushbacks are drawn from canned corpora; the stage-5 reply is "Yes, ..."
// with the configured probability for the dialogue's (dimension,
// stubbornness) cell. Every draw is a pure function of the request seed and
// stage.
struct MockBehavior {
  using Cell = std::pair<SocialDimension, Stubbornness>;

  std::map<Cell, double> persuasion_prob;
  std::map<SocialDimension, std::vector<std::string>> argument_corpus;
  std::vector<std::string> pushbacks;
  std::vector<std::string> yes_reasons;
  std::vector<std::string> no_reasons;
  std::string rng_scheme = "splitmix64(dialogue_seed, stage)";

  // Throws kConfigError on probabilities outside [0, 1], a dimension without
  // canned arguments, or an empty reply list.
  void Validate() const;

  // Sets the same probability for `level` across every dimension.
  void SetLevelProbability(Stubbornness level, double p);

  // Applies "default_persuasion_prob" ({level: p}, every dimension) and then
  // "persuasion_prob" ({dimension: {level: p}}) from `object`, when present.
  void MergeProbabilities(const nlohmann::json& object);

  static MockBehavior FromJson(const nlohmann::json& object);
  static MockBehavior FromFile(const std::filesystem::path& path);
  // Behavior shipped in the source tree.
  static MockBehavior Default();
};

// Throws kUnknownCell when the request's cell has no probability, and
// kInvalidArgument for stages the model never generates (1 and 4).
CompletionResponse MockComplete(const MockBehavior& behavior,
                                const CompletionRequest& request);

class MockBackend : public ChatBackend {
 public:
  explicit MockBackend(MockBehavior behavior);

  CompletionResponse Complete(const CompletionRequest& request) const override;
  DecodingParams decoding() const override { return {}; }
  std::map<std::string, std::string> Metadata() const override;

  const MockBehavior& behavior() const { return behavior_; }

 private:
  MockBehavior behavior_;
};

}  // namespace persuasion

#endif  // PERSUASION_MOCK_BACKEND_H_
