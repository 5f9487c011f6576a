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

#ifndef PERSUASION_PROMPT_CATALOG_H_
#define PERSUASION_PROMPT_CATALOG_H_

#include <filesystem>
#include <map>
#include <string>

#include "persuasion/dimensions.h"

namespace persuasion {

// Versioned set of every fixed text the dialogue protocol sends: system
// prompts, strategy fragments and the two scripted stage messages. Texts may
// contain "{topic}" and "{Topic}" placeholders, substituted on access.
class PromptCatalog {
 public:
  // Loads a catalog and checks that all ten dimensions and three stubbornness
  // levels are present, with non-empty strategy text for every dimension
  // except baseline.
  static PromptCatalog FromFile(const std::filesystem::path& path);
  static PromptCatalog FromJson(const std::string& json_text);

  // Catalog shipped in the source tree.
  static PromptCatalog Default();
  static std::filesystem::path DefaultPath();

  const std::string& version() const { return version_; }
  const std::string& topic() const { return topic_; }

  // Replaces the topic substituted into every text.
  void set_topic(std::string topic) { topic_ = std::move(topic); }

  std::string StrategyText(SocialDimension dimension) const;
  std::string ConvincerBaseline() const;
  std::string SkepticPersona(Stubbornness level) const;
  std::string OpeningStatement() const;
  std::string ClosingQuestion() const;

 private:
  std::string Expand(const std::string& text) const;

  std::string version_;
  std::string topic_;
  std::string convincer_baseline_;
  std::map<SocialDimension, std::string> strategies_;
  std::map<Stubbornness, std::string> personas_;
  std::string opening_statement_;
  std::string closing_question_;
};

// Baseline Convincer prompt, followed by a single space and the strategy text
// for every dimension other than baseline.
std::string BuildConvincerSystemPrompt(const PromptCatalog& catalog,
                                       SocialDimension dimension);

std::string BuildSkepticSystemPrompt(const PromptCatalog& catalog,
                                     Stubbornness level);

}  // namespace persuasion

#endif  // PERSUASION_PROMPT_CATALOG_H_
