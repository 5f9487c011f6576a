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

#include "persuasion/prompt_catalog.h"

#include <cctype>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "persuasion/error.h"

namespace persuasion {
namespace {

using nlohmann::json;

std::string RequireString(const json& object, const std::string& key) {
  if (!object.contains(key) || !object.at(key).is_string()) {
    throw Error(ErrorCode::kConfigError,
                "prompt catalog: missing string field '" + key + "'");
  }
  return object.at(key).get<std::string>();
}

void ReplaceAll(std::string& text, std::string_view from,
                const std::string& to) {
  for (size_t pos = text.find(from); pos != std::string::npos;
       pos = text.find(from, pos + to.size())) {
    text.replace(pos, from.size(), to);
  }
}

}  // namespace

PromptCatalog PromptCatalog::FromJson(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kConfigError,
                std::string("prompt catalog is not valid JSON: ") + e.what());
  }
  PromptCatalog catalog;
  catalog.version_ = RequireString(root, "catalog_version");
  catalog.topic_ = RequireString(root, "topic");
  catalog.convincer_baseline_ = RequireString(root, "convincer_baseline");
  catalog.opening_statement_ = RequireString(root, "opening_statement");
  catalog.closing_question_ = RequireString(root, "closing_question");

  if (!root.contains("strategies") || !root["strategies"].is_object()) {
    throw Error(ErrorCode::kConfigError, "prompt catalog: missing strategies");
  }
  for (SocialDimension d : kAllDimensions) {
    std::string text =
        RequireString(root["strategies"], std::string(DimensionId(d)));
    if (d != SocialDimension::kBaseline && text.empty()) {
      throw Error(ErrorCode::kConfigError,
                  "prompt catalog: empty strategy for " +
                      std::string(DimensionId(d)));
    }
    if (d == SocialDimension::kBaseline && !text.empty()) {
      throw Error(ErrorCode::kConfigError,
                  "prompt catalog: baseline strategy must be empty");
    }
    catalog.strategies_[d] = std::move(text);
  }
  if (!root.contains("skeptic") || !root["skeptic"].is_object()) {
    throw Error(ErrorCode::kConfigError, "prompt catalog: missing skeptic");
  }
  for (Stubbornness s : kAllStubbornness) {
    std::string text =
        RequireString(root["skeptic"], std::string(StubbornnessId(s)));
    if (text.empty()) {
      throw Error(ErrorCode::kConfigError,
                  "prompt catalog: empty persona for " +
                      std::string(StubbornnessId(s)));
    }
    catalog.personas_[s] = std::move(text);
  }
  return catalog;
}

PromptCatalog PromptCatalog::FromFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kConfigError,
                "cannot open prompt catalog " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return FromJson(buffer.str());
}

std::filesystem::path PromptCatalog::DefaultPath() {
  return std::filesystem::path(PERSUASION_DATA_DIR) / "prompt_catalog.json";
}

PromptCatalog PromptCatalog::Default() { return FromFile(DefaultPath()); }

std::string PromptCatalog::Expand(const std::string& text) const {
  std::string out = text;
  std::string capitalized = topic_;
  if (!capitalized.empty()) {
    capitalized[0] = static_cast<char>(
        std::toupper(static_cast<unsigned char>(capitalized[0])));
  }
  ReplaceAll(out, "{topic}", topic_);
  ReplaceAll(out, "{Topic}", capitalized);
  return out;
}

std::string PromptCatalog::StrategyText(SocialDimension dimension) const {
  return Expand(strategies_.at(dimension));
}

std::string PromptCatalog::ConvincerBaseline() const {
  return Expand(convincer_baseline_);
}

std::string PromptCatalog::SkepticPersona(Stubbornness level) const {
  return Expand(personas_.at(level));
}

std::string PromptCatalog::OpeningStatement() const {
  return Expand(opening_statement_);
}

std::string PromptCatalog::ClosingQuestion() const {
  return Expand(closing_question_);
}

std::string BuildConvincerSystemPrompt(const PromptCatalog& catalog,
                                       SocialDimension dimension) {
  std::string prompt = catalog.ConvincerBaseline();
  if (dimension != SocialDimension::kBaseline) {
    prompt += ' ';
    prompt += catalog.StrategyText(dimension);
  }
  return prompt;
}

std::string BuildSkepticSystemPrompt(const PromptCatalog& catalog,
                                     Stubbornness level) {
  return catalog.SkepticPersona(level);
}

}  // namespace persuasion
