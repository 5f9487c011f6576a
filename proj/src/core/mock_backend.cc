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

#include "persuasion/mock_backend.h"

#include <fstream>
#include <sstream>

#include "persuasion/error.h"
#include "persuasion/seeding.h"

namespace persuasion {
namespace {

using nlohmann::json;

// Salts keep the draws of different purposes within one stage independent.
constexpr uint64_t kPickSalt = 0x70c4;
constexpr uint64_t kOutcomeSalt = 0x0c7e;

const std::string& Pick(const std::vector<std::string>& options, uint64_t seed,
                        int stage) {
  SplitMixRng rng(DeriveSeed(seed, {static_cast<uint64_t>(stage), kPickSalt}));
  return options[rng.NextBelow(options.size())];
}

int WordCount(const std::string& text) {
  std::istringstream in(text);
  std::string word;
  int n = 0;
  while (in >> word) ++n;
  return n;
}

std::vector<std::string> StringList(const json& object, const char* key) {
  if (!object.contains(key)) return {};
  return object.at(key).get<std::vector<std::string>>();
}

}  // namespace

void MockBehavior::Validate() const {
  for (const auto& [cell, p] : persuasion_prob) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw Error(ErrorCode::kConfigError,
                  "mock: probability for " +
                      std::string(DimensionId(cell.first)) + "/" +
                      std::string(StubbornnessId(cell.second)) +
                      " is outside [0, 1]");
    }
  }
  for (SocialDimension d : kAllDimensions) {
    auto it = argument_corpus.find(d);
    if (it == argument_corpus.end() || it->second.empty()) {
      throw Error(ErrorCode::kConfigError,
                  "mock: no canned arguments for " + std::string(DimensionId(d)));
    }
  }
  if (pushbacks.empty() || yes_reasons.empty() || no_reasons.empty()) {
    throw Error(ErrorCode::kConfigError,
                "mock: pushbacks, yes_reasons and no_reasons must be non-empty");
  }
}

void MockBehavior::SetLevelProbability(Stubbornness level, double p) {
  for (SocialDimension d : kAllDimensions) persuasion_prob[{d, level}] = p;
}

void MockBehavior::MergeProbabilities(const json& object) {
  try {
    if (object.contains("default_persuasion_prob")) {
      for (const auto& [level, p] : object["default_persuasion_prob"].items()) {
        SetLevelProbability(StubbornnessFromId(level), p.get<double>());
      }
    }
    if (object.contains("persuasion_prob")) {
      for (const auto& [dim, levels] : object["persuasion_prob"].items()) {
        for (const auto& [level, p] : levels.items()) {
          persuasion_prob[{DimensionFromId(dim), StubbornnessFromId(level)}] =
              p.get<double>();
        }
      }
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kConfigError, std::string("mock probabilities: ") + e.what());
  } catch (const Error& e) {
    throw Error(ErrorCode::kConfigError, e.what());
  }
}

MockBehavior MockBehavior::FromJson(const json& object) {
  MockBehavior behavior;
  try {
    behavior.rng_scheme = object.value("rng_scheme", behavior.rng_scheme);
    behavior.MergeProbabilities(object);
    if (object.contains("arguments")) {
      for (const auto& [dim, texts] : object["arguments"].items()) {
        behavior.argument_corpus[DimensionFromId(dim)] =
            texts.get<std::vector<std::string>>();
      }
    }
    behavior.pushbacks = StringList(object, "pushbacks");
    behavior.yes_reasons = StringList(object, "yes_reasons");
    behavior.no_reasons = StringList(object, "no_reasons");
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kConfigError, std::string("mock behavior: ") + e.what());
  } catch (const Error& e) {
    throw Error(ErrorCode::kConfigError, std::string("mock behavior: ") + e.what());
  }
  behavior.Validate();
  return behavior;
}

MockBehavior MockBehavior::FromFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kConfigError, "cannot open mock behavior " + path.string());
  }
  json object;
  try {
    object = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kConfigError,
                "mock behavior " + path.string() + ": " + e.what());
  }
  return FromJson(object);
}

MockBehavior MockBehavior::Default() {
  return FromFile(std::filesystem::path(PERSUASION_DATA_DIR) /
                  "mock_behavior.json");
}

CompletionResponse MockComplete(const MockBehavior& behavior,
                                const CompletionRequest& request) {
  CompletionResponse response;
  switch (request.stage) {
    case 2: {
      auto it = behavior.argument_corpus.find(request.dimension);
      if (it == behavior.argument_corpus.end() || it->second.empty()) {
        throw Error(ErrorCode::kUnknownCell,
                    "mock: no arguments for " +
                        std::string(DimensionId(request.dimension)));
      }
      response.text = Pick(it->second, request.seed, request.stage);
      break;
    }
    case 3:
      response.text = Pick(behavior.pushbacks, request.seed, request.stage);
      break;
    case 5: {
      auto it = behavior.persuasion_prob.find({request.dimension, request.stubbornness});
      if (it == behavior.persuasion_prob.end()) {
        throw Error(ErrorCode::kUnknownCell,
                    "mock: no persuasion probability for " +
                        std::string(DimensionId(request.dimension)) + "/" +
                        std::string(StubbornnessId(request.stubbornness)));
      }
      SplitMixRng rng(DeriveSeed(
          request.seed, {static_cast<uint64_t>(request.stage), kOutcomeSalt}));
      const bool persuaded = rng.NextUnit() < it->second;
      response.text =
          persuaded ? "Yes, " + Pick(behavior.yes_reasons, request.seed, request.stage)
                    : "No, " + Pick(behavior.no_reasons, request.seed, request.stage);
      break;
    }
    default:
      throw Error(ErrorCode::kInvalidArgument,
                  "mock: stage " + std::to_string(request.stage) +
                      " is not generated by the model");
  }
  response.prompt_tokens = WordCount(request.prompt);
  response.completion_tokens = WordCount(response.text);
  return response;
}

MockBackend::MockBackend(MockBehavior behavior) : behavior_(std::move(behavior)) {
  behavior_.Validate();
}

CompletionResponse MockBackend::Complete(const CompletionRequest& request) const {
  return MockComplete(behavior_, request);
}

std::map<std::string, std::string> MockBackend::Metadata() const {
  return {{"backend", "mock"},
          {"model_id", "mock"},
          {"rng_scheme", behavior_.rng_scheme},
          {"seed_forwarded", "true"}};
}

}  // namespace persuasion
