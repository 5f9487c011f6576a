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

#include "persuasion/dialogue.h"

#include <cctype>
#include <fstream>
#include <optional>
#include <string>

#include "json.hpp"
#include "persuasion/error.h"

namespace persuasion {
namespace {

using ordered_json = nlohmann::ordered_json;

std::string Trim(const std::string& text) {
  size_t begin = 0;
  size_t end = text.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
  return text.substr(begin, end - begin);
}

}  // namespace

const std::string& DialogueTranscript::Argument() const {
  for (const Message& m : messages) {
    if (m.stage == 2) return m.text;
  }
  throw Error(ErrorCode::kInvalidArgument, "transcript " + id + " has no argument");
}

std::vector<ChatTurn> AgentView(const std::vector<Message>& messages,
                                Speaker agent) {
  std::vector<ChatTurn> view;
  view.reserve(messages.size());
  for (const Message& m : messages) {
    view.push_back({m.speaker == agent ? TurnRole::kOutgoing : TurnRole::kIncoming,
                    m.text});
  }
  return view;
}

DialogueTranscript RunDialogue(const ChatBackend& backend,
                               const PromptCatalog& catalog,
                               const DialogueSpec& spec) {
  DialogueTranscript transcript;
  transcript.id = spec.id;
  transcript.dimension = spec.dimension;
  transcript.stubbornness = spec.stubbornness;
  transcript.seed = spec.seed;

  const std::string convincer_system =
      BuildConvincerSystemPrompt(catalog, spec.dimension);
  const std::string skeptic_system =
      BuildSkepticSystemPrompt(catalog, spec.stubbornness);

  std::optional<bool> seed_echoed;
  auto generate = [&](Speaker speaker, int stage) {
    const std::string& system =
        speaker == Speaker::kConvincer ? convincer_system : skeptic_system;
    CompletionRequest request;
    request.prompt = RenderChatPrompt(system, AgentView(transcript.messages, speaker));
    request.seed = spec.seed;
    request.decoding = backend.decoding();
    request.stage = stage;
    request.speaker = speaker;
    request.dimension = spec.dimension;
    request.stubbornness = spec.stubbornness;
    std::string text;
    try {
      const CompletionResponse response = backend.Complete(request);
      if (response.seed_echoed) seed_echoed = seed_echoed.value_or(true) && *response.seed_echoed;
      text = Trim(response.text);
    } catch (const Error& e) {
      throw Error(ErrorCode::kBackendError,
                  "dialogue " + spec.id + " stage " + std::to_string(stage) +
                      ": " + e.what());
    }
    if (text.empty()) {
      throw Error(ErrorCode::kBackendError,
                  "dialogue " + spec.id + " stage " + std::to_string(stage) +
                      ": empty reply");
    }
    transcript.messages.push_back({speaker, stage, std::move(text)});
  };

  transcript.messages.push_back({Speaker::kSkeptic, 1, catalog.OpeningStatement()});
  generate(Speaker::kConvincer, 2);
  generate(Speaker::kSkeptic, 3);
  transcript.messages.push_back({Speaker::kConvincer, 4, catalog.ClosingQuestion()});
  generate(Speaker::kSkeptic, 5);

  try {
    transcript.outcome = ParseOpinionSignal(transcript.messages.back().text);
    transcript.outcome_valid = true;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kAmbiguousSignal) throw;
    transcript.outcome = OpinionSignal{false, "", transcript.messages.back().text};
    transcript.outcome_valid = false;
  }

  transcript.backend_meta = backend.Metadata();
  transcript.backend_meta["catalog_version"] = catalog.version();
  transcript.backend_meta["topic"] = catalog.topic();
  if (seed_echoed) transcript.backend_meta["seed_echoed"] = *seed_echoed ? "true" : "false";
  return transcript;
}

std::string TranscriptToJsonLine(const DialogueTranscript& t) {
  ordered_json messages = ordered_json::array();
  for (const Message& m : t.messages) {
    messages.push_back(ordered_json{{"speaker", SpeakerId(m.speaker)},
                                    {"stage", m.stage},
                                    {"text", m.text}});
  }
  ordered_json meta = ordered_json::object();
  for (const auto& [key, value] : t.backend_meta) meta[key] = value;

  ordered_json object;
  object["id"] = t.id;
  object["dimension"] = DimensionId(t.dimension);
  object["stubbornness"] = StubbornnessId(t.stubbornness);
  object["seed"] = t.seed;
  object["messages"] = std::move(messages);
  object["outcome"] = ordered_json{{"changed", t.outcome.changed},
                                   {"reasoning", t.outcome.reasoning},
                                   {"valid", t.outcome_valid}};
  object["backend_meta"] = std::move(meta);
  return object.dump();
}

DialogueTranscript TranscriptFromJsonLine(const std::string& line) {
  DialogueTranscript t;
  try {
    const auto object = nlohmann::json::parse(line);
    t.id = object.at("id").get<std::string>();
    t.dimension = DimensionFromId(object.at("dimension").get<std::string>());
    t.stubbornness = StubbornnessFromId(object.at("stubbornness").get<std::string>());
    t.seed = object.at("seed").get<uint64_t>();
    for (const auto& m : object.at("messages")) {
      t.messages.push_back({SpeakerFromId(m.at("speaker").get<std::string>()),
                            m.at("stage").get<int>(), m.at("text").get<std::string>()});
    }
    const auto& outcome = object.at("outcome");
    t.outcome.changed = outcome.at("changed").get<bool>();
    t.outcome.reasoning = outcome.at("reasoning").get<std::string>();
    t.outcome_valid = outcome.at("valid").get<bool>();
    if (!t.messages.empty()) t.outcome.raw = t.messages.back().text;
    for (const auto& [key, value] : object.at("backend_meta").items()) {
      t.backend_meta[key] = value.get<std::string>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParseError, std::string("transcript record: ") + e.what());
  }
  return t;
}

std::vector<DialogueTranscript> ReadTranscripts(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  std::vector<DialogueTranscript> transcripts;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    transcripts.push_back(TranscriptFromJsonLine(line));
  }
  return transcripts;
}

}  // namespace persuasion
