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

#ifndef PERSUASION_DIALOGUE_H_
#define PERSUASION_DIALOGUE_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "persuasion/chat_template.h"
#include "persuasion/dimensions.h"
#include "persuasion/llm_gateway.h"
#include "persuasion/opinion.h"
#include "persuasion/prompt_catalog.h"

namespace persuasion {

struct Message {
  Speaker speaker;
  int stage;  // 1..5
  std::string text;

  bool operator==(const Message&) const = default;
};

// Complete record of one five-stage dialogue. `outcome_valid` is false when
// the Skeptic's closing reply carried no Yes/No signal; such transcripts are
// kept for auditing and excluded from every estimate.
struct DialogueTranscript {
  std::string id;
  SocialDimension dimension = SocialDimension::kBaseline;
  Stubbornness stubbornness = Stubbornness::kModerate;
  uint64_t seed = 0;
  std::vector<Message> messages;
  OpinionSignal outcome;
  bool outcome_valid = false;
  std::map<std::string, std::string> backend_meta;

  // The Convincer's stage-2 argument.
  const std::string& Argument() const;
  bool Persuaded() const { return outcome_valid && outcome.changed; }

  bool operator==(const DialogueTranscript&) const = default;
};

struct DialogueSpec {
  std::string id;
  SocialDimension dimension;
  Stubbornness stubbornness;
  uint64_t seed;
};

// The conversation log as seen by `agent`: its own messages are outgoing.
std::vector<ChatTurn> AgentView(const std::vector<Message>& messages,
                                Speaker agent);

// Runs the five stages: scripted opening (Skeptic), generated argument
// (Convincer), generated response (Skeptic), scripted closing question
// (Convincer), generated stance signal (Skeptic). Each generation receives
// the speaker's system prompt and its view of the cumulative log.
//
// Backend failures raise kBackendError naming the stage. An unparseable
// stance yields a transcript with outcome_valid = false.
DialogueTranscript RunDialogue(const ChatBackend& backend,
                               const PromptCatalog& catalog,
                               const DialogueSpec& spec);

// One JSON object, no trailing newline. Field order is fixed so equal
// transcripts serialize to equal bytes.
std::string TranscriptToJsonLine(const DialogueTranscript& transcript);
DialogueTranscript TranscriptFromJsonLine(const std::string& line);

std::vector<DialogueTranscript> ReadTranscripts(const std::filesystem::path& path);

}  // namespace persuasion

#endif  // PERSUASION_DIALOGUE_H_
