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

#ifndef PERSUASION_CHAT_TEMPLATE_H_
#define PERSUASION_CHAT_TEMPLATE_H_

#include <string>
#include <string_view>
#include <vector>

namespace persuasion {

// Direction of a logged message relative to the agent the prompt addresses.
enum class TurnRole { kIncoming, kOutgoing };

struct ChatTurn {
  TurnRole role;
  std::string text;

  bool operator==(const ChatTurn&) const = default;
};

struct ChatPrompt {
  std::string system;
  std::vector<ChatTurn> history;

  bool operator==(const ChatPrompt&) const = default;
};

// Renders the Llama 2 chat wire string:
//
//   <s>[INST] <<SYS>>\n{system}\n<</SYS>>\n\n{user} [/INST]
//
// then " {assistant} </s>" per completed exchange and "<s>[INST] {user} [/INST]"
// per following user turn. The history must alternate and end with an
// incoming turn. A history that opens with an outgoing turn (the agent spoke
// first) renders with an empty first user slot.
//
// Throws kEmptyHistory, kNonAlternatingHistory, or kInvalidArgument for an
// empty turn text.
std::string RenderChatPrompt(std::string_view system,
                             const std::vector<ChatTurn>& history);

// Inverse of RenderChatPrompt for texts free of the template delimiters.
// Throws kParseError on malformed input.
ChatPrompt ParseChatPrompt(std::string_view wire);

}  // namespace persuasion

#endif  // PERSUASION_CHAT_TEMPLATE_H_
