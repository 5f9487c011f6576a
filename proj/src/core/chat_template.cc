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

#include "persuasion/chat_template.h"

#include "persuasion/error.h"

namespace persuasion {
namespace {

constexpr std::string_view kSystemOpen = "<s>[INST] <<SYS>>\n";
constexpr std::string_view kSystemClose = "\n<</SYS>>\n\n";
constexpr std::string_view kInstClose = " [/INST]";
constexpr std::string_view kTurnOpen = "<s>[INST] ";
constexpr std::string_view kTurnClose = " </s>";

}  // namespace

std::string RenderChatPrompt(std::string_view system,
                             const std::vector<ChatTurn>& history) {
  if (history.empty()) {
    throw Error(ErrorCode::kEmptyHistory, "chat history is empty");
  }
  if (history.back().role != TurnRole::kIncoming) {
    throw Error(ErrorCode::kNonAlternatingHistory,
                "chat history must end with an incoming message");
  }
  for (size_t i = 0; i < history.size(); ++i) {
    if (history[i].text.empty()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "chat turn " + std::to_string(i) + " is empty");
    }
    if (i > 0 && history[i].role == history[i - 1].role) {
      throw Error(ErrorCode::kNonAlternatingHistory,
                  "turns " + std::to_string(i - 1) + " and " +
                      std::to_string(i) + " share a speaker");
    }
  }

  std::string out;
  out.append(kSystemOpen).append(system).append(kSystemClose);
  size_t i = 0;
  if (history[0].role == TurnRole::kIncoming) {
    out.append(history[0].text);
    i = 1;
  }
  out.append(kInstClose);
  // Remaining turns come in (outgoing, incoming) exchanges.
  for (; i < history.size(); i += 2) {
    out.append(" ").append(history[i].text).append(kTurnClose);
    out.append(kTurnOpen).append(history[i + 1].text).append(kInstClose);
  }
  return out;
}

ChatPrompt ParseChatPrompt(std::string_view wire) {
  auto fail = [](const std::string& what) {
    return Error(ErrorCode::kParseError, "chat prompt: " + what);
  };
  if (!wire.starts_with(kSystemOpen)) throw fail("missing system header");
  size_t pos = kSystemOpen.size();
  size_t end = wire.find(kSystemClose, pos);
  if (end == std::string_view::npos) throw fail("unterminated system block");

  ChatPrompt prompt;
  prompt.system = std::string(wire.substr(pos, end - pos));
  pos = end + kSystemClose.size();

  end = wire.find(kInstClose, pos);
  if (end == std::string_view::npos) throw fail("unterminated first turn");
  if (end > pos) {
    prompt.history.push_back(
        {TurnRole::kIncoming, std::string(wire.substr(pos, end - pos))});
  }
  pos = end + kInstClose.size();

  while (pos < wire.size()) {
    if (wire[pos] != ' ') throw fail("expected assistant turn");
    ++pos;
    end = wire.find(kTurnClose, pos);
    if (end == std::string_view::npos) throw fail("unterminated assistant turn");
    prompt.history.push_back(
        {TurnRole::kOutgoing, std::string(wire.substr(pos, end - pos))});
    pos = end + kTurnClose.size();
    if (wire.substr(pos, kTurnOpen.size()) != kTurnOpen) {
      throw fail("expected user turn");
    }
    pos += kTurnOpen.size();
    end = wire.find(kInstClose, pos);
    if (end == std::string_view::npos) throw fail("unterminated user turn");
    prompt.history.push_back(
        {TurnRole::kIncoming, std::string(wire.substr(pos, end - pos))});
    pos = end + kInstClose.size();
  }
  if (prompt.history.empty()) throw fail("no turns");
  return prompt;
}

}  // namespace persuasion
