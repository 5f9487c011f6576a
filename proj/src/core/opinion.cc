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

#include "persuasion/opinion.h"

#include <array>
#include <cctype>

#include "persuasion/error.h"

namespace persuasion {
namespace {

// UTF-8 quotation marks and dashes treated like their ASCII counterparts.
constexpr std::array<std::string_view, 8> kUnicodeMarks = {
    "“", "”", "‘", "’", "«", "»",
    "—", "–",
};

// Length of the UTF-8 mark at the front of `s`, or 0.
size_t UnicodeMarkLength(std::string_view s) {
  for (std::string_view mark : kUnicodeMarks) {
    if (s.starts_with(mark)) return mark.size();
  }
  return 0;
}

bool IsAsciiLetter(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) != 0;
}

bool IsSpace(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

// Skips whitespace, quotes and emphasis markers ahead of the signal token.
size_t SkipLeadIn(std::string_view s) {
  size_t pos = 0;
  while (pos < s.size()) {
    char c = s[pos];
    if (IsSpace(c) || c == '"' || c == '\'' || c == '`' || c == '*' ||
        c == '_') {
      ++pos;
      continue;
    }
    size_t mark = UnicodeMarkLength(s.substr(pos));
    if (mark == 0) break;
    pos += mark;
  }
  return pos;
}

// Skips punctuation and whitespace following the signal token.
size_t SkipSeparator(std::string_view s, size_t pos) {
  while (pos < s.size()) {
    unsigned char c = static_cast<unsigned char>(s[pos]);
    if (c < 0x80 && (std::isspace(c) || std::ispunct(c))) {
      ++pos;
      continue;
    }
    size_t mark = UnicodeMarkLength(s.substr(pos));
    if (mark == 0) break;
    pos += mark;
  }
  return pos;
}

std::string_view TrimTrailing(std::string_view s) {
  while (!s.empty() && IsSpace(s.back())) s.remove_suffix(1);
  return s;
}

}  // namespace

OpinionSignal ParseOpinionSignal(std::string_view text) {
  const size_t start = SkipLeadIn(text);
  size_t end = start;
  while (end < text.size() && IsAsciiLetter(text[end])) ++end;

  std::string token;
  for (size_t i = start; i < end; ++i) {
    token += static_cast<char>(
        std::tolower(static_cast<unsigned char>(text[i])));
  }
  // A non-ASCII byte right after the token counts as a letter unless it opens
  // a known quotation mark or dash ("Noël" is not a "no").
  const bool letter_follows =
      end < text.size() && static_cast<unsigned char>(text[end]) >= 0x80 &&
      UnicodeMarkLength(text.substr(end)) == 0;

  if ((token != "yes" && token != "no") || letter_follows) {
    std::string preview(text.substr(0, 80));
    throw Error(ErrorCode::kAmbiguousSignal,
                "reply does not begin with Yes or No: \"" + preview + "\"");
  }

  OpinionSignal signal;
  signal.changed = token == "yes";
  signal.reasoning = std::string(TrimTrailing(text.substr(SkipSeparator(text, end))));
  signal.raw = std::string(text);
  return signal;
}

}  // namespace persuasion
