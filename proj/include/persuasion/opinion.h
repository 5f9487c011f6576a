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

#ifndef PERSUASION_OPINION_H_
#define PERSUASION_OPINION_H_

#include <string>
#include <string_view>

namespace persuasion {

// The Skeptic's closing stance declaration.
struct OpinionSignal {
  bool changed = false;
  std::string reasoning;
  std::string raw;

  bool operator==(const OpinionSignal&) const = default;
};

// Reads a leading case-insensitive "yes" or "no" token, skipping whitespace,
// quotation marks and markdown emphasis in front of it. The token must be
// followed by end of text or a non-letter. The reasoning is what remains once
// the token and the punctuation and whitespace right after it are dropped.
//
// Throws kAmbiguousSignal when neither token leads; such replies are protocol
// violations and are never coerced into an outcome.
OpinionSignal ParseOpinionSignal(std::string_view text);

}  // namespace persuasion

#endif  // PERSUASION_OPINION_H_
