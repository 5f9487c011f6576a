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

#ifndef PERSUASION_ANNOTATION_TEXT_IMAGE_H_
#define PERSUASION_ANNOTATION_TEXT_IMAGE_H_

#include <string>
#include <string_view>
#include <vector>

namespace persuasion::annotation {

struct TextImageOptions {
  int width_px = 640;
  int margin_px = 24;
  double font_scale = 0.6;
  int line_spacing_px = 10;
};

// Replaces typographic quotes, dashes and ellipses with ASCII equivalents
// and any other non-ASCII code point with '?'. The Hershey fonts only cover
// printable ASCII.
std::string ToRenderableAscii(std::string_view utf8);

// Greedy word wrap so no line exceeds the usable width at the given scale.
std::vector<std::string> WrapText(std::string_view text,
                                  const TextImageOptions& options = {});

// PNG bytes of black text on a white background.
std::string RenderTextPng(std::string_view text, const TextImageOptions& options = {});

}  // namespace persuasion::annotation

#endif  // PERSUASION_ANNOTATION_TEXT_IMAGE_H_
