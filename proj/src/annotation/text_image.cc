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

#include "persuasion/annotation/text_image.h"

#include <algorithm>
#include <cstdint>
#include <sstream>

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>
#include <opencv2/imgproc.hpp>

#include "persuasion/error.h"

namespace persuasion::annotation {
namespace {

constexpr int kFont = cv::FONT_HERSHEY_SIMPLEX;
constexpr int kThickness = 1;

std::string_view AsciiFor(uint32_t code_point) {
  switch (code_point) {
    case 0x2018: case 0x2019: case 0x201A: case 0x2032: return "'";
    case 0x201C: case 0x201D: case 0x201E: case 0x2033: return "\"";
    case 0x2010: case 0x2011: case 0x2012: case 0x2013: case 0x2212: return "-";
    case 0x2014: case 0x2015: return "--";
    case 0x2026: return "...";
    case 0x00A0: case 0x2009: case 0x202F: return " ";
    default: return "?";
  }
}

int TextWidth(const std::string& text, double scale) {
  int baseline = 0;
  return cv::getTextSize(text, kFont, scale, kThickness, &baseline).width;
}

}  // namespace

std::string ToRenderableAscii(std::string_view utf8) {
  std::string out;
  out.reserve(utf8.size());
  size_t i = 0;
  while (i < utf8.size()) {
    const auto lead = static_cast<unsigned char>(utf8[i]);
    if (lead < 0x80) {
      out += (lead == '\t' || lead == '\r') ? ' ' : static_cast<char>(lead);
      ++i;
      continue;
    }
    int extra = 0;
    uint32_t cp = 0;
    if ((lead & 0xE0) == 0xC0) {
      extra = 1;
      cp = lead & 0x1F;
    } else if ((lead & 0xF0) == 0xE0) {
      extra = 2;
      cp = lead & 0x0F;
    } else if ((lead & 0xF8) == 0xF0) {
      extra = 3;
      cp = lead & 0x07;
    } else {
      out += '?';
      ++i;
      continue;
    }
    size_t j = i + 1;
    for (; j < utf8.size() && j <= i + extra; ++j) {
      const auto cont = static_cast<unsigned char>(utf8[j]);
      if ((cont & 0xC0) != 0x80) break;
      cp = (cp << 6) | (cont & 0x3F);
    }
    out += (j == i + extra + 1) ? AsciiFor(cp) : "?";
    i = j;
  }
  return out;
}

std::vector<std::string> WrapText(std::string_view text, const TextImageOptions& options) {
  const int usable = options.width_px - 2 * options.margin_px;
  if (usable <= 0 || options.font_scale <= 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "image width too small for its margins");
  }
  std::vector<std::string> lines;
  std::istringstream paragraphs{std::string(text)};
  std::string paragraph;
  while (std::getline(paragraphs, paragraph)) {
    std::istringstream words(paragraph);
    std::string word;
    std::string line;
    while (words >> word) {
      const std::string candidate = line.empty() ? word : line + " " + word;
      if (line.empty() || TextWidth(candidate, options.font_scale) <= usable) {
        line = candidate;
        continue;
      }
      lines.push_back(line);
      line = word;
    }
    lines.push_back(line);
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty()) lines.emplace_back();
  return lines;
}

std::string RenderTextPng(std::string_view text, const TextImageOptions& options) {
  const std::vector<std::string> lines = WrapText(ToRenderableAscii(text), options);
  int baseline = 0;
  const cv::Size glyph =
      cv::getTextSize("Ag", kFont, options.font_scale, kThickness, &baseline);
  const int line_height = glyph.height + baseline + options.line_spacing_px;
  const int height = 2 * options.margin_px + line_height * static_cast<int>(lines.size());
  cv::Mat image(height, options.width_px, CV_8UC3, cv::Scalar(255, 255, 255));
  int y = options.margin_px + glyph.height;
  for (const std::string& line : lines) {
    cv::putText(image, line, cv::Point(options.margin_px, y), kFont, options.font_scale,
                cv::Scalar(0, 0, 0), kThickness, cv::LINE_AA);
    y += line_height;
  }
  std::vector<uchar> png;
  if (!cv::imencode(".png", image, png)) {
    throw Error(ErrorCode::kIoError, "PNG encoding failed");
  }
  return {png.begin(), png.end()};
}

}  // namespace persuasion::annotation
