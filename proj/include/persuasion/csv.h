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

#ifndef PERSUASION_CSV_H_
#define PERSUASION_CSV_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace persuasion::csv {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Throws kParseError when the column is missing.
  size_t Column(std::string_view name) const;
  bool HasColumn(std::string_view name) const;
};

// RFC 4180 subset: comma separated, double-quoted fields may contain commas,
// quotes ("") and newlines. Blank lines are skipped. Every row must have as
// many fields as the header.
Table Parse(std::string_view text);
Table ReadFile(const std::filesystem::path& path);

std::string FormatRow(const std::vector<std::string>& fields);
std::string Format(const Table& table);

// Shortest round-trip-stable rendering used in every CSV output.
std::string FormatDouble(double value);

// Throws kParseError on malformed numbers.
double ParseDouble(std::string_view field);
long long ParseInt(std::string_view field);
bool ParseBool(std::string_view field);

// Writes the whole file or throws kIoError.
void WriteFile(const std::filesystem::path& path, const std::string& contents);

}  // namespace persuasion::csv

#endif  // PERSUASION_CSV_H_
