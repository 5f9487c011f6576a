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

#ifndef PERSUASION_SEEDING_H_
#define PERSUASION_SEEDING_H_

#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>

namespace persuasion {

// SplitMix64 finalizer; a bijection on 64-bit values.
uint64_t MixBits(uint64_t x);

// Order-sensitive combination of a base seed with any number of components.
uint64_t DeriveSeed(uint64_t base, std::initializer_list<uint64_t> components);

// Seeds forwarded over the wire stay within 53 bits so they survive JSON
// consumers that store numbers as doubles.
inline constexpr uint64_t kWireSeedMask = (uint64_t{1} << 53) - 1;

// Stable 64-bit FNV-1a hash of a string.
uint64_t HashString(std::string_view text);

// Lowercase hex rendering of a 64-bit value, zero-padded to 16 digits.
std::string Hex64(uint64_t value);

// Small deterministic generator whose output sequence is identical on every
// platform (standard library distributions are not).
class SplitMixRng {
 public:
  explicit SplitMixRng(uint64_t seed) : state_(seed) {}

  uint64_t Next();
  // Uniform in [0, 1) with 53 bits of resolution.
  double NextUnit();
  // Uniform integer in [0, bound). `bound` must be positive.
  uint64_t NextBelow(uint64_t bound);

 private:
  uint64_t state_;
};

}  // namespace persuasion

#endif  // PERSUASION_SEEDING_H_
