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

#ifndef PERSUASION_STATS_INTERVALS_H_
#define PERSUASION_STATS_INTERVALS_H_

#include <cstdint>

namespace persuasion::stats {

struct Interval {
  double low;
  double high;
};

inline constexpr double kZ95 = 1.96;

// Wilson score interval for k successes in n trials. Exact at the edges:
// low is 0 when k = 0 and high is 1 when k = n. Requires n > 0, 0 <= k <= n.
Interval WilsonInterval(int64_t successes, int64_t trials, double z = kZ95);

}  // namespace persuasion::stats

#endif  // PERSUASION_STATS_INTERVALS_H_
