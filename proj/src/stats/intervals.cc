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

#include "persuasion/stats/intervals.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "persuasion/error.h"

namespace persuasion::stats {

Interval WilsonInterval(int64_t successes, int64_t trials, double z) {
  if (trials <= 0 || successes < 0 || successes > trials) {
    throw Error(ErrorCode::kInvalidArgument,
                "Wilson interval needs 0 <= k <= n and n > 0 (k=" +
                    std::to_string(successes) + ", n=" + std::to_string(trials) + ")");
  }
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  Interval interval{std::max(0.0, center - half), std::min(1.0, center + half)};
  if (successes == 0) interval.low = 0.0;
  if (successes == trials) interval.high = 1.0;
  // Guard p inside the interval against rounding in the subtraction.
  interval.low = std::min(interval.low, p);
  interval.high = std::max(interval.high, p);
  return interval;
}

}  // namespace persuasion::stats
