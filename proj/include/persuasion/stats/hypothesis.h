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

#ifndef PERSUASION_STATS_HYPOTHESIS_H_
#define PERSUASION_STATS_HYPOTHESIS_H_

#include <cstdint>
#include <span>

namespace persuasion::stats {

struct WelchResult {
  double t;
  double df;
  double p_two_sided;
};

// Unequal-variance two-sample t-test with Welch-Satterthwaite degrees of
// freedom. Both samples need >= 2 values and at least one a non-zero
// variance, else kInsufficientData.
WelchResult WelchTTest(std::span<const double> a, std::span<const double> b);

struct OddsRatioResult {
  double value;      // numerator / denominator
  bool corrected;    // Haldane-Anscombe +0.5 applied to every cell
  double numerator;  // a * d, after any correction; exact for small counts
  double denominator;  // b * c
};

// (a/b) / (c/d) for a = success with the feature, b = success without,
// c = failure with, d = failure without. A zero cell triggers the +0.5
// correction. A zero row or column margin leaves the ratio undefined
// (kAllZeroMargin).
OddsRatioResult OddsRatio(int64_t a, int64_t b, int64_t c, int64_t d);

}  // namespace persuasion::stats

#endif  // PERSUASION_STATS_HYPOTHESIS_H_
