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

#include "persuasion/stats/hypothesis.h"

#include <cmath>
#include <numeric>

#include <boost/math/distributions/students_t.hpp>

#include "persuasion/error.h"

namespace persuasion::stats {
namespace {

struct Moments {
  double n;
  double mean;
  double variance;  // unbiased
};

Moments SampleMoments(std::span<const double> x) {
  const double n = static_cast<double>(x.size());
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : x) ss += (v - mean) * (v - mean);
  return {n, mean, ss / (n - 1.0)};
}

}  // namespace

WelchResult WelchTTest(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2) {
    throw Error(ErrorCode::kInsufficientData,
                "Welch t-test needs at least two values per sample");
  }
  const Moments ma = SampleMoments(a);
  const Moments mb = SampleMoments(b);
  const double va = ma.variance / ma.n;
  const double vb = mb.variance / mb.n;
  if (va + vb <= 0.0) {
    throw Error(ErrorCode::kInsufficientData, "both samples have zero variance");
  }
  const double t = (ma.mean - mb.mean) / std::sqrt(va + vb);
  const double df =
      (va + vb) * (va + vb) / (va * va / (ma.n - 1.0) + vb * vb / (mb.n - 1.0));
  boost::math::students_t_distribution<double> dist(df);
  const double p = 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
  return {t, df, std::min(1.0, p)};
}

OddsRatioResult OddsRatio(int64_t a, int64_t b, int64_t c, int64_t d) {
  if (a < 0 || b < 0 || c < 0 || d < 0) {
    throw Error(ErrorCode::kInvalidArgument, "odds ratio cells must be >= 0");
  }
  if (a + b == 0 || c + d == 0 || a + c == 0 || b + d == 0) {
    throw Error(ErrorCode::kAllZeroMargin,
                "a row or column of the 2x2 table is all zero");
  }
  const bool corrected = a == 0 || b == 0 || c == 0 || d == 0;
  const double shift = corrected ? 0.5 : 0.0;
  const double fa = static_cast<double>(a) + shift;
  const double fb = static_cast<double>(b) + shift;
  const double fc = static_cast<double>(c) + shift;
  const double fd = static_cast<double>(d) + shift;
  return {(fa * fd) / (fb * fc), corrected, fa * fd, fb * fc};
}

}  // namespace persuasion::stats
