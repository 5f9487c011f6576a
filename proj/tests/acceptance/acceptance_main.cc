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

// Acceptance suite: one PASS/FAIL line per primary criterion. Exits non-zero
// when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "persuasion/annotation/judgments.h"
#include "persuasion/annotation/tasks.h"
#include "persuasion/chat_template.h"
#include "persuasion/cli/dispatch.h"
#include "persuasion/csv.h"
#include "persuasion/error.h"
#include "persuasion/experiment.h"
#include "persuasion/opinion.h"
#include "persuasion/stats/agreement.h"
#include "persuasion/stats/bradley_terry.h"
#include "persuasion/stats/hypothesis.h"
#include "persuasion/stats/intervals.h"
#include "support/fixtures.h"
#include "support/oracles.h"

namespace persuasion::acceptance {
namespace {

using testing::MakeTempDir;
using testing::ReadBytes;
using testing::TestDataDir;

// Pinned tolerances and budgets.
constexpr double kBtRatioRelativeError = 0.10;
constexpr double kBtRecoveryBudgetSeconds = 1.0;
constexpr int kBtComparisonsPerPair = 1000;
constexpr uint64_t kBtRecoverySeed = 20240517;
constexpr double kBtOracleTolerance = 1e-3;
constexpr double kKappaTolerance = 1e-9;
constexpr double kPipelineEstimateTolerance = 0.10;
constexpr double kPipelineBudgetSeconds = 10.0;
constexpr int kPipelineDialoguesPerCell = 100;
constexpr uint64_t kPipelineSeed = 424242;
constexpr double kGridTolerance = 1e-12;
constexpr double kWelchTolerance = 1e-3;
constexpr double kWilsonTolerance = 1e-3;

struct Outcome {
  bool pass = true;
  std::string detail;

  void Check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

std::string Fmt(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.6g", value);
  return buffer;
}

double Seconds(std::chrono::steady_clock::duration d) {
  return std::chrono::duration<double>(d).count();
}

template <typename Fn>
bool Throws(ErrorCode code, Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code() == code;
  }
  return false;
}

Outcome BradleyTerryRecovery() {
  Outcome out;
  const std::vector<SocialDimension> entities = {
      SocialDimension::kKnowledge, SocialDimension::kTrust, SocialDimension::kSupport};
  const std::vector<double> truth = {1.0, 2.0, 4.0};
  const auto start = std::chrono::steady_clock::now();
  const auto tally =
      testing::SimulatedTally(entities, truth, kBtComparisonsPerPair, kBtRecoverySeed);
  const auto fit = stats::FitBradleyTerry(tally);
  const auto ranking = stats::RankDimensions(fit);
  const double elapsed = Seconds(std::chrono::steady_clock::now() - start);
  double worst = 0.0;
  for (size_t i = 0; i < 3; ++i) {
    for (size_t j = 0; j < 3; ++j) {
      if (i == j) continue;
      const double fitted = fit.strengths[i] / fit.strengths[j];
      const double expected = truth[i] / truth[j];
      worst = std::max(worst, std::fabs(fitted - expected) / expected);
    }
  }
  out.Check(fit.converged, "fit did not converge");
  out.Check(worst <= kBtRatioRelativeError, "ratio error " + Fmt(worst));
  out.Check(ranking.entries.size() == 3 &&
                ranking.entries[0].entity == SocialDimension::kSupport &&
                ranking.entries[1].entity == SocialDimension::kTrust &&
                ranking.entries[2].entity == SocialDimension::kKnowledge,
            "ranking differs from support > trust > knowledge");
  out.Check(elapsed < kBtRecoveryBudgetSeconds, "took " + Fmt(elapsed) + " s");
  if (out.pass) {
    out.detail = "max ratio error " + Fmt(worst) + ", " + Fmt(elapsed * 1000) + " ms";
  }
  return out;
}

Outcome BradleyTerryOracle() {
  Outcome out;
  const auto tally = testing::ThreeEntityTally();
  const auto fit = stats::FitBradleyTerry(tally);
  const auto oracle = testing::GridSearchBradleyTerry3(tally.wins);
  double worst = 0.0;
  for (size_t i = 0; i < 3; ++i) {
    worst = std::max(worst, std::fabs(fit.strengths[i] - oracle[i]));
  }
  out.Check(worst <= kBtOracleTolerance, "max coordinate gap " + Fmt(worst));
  out.Check(fit.strengths[0] > fit.strengths[1] && fit.strengths[1] > fit.strengths[2],
            "strength order is not A > B > C");
  if (out.pass) out.detail = "max coordinate gap " + Fmt(worst);
  return out;
}

Outcome FleissKappa() {
  Outcome out;
  std::vector<std::vector<int64_t>> unanimous;
  for (int i = 0; i < 10; ++i) {
    unanimous.push_back(i < 5 ? std::vector<int64_t>{10, 0} : std::vector<int64_t>{0, 10});
  }
  const double k1 = stats::FleissKappa(unanimous).kappa;
  out.Check(std::fabs(k1 - 1.0) <= kKappaTolerance, "unanimous kappa " + Fmt(k1));

  // Hand evaluation for [[3,0],[0,3],[2,1]]: item agreements 1, 1, 1/3 give
  // P = 7/9; category shares 5/9 and 4/9 give Pe = 41/81; kappa = 22/40.
  const double hand = (7.0 / 9.0 - 41.0 / 81.0) / (1.0 - 41.0 / 81.0);
  const double k2 = stats::FleissKappa({{3, 0}, {0, 3}, {2, 1}}).kappa;
  out.Check(std::fabs(k2 - hand) <= kKappaTolerance,
            "3x3 kappa " + Fmt(k2) + " vs hand " + Fmt(hand));

  out.Check(Throws(ErrorCode::kDegenerateAllOneCategory,
                   [] { stats::FleissKappa({{4, 0}, {4, 0}, {4, 0}}); }),
            "single-category fixture did not raise DegenerateAllOneCategory");
  if (out.pass) out.detail = "unanimous 1, hand fixture " + Fmt(k2);
  return out;
}

// Experiment config for the one-dimension mock pipeline.
std::filesystem::path WritePipelineConfig(const std::filesystem::path& dir) {
  const nlohmann::json config = {
      {"dimensions", {"trust"}},
      {"stubbornness_levels", {"soft", "moderate", "hard"}},
      {"dialogues_per_cell", kPipelineDialoguesPerCell},
      {"parallelism", 1},
      {"output_path", "transcripts.jsonl"},
      {"estimates_path", "estimates.csv"},
      {"backend",
       {{"type", "mock"},
        {"persuasion_prob", {{"trust", {{"soft", 0.8}, {"moderate", 0.5}, {"hard", 0.15}}}}}}}};
  const auto path = dir / "experiment.json";
  csv::WriteFile(path, config.dump(2));
  return path;
}

int RunCli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  return cli::Dispatch(args, out, err);
}

Outcome MockPipeline() {
  Outcome out;
  const auto dir = MakeTempDir("acceptance-pipeline");
  const auto config = WritePipelineConfig(dir);
  const auto start = std::chrono::steady_clock::now();
  const int rc = RunCli({"run", "--config", config.string(), "--seed",
                         std::to_string(kPipelineSeed)});
  const double elapsed = Seconds(std::chrono::steady_clock::now() - start);
  out.Check(rc == 0, "run exited " + std::to_string(rc));
  if (rc != 0) return out;
  const csv::Table table = csv::ReadFile(dir / "estimates.csv");
  std::map<std::string, double> p_hat;
  for (const auto& row : table.rows) {
    p_hat[row[table.Column("stubbornness")]] = csv::ParseDouble(row[table.Column("p_hat")]);
  }
  const std::map<std::string, double> configured = {
      {"soft", 0.8}, {"moderate", 0.5}, {"hard", 0.15}};
  std::string values;
  for (const auto& [level, p] : configured) {
    const bool present = p_hat.contains(level);
    out.Check(present, "no estimate for " + level);
    if (!present) continue;
    out.Check(std::fabs(p_hat[level] - p) <= kPipelineEstimateTolerance,
              level + " p_hat " + Fmt(p_hat[level]) + " vs " + Fmt(p));
    values += level + "=" + Fmt(p_hat[level]) + " ";
  }
  out.Check(p_hat["soft"] > p_hat["moderate"] && p_hat["moderate"] > p_hat["hard"],
            "ordering soft > moderate > hard violated");
  out.Check(elapsed < kPipelineBudgetSeconds, "took " + Fmt(elapsed) + " s");
  if (out.pass) out.detail = values + "in " + Fmt(elapsed) + " s";
  return out;
}

Outcome Determinism() {
  Outcome out;
  std::vector<std::pair<std::string, std::string>> outputs;
  for (const char* name : {"acceptance-determinism-a", "acceptance-determinism-b"}) {
    const auto dir = MakeTempDir(name);
    const auto config = WritePipelineConfig(dir);
    const int rc = RunCli({"run", "--config", config.string(), "--seed",
                           std::to_string(kPipelineSeed), "--parallelism", "4"});
    out.Check(rc == 0, "run exited " + std::to_string(rc));
    outputs.emplace_back(ReadBytes(dir / "transcripts.jsonl"),
                         ReadBytes(dir / "estimates.csv"));
  }
  if (!out.pass) return out;
  out.Check(!outputs[0].first.empty(), "empty transcript file");
  out.Check(outputs[0].first == outputs[1].first, "transcript files differ");
  out.Check(outputs[0].second == outputs[1].second, "estimate files differ");
  if (out.pass) {
    out.detail = std::to_string(outputs[0].first.size()) + " transcript bytes identical";
  }
  return out;
}

Outcome SensitivitySweep() {
  Outcome out;
  const auto grid = stats::DefaultThresholdGrid();
  out.Check(grid.size() == 9, "grid has " + std::to_string(grid.size()) + " points");
  for (size_t i = 0; i < grid.size() && i < 9; ++i) {
    const double expected = 0.50 + 0.05 * static_cast<double>(i);
    out.Check(std::fabs(grid[i] - expected) <= kGridTolerance,
              "grid point " + std::to_string(i) + " is " + Fmt(grid[i]));
  }
  const auto points = stats::SensitivitySweep(testing::SweepVotes(), grid);
  out.Check(points.size() == grid.size(), "sweep skipped thresholds");
  for (const auto& point : points) {
    const bool top = std::fabs(point.threshold - 0.9) <= kGridTolerance;
    if (top) {
      out.Check(!point.ranking && !point.degenerate_reason.empty(),
                "0.9 is not marked DegenerateTally");
    } else {
      out.Check(point.ranking && point.ranking->entries.size() == 4,
                "no full ranking at " + Fmt(point.threshold));
    }
  }
  if (out.pass) out.detail = "8 rankings, DegenerateTally at 0.9";
  return out;
}

Outcome Gating() {
  Outcome out;
  const auto log = testing::GatingLog();
  const auto gate = annotation::GateWorkers(log);
  std::set<std::string> kept;
  for (const auto& r : gate.retained) kept.insert(r.worker_id);
  out.Check(kept == std::set<std::string>{"w-clean", "w-fifth"},
            "retained workers differ from {w-clean, w-fifth}");

  int64_t non_control_kept = 0;
  for (const auto& j : gate.retained_judgments) non_control_kept += j.is_control ? 0 : 1;
  int64_t non_control_all = 0;
  for (const auto& j : log) non_control_all += j.is_control ? 0 : 1;
  for (double t : {0.0, 0.5, 0.8, 1.0}) {
    for (const auto* judgments : {&gate.retained_judgments, &log}) {
      const auto tally = annotation::ExportTally(*judgments, t);
      const int64_t expected = judgments == &log ? non_control_all : non_control_kept;
      out.Check(tally.TotalComparisons() == expected,
                "tally at " + Fmt(t) + " counts " + std::to_string(tally.TotalComparisons()) +
                    " judgments, expected " + std::to_string(expected));
      const bool has_baseline =
          std::find(tally.entities.begin(), tally.entities.end(),
                    SocialDimension::kBaseline) != tally.entities.end();
      out.Check(!has_baseline, "control pair leaked into the tally at " + Fmt(t));
    }
  }
  if (out.pass) out.detail = "retained {w-clean, w-fifth}; no control judgment in any tally";
  return out;
}

Outcome PairSampling() {
  Outcome out;
  const auto arguments =
      testing::SuccessfulArguments(3, {SocialDimension::kPower});
  const auto pairs =
      annotation::SamplePairs(arguments, 5, {SocialDimension::kPower}, 99);
  out.Check(pairs.size() == 180, std::to_string(pairs.size()) + " pairs");
  std::set<std::pair<std::string, std::string>> distinct;
  for (const auto& p : pairs) distinct.insert(std::minmax(p.first, p.second));
  out.Check(distinct.size() == pairs.size(), "repeated argument pair");
  const auto corpus =
      annotation::LoadControlCorpus(annotation::DefaultControlCorpusPath());
  const auto all = annotation::InjectControls(pairs, 0.10, corpus, arguments, 100);
  const auto controls = std::count_if(all.begin(), all.end(),
                                      [](const auto& p) { return p.is_control; });
  out.Check(controls == 18, std::to_string(controls) + " controls");
  out.Check(all.size() == 198, std::to_string(all.size()) + " tasks in total");
  if (out.pass) out.detail = "180 pairs + 18 controls";
  return out;
}

Outcome WireFormat() {
  Outcome out;
  const auto cases = nlohmann::json::parse(ReadBytes(TestDataDir() / "golden/cases.json"));
  int goldens = 0;
  for (const auto& c : cases) {
    std::vector<ChatTurn> history;
    for (const auto& turn : c["history"]) {
      history.push_back({turn["role"] == "in" ? TurnRole::kIncoming : TurnRole::kOutgoing,
                         turn["text"].get<std::string>()});
    }
    const std::string name = c["name"];
    const std::string golden = ReadBytes(TestDataDir() / "golden" / (name + ".txt"));
    const bool equal =
        !golden.empty() && RenderChatPrompt(c["system"].get<std::string>(), history) == golden;
    out.Check(equal, "golden " + name + " differs");
    goldens += equal ? 1 : 0;
  }
  out.Check(goldens == 3, std::to_string(goldens) + " of 3 goldens matched");

  const auto opinions = nlohmann::json::parse(ReadBytes(TestDataDir() / "opinion_cases.json"));
  int correct = 0;
  for (const auto& c : opinions) {
    const std::string text = c["text"];
    const std::string expect = c["expect"];
    bool ok = false;
    try {
      const OpinionSignal s = ParseOpinionSignal(text);
      ok = (expect == "yes" && s.changed) || (expect == "no" && !s.changed);
      if (ok && c["reasoning"].is_string()) ok = s.reasoning == c["reasoning"];
    } catch (const Error& e) {
      ok = expect == "ambiguous" && e.code() == ErrorCode::kAmbiguousSignal;
    }
    if (!ok) out.Check(false, "opinion case misparsed: " + text);
    correct += ok ? 1 : 0;
  }
  out.Check(opinions.size() == 20, "opinion fixture has " +
                                       std::to_string(opinions.size()) + " cases");
  if (out.pass) out.detail = "3/3 goldens, " + std::to_string(correct) + "/20 opinions";
  return out;
}

Outcome StatisticalUtilities() {
  Outcome out;
  const std::vector<double> a = {1, 2, 3, 4, 5};
  const std::vector<double> b = {2, 3, 4, 5, 6};
  const auto welch = stats::WelchTTest(a, b);
  const auto oracle = testing::WelchOracle(a, b);
  out.Check(std::fabs(welch.t - oracle.t) <= kWelchTolerance &&
                std::fabs(welch.df - oracle.df) <= kWelchTolerance &&
                std::fabs(welch.p_two_sided - oracle.p) <= kWelchTolerance,
            "Welch (" + Fmt(welch.t) + ", " + Fmt(welch.df) + ", " + Fmt(welch.p_two_sided) +
                ") vs oracle (" + Fmt(oracle.t) + ", " + Fmt(oracle.df) + ", " +
                Fmt(oracle.p) + ")");

  const auto wilson = stats::WilsonInterval(50, 100);
  const auto wilson_oracle = testing::WilsonOracle(50, 100);
  out.Check(std::fabs(wilson.low - wilson_oracle.first) <= kWilsonTolerance &&
                std::fabs(wilson.high - wilson_oracle.second) <= kWilsonTolerance,
            "Wilson [" + Fmt(wilson.low) + ", " + Fmt(wilson.high) + "]");

  // Identities checked in exact arithmetic on the returned fraction.
  bool identities = true;
  for (int64_t x : {1, 3, 7}) {
    for (int64_t y : {2, 5, 11}) {
      for (int64_t z : {4, 9}) {
        for (int64_t w : {6, 13}) {
          const auto r = stats::OddsRatio(x, y, z, w);
          const auto flipped = stats::OddsRatio(z, w, x, y);
          identities &= !r.corrected && !flipped.corrected;
          identities &= r.numerator * flipped.numerator == r.denominator * flipped.denominator;
          identities &= r.value == stats::OddsRatio(x, z, y, w).value;  // transpose
          identities &= r.value == stats::OddsRatio(w, z, y, x).value;
        }
      }
      identities &= stats::OddsRatio(x, x, x, x).value == 1.0;
    }
  }
  const auto corrected = stats::OddsRatio(5, 3, 0, 4);
  identities &= corrected.corrected && corrected.value == (5.5 * 4.5) / (3.5 * 0.5);
  out.Check(identities, "odds-ratio identity violated");
  if (out.pass) {
    out.detail = "Welch p " + Fmt(welch.p_two_sided) + ", Wilson [" + Fmt(wilson.low) +
                 ", " + Fmt(wilson.high) + "], odds identities exact";
  }
  return out;
}

}  // namespace
}  // namespace persuasion::acceptance

int main() {
  using persuasion::acceptance::Outcome;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"bradley-terry-recovery", persuasion::acceptance::BradleyTerryRecovery},
      {"bradley-terry-oracle", persuasion::acceptance::BradleyTerryOracle},
      {"fleiss-kappa", persuasion::acceptance::FleissKappa},
      {"mock-pipeline", persuasion::acceptance::MockPipeline},
      {"determinism", persuasion::acceptance::Determinism},
      {"sensitivity-sweep", persuasion::acceptance::SensitivitySweep},
      {"gating", persuasion::acceptance::Gating},
      {"pair-sampling", persuasion::acceptance::PairSampling},
      {"wire-format", persuasion::acceptance::WireFormat},
      {"statistical-utilities", persuasion::acceptance::StatisticalUtilities},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    Outcome outcome;
    try {
      outcome = run();
    } catch (const std::exception& e) {
      outcome.pass = false;
      outcome.detail = std::string("threw ") + e.what();
    }
    std::printf("%s %s: %s\n", outcome.pass ? "PASS" : "FAIL", name.c_str(),
                outcome.detail.c_str());
    failures += outcome.pass ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
