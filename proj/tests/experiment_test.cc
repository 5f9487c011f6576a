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

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <gtest/gtest.h>

#include "json.hpp"
#include "persuasion/dialogue.h"
#include "persuasion/error.h"
#include "persuasion/experiment.h"
#include "persuasion/mock_backend.h"
#include "persuasion/prompt_catalog.h"
#include "support/fixtures.h"
#include "support/oracles.h"

namespace persuasion {
namespace {

// Backend returning fixed replies per stage and recording every request.
class ScriptedBackend : public ChatBackend {
 public:
  explicit ScriptedBackend(std::map<int, std::string> replies) : replies_(std::move(replies)) {}

  CompletionResponse Complete(const CompletionRequest& request) const override {
    std::lock_guard lock(mu_);
    requests_.push_back(request);
    const auto it = replies_.find(request.stage);
    if (it == replies_.end()) throw Error(ErrorCode::kRemoteError, "no script");
    CompletionResponse response;
    response.text = it->second;
    return response;
  }
  DecodingParams decoding() const override { return {}; }
  std::map<std::string, std::string> Metadata() const override {
    return {{"backend", "scripted"}};
  }
  std::vector<CompletionRequest> requests() const {
    std::lock_guard lock(mu_);
    return requests_;
  }

 private:
  std::map<int, std::string> replies_;
  mutable std::mutex mu_;
  mutable std::vector<CompletionRequest> requests_;
};

// Mock backend that fails every request carrying one particular seed.
class FailingForSeed : public ChatBackend {
 public:
  FailingForSeed(MockBehavior behavior, uint64_t seed)
      : mock_(std::move(behavior)), seed_(seed) {}
  CompletionResponse Complete(const CompletionRequest& request) const override {
    if (request.seed == seed_) throw Error(ErrorCode::kExhaustedRetries, "down");
    return mock_.Complete(request);
  }
  DecodingParams decoding() const override { return {}; }
  std::map<std::string, std::string> Metadata() const override { return mock_.Metadata(); }

 private:
  MockBackend mock_;
  uint64_t seed_;
};

DialogueSpec Spec(uint64_t seed = 9) {
  return {"trust-moderate-0000", SocialDimension::kTrust, Stubbornness::kModerate, seed};
}

TEST(DialogueTest, FiveStagesWithFixedTexts) {
  ScriptedBackend backend({{2, "  Trust me.  "}, {3, "Not yet."}, {5, "Yes, fine."}});
  const PromptCatalog catalog = PromptCatalog::Default();
  const DialogueTranscript t = RunDialogue(backend, catalog, Spec());
  ASSERT_EQ(t.messages.size(), 5u);
  const Speaker expected[] = {Speaker::kSkeptic, Speaker::kConvincer, Speaker::kSkeptic,
                              Speaker::kConvincer, Speaker::kSkeptic};
  for (int i = 0; i < 5; ++i) {
    EXPECT_EQ(t.messages[i].stage, i + 1);
    EXPECT_EQ(t.messages[i].speaker, expected[i]);
  }
  EXPECT_EQ(t.messages[0].text, catalog.OpeningStatement());
  EXPECT_EQ(t.messages[1].text, "Trust me.");
  EXPECT_EQ(t.messages[3].text, catalog.ClosingQuestion());
  EXPECT_TRUE(t.Persuaded());
  EXPECT_EQ(t.outcome.reasoning, "fine.");
  EXPECT_EQ(t.Argument(), "Trust me.");
  EXPECT_EQ(t.backend_meta.at("catalog_version"), catalog.version());
  EXPECT_FALSE(t.backend_meta.contains("seed_echoed"));
}

TEST(DialogueTest, EachAgentSeesItsOwnPromptAndTheCumulativeLog) {
  ScriptedBackend backend({{2, "Arg"}, {3, "Push"}, {5, "No, still unsure."}});
  const PromptCatalog catalog = PromptCatalog::Default();
  const DialogueTranscript t = RunDialogue(backend, catalog, Spec(31));
  EXPECT_FALSE(t.Persuaded());
  EXPECT_TRUE(t.outcome_valid);
  const auto requests = backend.requests();
  ASSERT_EQ(requests.size(), 3u);
  for (const auto& r : requests) EXPECT_EQ(r.seed, 31u);
  const std::string convincer = BuildConvincerSystemPrompt(catalog, SocialDimension::kTrust);
  const std::string skeptic = BuildSkepticSystemPrompt(catalog, Stubbornness::kModerate);
  EXPECT_EQ(requests[0].prompt,
            RenderChatPrompt(convincer, {{TurnRole::kIncoming, catalog.OpeningStatement()}}));
  EXPECT_EQ(requests[2].prompt,
            RenderChatPrompt(skeptic, {{TurnRole::kOutgoing, catalog.OpeningStatement()},
                                       {TurnRole::kIncoming, "Arg"},
                                       {TurnRole::kOutgoing, "Push"},
                                       {TurnRole::kIncoming, catalog.ClosingQuestion()}}));
}

TEST(DialogueTest, AmbiguousOutcomeIsKeptButInvalid) {
  ScriptedBackend backend({{2, "Arg"}, {3, "Push"}, {5, "Maybe"}});
  const DialogueTranscript t = RunDialogue(backend, PromptCatalog::Default(), Spec());
  EXPECT_FALSE(t.outcome_valid);
  EXPECT_EQ(t.outcome.raw, "Maybe");
  EXPECT_FALSE(t.Persuaded());
}

TEST(DialogueTest, BackendErrorNamesTheStage) {
  ScriptedBackend backend({{2, "Arg"}, {5, "Yes"}});
  try {
    RunDialogue(backend, PromptCatalog::Default(), Spec());
    FAIL() << "expected BackendError";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kBackendError);
    EXPECT_NE(std::string(e.what()).find("stage 3"), std::string::npos) << e.what();
  }
}

TEST(DialogueTest, JsonLineRoundTrip) {
  ScriptedBackend backend({{2, "Arg \"quoted\"\nline"}, {3, "Push"}, {5, "Yes. Done"}});
  const DialogueTranscript t = RunDialogue(backend, PromptCatalog::Default(), Spec());
  const std::string line = TranscriptToJsonLine(t);
  EXPECT_EQ(line.find('\n'), std::string::npos);
  EXPECT_EQ(TranscriptFromJsonLine(line), t);
  const auto object = nlohmann::json::parse(line);
  for (const char* key : {"id", "dimension", "stubbornness", "seed", "messages", "outcome",
                          "backend_meta"}) {
    EXPECT_TRUE(object.contains(key)) << key;
  }
  EXPECT_EQ(object["outcome"]["valid"], true);
}

MockBehavior BehaviorWith(std::map<Stubbornness, double> levels) {
  MockBehavior behavior = MockBehavior::Default();
  for (const auto& [level, p] : levels) behavior.SetLevelProbability(level, p);
  return behavior;
}

ExperimentConfig Config(std::vector<SocialDimension> dimensions,
                        std::vector<Stubbornness> levels, int per_cell, uint64_t seed,
                        MockBehavior behavior = MockBehavior::Default()) {
  ExperimentConfig config;
  config.dimensions = std::move(dimensions);
  config.stubbornness_levels = std::move(levels);
  config.dialogues_per_cell = per_cell;
  config.experiment_seed = seed;
  config.backend = std::move(behavior);
  return config;
}

ExperimentRun RunMock(const ExperimentConfig& config, std::ostream* sink = nullptr) {
  const auto backend = MakeBackend(config);
  return RunExperiment(config, *backend, LoadCatalog(config), sink);
}

TEST(ExperimentTest, GridSizeAndIds) {
  const auto config =
      Config({SocialDimension::kTrust, SocialDimension::kFun}, {Stubbornness::kHard}, 10, 1);
  const ExperimentRun run = RunMock(config);
  ASSERT_EQ(run.transcripts.size(), 20u);
  EXPECT_EQ(run.transcripts.front().id, "trust-hard-0000");
  EXPECT_EQ(run.transcripts.back().id, "fun-hard-0009");
  std::set<uint64_t> seeds;
  for (const auto& t : run.transcripts) seeds.insert(t.seed);
  EXPECT_EQ(seeds.size(), 20u);
}

TEST(ExperimentTest, OutputIsIdenticalAcrossRunsAndParallelism) {
  auto config = Config({SocialDimension::kTrust, SocialDimension::kBaseline},
                       {Stubbornness::kSoft, Stubbornness::kHard}, 25, 77);
  std::ostringstream serial, parallel, again;
  RunMock(config, &serial);
  config.parallelism = 4;
  RunMock(config, &parallel);
  RunMock(config, &again);
  EXPECT_FALSE(serial.str().empty());
  EXPECT_EQ(serial.str(), parallel.str());
  EXPECT_EQ(parallel.str(), again.str());
}

TEST(ExperimentTest, CellsCanBeRerunIndependently) {
  const auto both = RunMock(Config({SocialDimension::kTrust, SocialDimension::kFun},
                                   {Stubbornness::kSoft}, 5, 3));
  const auto alone = RunMock(Config({SocialDimension::kFun}, {Stubbornness::kSoft}, 5, 3));
  ASSERT_EQ(alone.transcripts.size(), 5u);
  for (int i = 0; i < 5; ++i) EXPECT_EQ(alone.transcripts[i], both.transcripts[5 + i]);
}

TEST(ExperimentTest, BackendFailureDropsOnlyThatDialogue) {
  const auto config = Config({SocialDimension::kTrust}, {Stubbornness::kModerate}, 10, 5);
  const Cell cell{SocialDimension::kTrust, Stubbornness::kModerate};
  FailingForSeed backend(MockBehavior::Default(), DialogueSeed(5, cell, 3));
  std::ostringstream sink;
  const ExperimentRun run = RunExperiment(config, backend, LoadCatalog(config), &sink);
  EXPECT_EQ(run.transcripts.size(), 9u);
  ASSERT_EQ(run.failures.size(), 1u);
  EXPECT_EQ(run.failures[0].index, 3);
  const std::string lines = sink.str();
  EXPECT_EQ(std::count(lines.begin(), lines.end(), '\n'), 9);
}

TEST(ExperimentTest, ModerateBeatsHardForTrust) {
  MockBehavior behavior = MockBehavior::Default();
  behavior.persuasion_prob[{SocialDimension::kTrust, Stubbornness::kModerate}] = 0.55;
  behavior.persuasion_prob[{SocialDimension::kTrust, Stubbornness::kHard}] = 0.15;
  const auto run = RunMock(Config({SocialDimension::kTrust},
                                  {Stubbornness::kModerate, Stubbornness::kHard}, 100, 11,
                                  behavior));
  const auto estimates = EstimatePersuasion(run.transcripts);
  ASSERT_EQ(estimates.size(), 2u);
  EXPECT_GT(estimates[0].p_hat, estimates[1].p_hat);
}

// Nominal 95% Wilson intervals cover the configured probability in at least
// 90 of 100 independent seeded replications.
TEST(ExperimentTest, WilsonCoverageOverReplications) {
  const double p = 0.3;
  int covered = 0;
  for (uint64_t rep = 0; rep < 100; ++rep) {
    const auto run = RunMock(Config({SocialDimension::kFun}, {Stubbornness::kSoft}, 100,
                                    1000 + rep, BehaviorWith({{Stubbornness::kSoft, p}})));
    const auto e = EstimatePersuasion(run.transcripts).front();
    covered += (e.ci_low <= p && p <= e.ci_high) ? 1 : 0;
  }
  EXPECT_GE(covered, 90);
}

TEST(ExperimentTest, ConfigValidation) {
  auto config = Config({SocialDimension::kTrust}, {Stubbornness::kSoft}, 1, 1);
  EXPECT_NO_THROW(config.Validate());
  auto bad = config;
  bad.dimensions = {SocialDimension::kTrust, SocialDimension::kTrust};
  EXPECT_THROW(bad.Validate(), Error);
  bad = config;
  bad.dialogues_per_cell = 0;
  EXPECT_THROW(bad.Validate(), Error);
  bad = config;
  bad.experiment_seed.reset();
  EXPECT_THROW(bad.Validate(), Error);
  EXPECT_THROW(ExperimentConfig::FromJson(nlohmann::json{{"dimensions", {"charisma"}}}),
               Error);
}

TEST(ExperimentTest, ConfigFromJsonAppliesMockOverrides) {
  const auto config = ExperimentConfig::FromJson(nlohmann::json::parse(R"({
      "dimensions": ["trust"], "stubbornness_levels": ["soft"],
      "dialogues_per_cell": 3, "experiment_seed": 8,
      "backend": {"type": "mock", "persuasion_prob": {"trust": {"soft": 0.25}}}})"));
  const auto& behavior = std::get<MockBehavior>(config.backend);
  EXPECT_DOUBLE_EQ(behavior.persuasion_prob.at({SocialDimension::kTrust, Stubbornness::kSoft}),
                   0.25);
  EXPECT_EQ(config.experiment_seed, std::optional<uint64_t>(8));
}

// Hand-built transcript with a given argument and outcome.
DialogueTranscript Transcript(SocialDimension d, Stubbornness s, const std::string& argument,
                              bool valid, bool changed, const std::string& id = "x") {
  DialogueTranscript t;
  t.id = id;
  t.dimension = d;
  t.stubbornness = s;
  t.messages = {{Speaker::kSkeptic, 1, "Hoax"},
                {Speaker::kConvincer, 2, argument},
                {Speaker::kSkeptic, 3, "Hmm"},
                {Speaker::kConvincer, 4, "Q"},
                {Speaker::kSkeptic, 5, changed ? "Yes" : "No"}};
  t.outcome_valid = valid;
  t.outcome.changed = changed;
  return t;
}

std::vector<DialogueTranscript> Outcomes(int k, int n, int ambiguous = 0) {
  std::vector<DialogueTranscript> out;
  for (int i = 0; i < n; ++i) {
    out.push_back(Transcript(SocialDimension::kTrust, Stubbornness::kModerate, "a", true, i < k));
  }
  for (int i = 0; i < ambiguous; ++i) {
    out.push_back(Transcript(SocialDimension::kTrust, Stubbornness::kModerate, "a", false, false));
  }
  return out;
}

TEST(EstimateTest, PointEstimateAndWilson) {
  const auto e = EstimatePersuasion(Outcomes(52, 100)).front();
  EXPECT_EQ(e.n, 100);
  EXPECT_EQ(e.k, 52);
  EXPECT_DOUBLE_EQ(e.p_hat, 0.52);

  const auto half = EstimatePersuasion(Outcomes(50, 100)).front();
  const auto oracle = testing::WilsonOracle(50, 100);
  EXPECT_NEAR(half.ci_low, oracle.first, 1e-3);
  EXPECT_NEAR(half.ci_high, oracle.second, 1e-3);
  EXPECT_NEAR(half.ci_low, 0.404, 1e-3);
  EXPECT_NEAR(half.ci_high, 0.596, 1e-3);

  const auto zero = EstimatePersuasion(Outcomes(0, 100)).front();
  EXPECT_EQ(zero.p_hat, 0.0);
  EXPECT_EQ(zero.ci_low, 0.0);
}

TEST(EstimateTest, AmbiguousOutcomesReduceN) {
  const auto e = EstimatePersuasion(Outcomes(3, 10, 4)).front();
  EXPECT_EQ(e.n, 10);
  EXPECT_EQ(e.n_ambiguous, 4);
  EXPECT_THROW(EstimatePersuasion(Outcomes(0, 0, 2)), Error);
}

TEST(EstimateTest, EmptyGridCellIsAnError) {
  const std::vector<Cell> grid = {{SocialDimension::kTrust, Stubbornness::kModerate},
                                  {SocialDimension::kFun, Stubbornness::kModerate}};
  try {
    EstimatePersuasion(Outcomes(1, 2), grid);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyCell);
  }
}

TEST(EstimateTest, OrderAndIdIndependent) {
  auto transcripts = RunMock(Config({SocialDimension::kTrust, SocialDimension::kFun},
                                    {Stubbornness::kSoft, Stubbornness::kHard}, 20, 4))
                         .transcripts;
  const std::string expected = EstimatesCsv(EstimatePersuasion(transcripts));
  testing::OracleUniform uniform(1);
  for (int trial = 0; trial < 5; ++trial) {
    for (size_t i = transcripts.size() - 1; i > 0; --i) {
      std::swap(transcripts[i], transcripts[static_cast<size_t>(uniform() * (i + 1))]);
    }
    for (auto& t : transcripts) t.id = "relabeled-" + std::to_string(uniform());
    EXPECT_EQ(EstimatesCsv(EstimatePersuasion(transcripts)), expected);
  }
}

TEST(EstimateTest, CsvHeader) {
  const std::string csv = EstimatesCsv(EstimatePersuasion(Outcomes(1, 2)));
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "dimension,stubbornness,n,k,p_hat,ci_low,ci_high");
}

TEST(RelativeChangeTest, Examples) {
  PersuasionEstimate a, b;
  a.p_hat = 0.50;
  b.p_hat = 0.26;
  EXPECT_NEAR(RelativeChange(a, b), -0.48, 1e-12);
  a.p_hat = b.p_hat = 0.40;
  EXPECT_EQ(RelativeChange(a, b), 0.0);
  a.p_hat = 0.0;
  try {
    RelativeChange(a, b);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDivisionByZero);
  }
}

TEST(RelativeChangeTest, UnweightedMeanAcrossDimensions) {
  std::vector<PersuasionEstimate> estimates;
  auto add = [&](SocialDimension d, Stubbornness s, double p, int64_t n) {
    PersuasionEstimate e;
    e.dimension = d;
    e.stubbornness = s;
    e.p_hat = p;
    e.n = n;
    estimates.push_back(e);
  };
  add(SocialDimension::kTrust, Stubbornness::kSoft, 0.5, 100);
  add(SocialDimension::kTrust, Stubbornness::kModerate, 0.25, 100);
  add(SocialDimension::kFun, Stubbornness::kSoft, 0.4, 10);
  add(SocialDimension::kFun, Stubbornness::kModerate, 0.4, 10);
  const auto mean = MeanRelativeChange(estimates, Stubbornness::kSoft, Stubbornness::kModerate);
  ASSERT_TRUE(mean.has_value());
  EXPECT_NEAR(*mean, (-0.5 + 0.0) / 2.0, 1e-12);
  EXPECT_FALSE(MeanRelativeChange(estimates, Stubbornness::kSoft, Stubbornness::kHard));
}

std::string Words(int n) {
  std::string text;
  for (int i = 0; i < n; ++i) text += (i ? " w" : "w");
  return text;
}

TEST(LengthStatsTest, TwoSuccessfulArguments) {
  const auto rows = ArgumentLengthStats(
      {Transcript(SocialDimension::kFun, Stubbornness::kSoft, Words(10), true, true),
       Transcript(SocialDimension::kFun, Stubbornness::kSoft, Words(20), true, true)});
  ASSERT_EQ(rows.size(), 3u);
  const LengthRow& success = rows[1];
  EXPECT_EQ(success.stratum, Stratum::kSuccessful);
  EXPECT_EQ(success.n, 2);
  EXPECT_DOUBLE_EQ(*success.mean, 15.0);
  EXPECT_NEAR(*success.std, std::sqrt(50.0), 1e-12);  // 7.0711
  EXPECT_EQ(rows[2].n, 0);
  EXPECT_FALSE(rows[2].mean.has_value());
}

TEST(LengthStatsTest, SingleArgumentHasUndefinedStd) {
  const auto rows = ArgumentLengthStats(
      {Transcript(SocialDimension::kFun, Stubbornness::kSoft, Words(7), true, false)});
  EXPECT_EQ(rows[0].n, 1);
  EXPECT_FALSE(rows[0].std.has_value());
  const std::string csv = LengthStatsCsv(rows);
  EXPECT_NE(csv.find("std_undefined"), std::string::npos);
  EXPECT_NE(csv.find("undefined"), std::string::npos);
}

TEST(LengthStatsTest, EmptyGridCellAndStrataSum) {
  const std::vector<Cell> grid = {{SocialDimension::kFun, Stubbornness::kSoft},
                                  {SocialDimension::kFun, Stubbornness::kHard}};
  const auto transcripts =
      RunMock(Config({SocialDimension::kFun}, {Stubbornness::kSoft}, 30, 2)).transcripts;
  const auto rows = ArgumentLengthStats(transcripts, grid);
  ASSERT_EQ(rows.size(), 6u);
  EXPECT_EQ(rows[0].n, rows[1].n + rows[2].n);
  EXPECT_EQ(rows[0].n, 30);
  for (int i = 3; i < 6; ++i) EXPECT_EQ(rows[i].n, 0);
  EXPECT_EQ(WordCount("  one\ttwo\nthree  "), 3);
}

}  // namespace
}  // namespace persuasion
