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

#include "persuasion/cli/dispatch.h"

#include <algorithm>
#include <array>
#include <csignal>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include <pthread.h>

#include "CLI11.hpp"
#include "persuasion/annotation/http_api.h"
#include "persuasion/annotation/judgments.h"
#include "persuasion/annotation/service.h"
#include "persuasion/annotation/tasks.h"
#include "persuasion/csv.h"
#include "persuasion/error.h"
#include "persuasion/experiment.h"
#include "persuasion/seeding.h"
#include "persuasion/stats/agreement.h"
#include "persuasion/stats/bradley_terry.h"
#include "persuasion/stats/hypothesis.h"
#include "persuasion/stats/scores.h"

namespace persuasion::cli {
namespace {

constexpr char kStdout[] = "-";

constexpr char kSchemaFooter[] = R"(File formats:
  transcripts (JSON lines): {id, dimension, stubbornness, seed,
      messages: [{speaker, stage, text}], outcome: {changed, reasoning, valid},
      backend_meta}
  estimates CSV:  dimension,stubbornness,n,k,p_hat,ci_low,ci_high
  judgments CSV:  worker,pair,choice,order,timestamp,is_control,
                  first_dimension,second_dimension
      choice is left|right as displayed; order is original (first argument
      on the left) or swapped; second_dimension of a control task is "control"
  tally CSV:      winner,loser,wins (one row per ordered pair of entities)
  scores CSV:     argument_id,dimension,score,word_count
  embeddings CSV: argument_id,v0,...,v{D-1}

Exit codes: 0 success, 1 runtime failure, 2 usage error, 3 config error.)";

// Writes `contents` to `path`, or to `out` when the path is "-".
void Emit(const std::string& path, const std::string& contents, std::ostream& out) {
  if (path == kStdout) {
    out << contents;
  } else {
    csv::WriteFile(path, contents);
  }
}

uint64_t RandomSeed() {
  std::random_device device;
  const uint64_t high = device();
  return ((high << 32) | device()) & kWireSeedMask;
}

uint64_t ResolveSeed(const std::optional<uint64_t>& flag,
                     const std::optional<uint64_t>& configured, std::ostream& err) {
  if (flag) return *flag;
  if (configured) return *configured;
  const uint64_t seed = RandomSeed();
  err << "no --seed given; using random seed " << seed << "\n";
  return seed;
}

std::vector<std::string> Ids(const std::vector<SocialDimension>& dimensions) {
  std::vector<std::string> ids;
  for (SocialDimension d : dimensions) ids.emplace_back(DimensionId(d));
  return ids;
}

// ---- run ------------------------------------------------------------------

struct RunFlags {
  std::string config;
  bool mock = false;
  std::optional<uint64_t> seed;
  std::optional<std::string> transcripts;
  std::optional<std::string> estimates;
  std::optional<std::string> lengths;
  std::optional<int> parallelism;
  std::optional<int> dialogues;
};

int Run(const RunFlags& flags, std::ostream& out, std::ostream& err) {
  ExperimentConfig config = ExperimentConfig::FromFile(flags.config);
  if (flags.mock && !std::holds_alternative<MockBehavior>(config.backend)) {
    config.backend = MockBehavior::Default();
  }
  config.experiment_seed = ResolveSeed(flags.seed, config.experiment_seed, err);
  if (flags.transcripts) config.output_path = *flags.transcripts;
  if (flags.estimates) config.estimates_path = *flags.estimates;
  if (flags.parallelism) config.parallelism = *flags.parallelism;
  if (flags.dialogues) config.dialogues_per_cell = *flags.dialogues;
  config.Validate();

  const PromptCatalog catalog = LoadCatalog(config);
  const std::unique_ptr<ChatBackend> backend = MakeBackend(config);
  std::ofstream sink(config.output_path, std::ios::binary | std::ios::trunc);
  if (!sink) {
    throw Error(ErrorCode::kIoError, "cannot write " + config.output_path.string());
  }
  const ExperimentRun run = RunExperiment(config, *backend, catalog, &sink);
  sink.close();
  for (const DialogueFailure& failure : run.failures) {
    err << "dialogue " << DialogueId(failure.cell, failure.index)
        << " dropped: " << failure.message << "\n";
  }
  const auto estimates = EstimatePersuasion(run.transcripts, config.Grid());
  csv::WriteFile(config.estimates_path, EstimatesCsv(estimates));
  if (flags.lengths) {
    csv::WriteFile(*flags.lengths,
                   LengthStatsCsv(ArgumentLengthStats(run.transcripts, config.Grid())));
  }
  out << "experiment_seed " << *config.experiment_seed << "\n"
      << "dialogues " << run.transcripts.size() << " (ambiguous " << run.ambiguous
      << ", failed " << run.failures.size() << ")\n"
      << "transcripts " << config.output_path.string() << "\n"
      << "estimates " << config.estimates_path.string() << "\n";
  const std::pair<Stubbornness, Stubbornness> steps[] = {
      {Stubbornness::kSoft, Stubbornness::kModerate},
      {Stubbornness::kModerate, Stubbornness::kHard},
      {Stubbornness::kSoft, Stubbornness::kHard}};
  for (const auto& [from, to] : steps) {
    if (const auto change = MeanRelativeChange(estimates, from, to)) {
      out << "mean_relative_change " << StubbornnessId(from) << "->" << StubbornnessId(to)
          << " " << csv::FormatDouble(*change) << "\n";
    }
  }
  return run.transcripts.empty() ? kExitRuntimeFailure : kExitOk;
}

// ---- estimate / lengths ---------------------------------------------------

struct TranscriptFlags {
  std::string transcripts;
  std::string out = kStdout;
};

int Estimate(const TranscriptFlags& flags, std::ostream& out) {
  Emit(flags.out, EstimatesCsv(EstimatePersuasion(ReadTranscripts(flags.transcripts))),
       out);
  return kExitOk;
}

int Lengths(const TranscriptFlags& flags, std::ostream& out) {
  Emit(flags.out, LengthStatsCsv(ArgumentLengthStats(ReadTranscripts(flags.transcripts))),
       out);
  return kExitOk;
}

// ---- bt-fit ---------------------------------------------------------------

struct BtFlags {
  std::string tally;
  std::optional<double> threshold;
  bool no_gate = false;
  std::string strengths = kStdout;
  std::string matrix;
};

std::vector<annotation::Judgment> MaybeGate(std::vector<annotation::Judgment> judgments,
                                            bool no_gate, std::ostream& err) {
  if (no_gate) return judgments;
  const annotation::GateResult gate = annotation::GateWorkers(judgments);
  err << "gating kept " << gate.retained.size() << " of "
      << gate.retained.size() + gate.discarded.size() << " workers\n";
  return gate.retained_judgments;
}

std::string StrengthsCsv(const stats::BradleyTerryFit& fit) {
  std::string text = csv::FormatRow({"rank", "dimension", "strength", "tied"});
  const stats::Ranking ranking = stats::RankDimensions(fit);
  for (size_t i = 0; i < ranking.entries.size(); ++i) {
    const auto& entry = ranking.entries[i];
    text += csv::FormatRow({std::to_string(i + 1), std::string(DimensionId(entry.entity)),
                            csv::FormatDouble(entry.strength),
                            entry.tied ? "true" : "false"});
  }
  return text;
}

std::string MatrixCsv(const stats::BradleyTerryFit& fit) {
  std::vector<std::string> header{"dimension"};
  for (const std::string& id : Ids(fit.entities)) header.push_back(id);
  std::string text = csv::FormatRow(header);
  const auto matrix = stats::ProbabilityMatrix(fit);
  for (size_t i = 0; i < matrix.size(); ++i) {
    std::vector<std::string> row{std::string(DimensionId(fit.entities[i]))};
    for (double p : matrix[i]) row.push_back(csv::FormatDouble(p));
    text += csv::FormatRow(row);
  }
  return text;
}

int BtFit(const BtFlags& flags, std::ostream& out, std::ostream& err) {
  const csv::Table table = csv::ReadFile(flags.tally);
  stats::PairwiseTally tally;
  if (table.HasColumn("winner")) {
    if (flags.threshold) {
      err << "warning: --threshold ignored; " << flags.tally
          << " is an aggregated tally without per-pair votes\n";
    }
    tally = annotation::ParseTallyCsv(csv::Format(table));
  } else {
    auto judgments = MaybeGate(annotation::ParseJudgmentsCsv(csv::Format(table)),
                               flags.no_gate, err);
    tally = annotation::ExportTally(judgments, flags.threshold.value_or(0.0));
  }
  const stats::BradleyTerryFit fit = stats::FitBradleyTerry(tally);
  err << "iterations " << fit.iterations << (fit.converged ? " converged" : " not converged")
      << ", log-likelihood " << csv::FormatDouble(fit.log_likelihood) << "\n";
  Emit(flags.strengths, StrengthsCsv(fit), out);
  if (!flags.matrix.empty()) Emit(flags.matrix, MatrixCsv(fit), out);
  return fit.converged ? kExitOk : kExitRuntimeFailure;
}

// ---- kappa / sweep / export ----------------------------------------------

struct JudgmentFlags {
  std::string judgments;
  std::string out = kStdout;
  bool no_gate = false;
};

std::vector<std::string> KappaRow(const std::string& scope,
                                  const std::vector<annotation::Judgment>& judgments) {
  const annotation::KappaInput input = annotation::KappaRatings(judgments);
  try {
    const stats::KappaResult k = stats::FleissKappa(input.ratings);
    return {scope, std::to_string(k.n_items), std::to_string(k.n_raters_per_item),
            std::to_string(input.dropped_items), csv::FormatDouble(k.kappa), "ok"};
  } catch (const Error& e) {
    return {scope, std::to_string(input.ratings.size()), "", std::to_string(input.dropped_items),
            "", std::string(ErrorCodeName(e.code()))};
  }
}

int Kappa(const JudgmentFlags& flags, std::ostream& out) {
  const auto judgments = annotation::ReadJudgmentsCsv(flags.judgments);
  std::string text = csv::FormatRow(
      {"scope", "n_items", "raters_per_item", "dropped_items", "kappa", "status"});
  text += csv::FormatRow(KappaRow("all", judgments));
  text += csv::FormatRow(
      KappaRow("gated", annotation::GateWorkers(judgments).retained_judgments));
  Emit(flags.out, text, out);
  return kExitOk;
}

int Sweep(const JudgmentFlags& flags, std::ostream& out, std::ostream& err) {
  const auto judgments =
      MaybeGate(annotation::ReadJudgmentsCsv(flags.judgments), flags.no_gate, err);
  const auto votes = annotation::VotesByPair(judgments);
  const auto grid = stats::DefaultThresholdGrid();
  std::string text = csv::FormatRow({"threshold", "retained_pairs", "status", "rank",
                                     "dimension", "strength", "tied", "detail"});
  for (const stats::SweepPoint& point : stats::SensitivitySweep(votes, grid)) {
    const std::string t = csv::FormatDouble(point.threshold);
    const std::string kept = std::to_string(point.retained_pairs);
    if (!point.ranking) {
      text += csv::FormatRow(
          {t, kept, "DegenerateTally", "", "", "", "", point.degenerate_reason});
      continue;
    }
    for (size_t i = 0; i < point.ranking->entries.size(); ++i) {
      const auto& entry = point.ranking->entries[i];
      text += csv::FormatRow({t, kept, "ok", std::to_string(i + 1),
                              std::string(DimensionId(entry.entity)),
                              csv::FormatDouble(entry.strength),
                              entry.tied ? "true" : "false", ""});
    }
  }
  Emit(flags.out, text, out);
  return kExitOk;
}

struct ExportFlags {
  std::string log;
  double threshold = 0.0;
  bool no_gate = false;
  std::string tally = kStdout;
  std::string judgments;
  std::string workers;
};

int Export(const ExportFlags& flags, std::ostream& out, std::ostream& err) {
  const auto all = annotation::ReadJudgmentsCsv(flags.log);
  const annotation::GateResult gate = annotation::GateWorkers(all);
  const auto& used = flags.no_gate ? all : gate.retained_judgments;
  size_t controls = 0;
  for (const auto& j : used) controls += j.is_control ? 1 : 0;
  err << "judgments: " << all.size() << " logged, " << used.size() - controls
      << " non-control used, " << controls << " control excluded from the tally\n";
  Emit(flags.tally, annotation::TallyCsv(annotation::ExportTally(used, flags.threshold)),
       out);
  if (!flags.judgments.empty()) {
    Emit(flags.judgments, annotation::JudgmentsCsv(used), out);
  }
  if (!flags.workers.empty()) {
    std::string text = csv::FormatRow(
        {"worker", "pairs_completed", "controls_seen", "controls_failed", "retained"});
    std::vector<annotation::WorkerRecord> records = gate.retained;
    records.insert(records.end(), gate.discarded.begin(), gate.discarded.end());
    std::sort(records.begin(), records.end(),
              [](const auto& a, const auto& b) { return a.worker_id < b.worker_id; });
    for (const auto& r : records) {
      text += csv::FormatRow({r.worker_id, std::to_string(r.pairs_completed),
                              std::to_string(r.controls_seen),
                              std::to_string(r.controls_failed),
                              r.retained ? "true" : "false"});
    }
    Emit(flags.workers, text, out);
  }
  return kExitOk;
}

// ---- ttest / similarity / odds -------------------------------------------

struct TtestFlags {
  std::string scores;
  std::string transcripts;
  std::string policy = std::string(stats::kDefaultDiscount);
  std::string out = kStdout;
};

int Ttest(const TtestFlags& flags, std::ostream& out) {
  const stats::DimensionScoreSet scores = stats::ReadScoresCsv(flags.scores, flags.policy);
  std::map<std::string, SocialDimension> strategy_of;
  for (const DialogueTranscript& t : ReadTranscripts(flags.transcripts)) {
    strategy_of[t.id] = t.dimension;
  }
  std::string text = csv::FormatRow({"dimension", "n_dimension", "n_baseline",
                                     "mean_dimension", "mean_baseline", "t", "df",
                                     "p_two_sided", "discount_policy"});
  for (const stats::ExpressionTest& test :
       stats::DimensionExpressionTests(scores, strategy_of)) {
    text += csv::FormatRow(
        {std::string(DimensionId(test.dimension)), std::to_string(test.n_dimension),
         std::to_string(test.n_baseline), csv::FormatDouble(test.mean_dimension),
         csv::FormatDouble(test.mean_baseline), csv::FormatDouble(test.welch.t),
         csv::FormatDouble(test.welch.df), csv::FormatDouble(test.welch.p_two_sided),
         scores.discount_policy});
  }
  Emit(flags.out, text, out);
  return kExitOk;
}

int Similarity(const std::string& a, const std::string& b, std::ostream& out) {
  out << csv::FormatDouble(
             stats::MeanCosineSimilarity(stats::ReadEmbeddingsCsv(a),
                                         stats::ReadEmbeddingsCsv(b)))
      << "\n";
  return kExitOk;
}

int Odds(const std::array<int64_t, 4>& cells, std::ostream& out) {
  const stats::OddsRatioResult r = stats::OddsRatio(cells[0], cells[1], cells[2], cells[3]);
  out << csv::FormatRow({"odds_ratio", "corrected"})
      << csv::FormatRow({csv::FormatDouble(r.value), r.corrected ? "true" : "false"});
  return kExitOk;
}

// ---- sample-pairs / serve -------------------------------------------------

struct SampleFlags {
  std::string transcripts;
  int per_pair = 5;
  std::vector<std::string> exclude;
  double control_fraction = 0.1;
  std::string controls;
  std::optional<uint64_t> seed;
  int redundancy = annotation::kDefaultRedundancy;
  std::string out = "tasks.json";
};

int SamplePairs(const SampleFlags& flags, std::ostream& out, std::ostream& err) {
  std::set<SocialDimension> excluded;
  for (const std::string& id : flags.exclude) excluded.insert(DimensionFromId(id));
  const uint64_t seed = ResolveSeed(flags.seed, std::nullopt, err);
  auto arguments = annotation::ArgumentsFromTranscripts(ReadTranscripts(flags.transcripts));
  auto pairs =
      annotation::SamplePairs(arguments, flags.per_pair, excluded, seed, flags.redundancy);
  const size_t sampled = pairs.size();
  const auto corpus = annotation::LoadControlCorpus(
      flags.controls.empty() ? annotation::DefaultControlCorpusPath()
                             : std::filesystem::path(flags.controls));
  if (flags.control_fraction > 0.0) {
    pairs = annotation::InjectControls(std::move(pairs), flags.control_fraction, corpus,
                                       arguments, DeriveSeed(seed, {1}));
    for (auto& pair : pairs) pair.target_redundancy = flags.redundancy;
  }
  annotation::TaskSet tasks;
  tasks.seed = seed;
  tasks.arguments = std::move(arguments);
  tasks.arguments.insert(tasks.arguments.end(), corpus.begin(), corpus.end());
  tasks.pairs = std::move(pairs);
  tasks.Save(flags.out);
  out << "seed " << seed << "\n"
      << "pairs " << sampled << " + controls " << tasks.pairs.size() - sampled << "\n"
      << "tasks " << flags.out << "\n";
  return kExitOk;
}

struct ServeFlags {
  std::string tasks;
  std::string log = "judgments.csv";
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string static_dir;
};

int Serve(const ServeFlags& flags, std::ostream& out) {
  annotation::ServiceOptions options;
  options.log_path = flags.log;
  annotation::AnnotationService service(annotation::TaskSet::Load(flags.tasks), options);
  annotation::HttpApiOptions http_options;
  if (!flags.static_dir.empty()) http_options.static_dir = flags.static_dir;
  annotation::AnnotationHttpServer server(service, http_options);

  // Block the stop signals here so the listener threads inherit the mask and
  // only this thread receives them.
  sigset_t stop_signals;
  sigemptyset(&stop_signals);
  sigaddset(&stop_signals, SIGINT);
  sigaddset(&stop_signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &stop_signals, nullptr);

  const int port = flags.port == 0 ? server.BindToAnyPort(flags.host)
                                   : server.Bind(flags.host, flags.port);
  out << "serving " << service.tasks().pairs.size() << " pairs on http://" << flags.host
      << ":" << port << " (log " << flags.log << ")" << std::endl;
  std::thread listener([&server] { server.ListenAfterBind(); });
  int received = 0;
  sigwait(&stop_signals, &received);
  server.Stop();
  listener.join();
  pthread_sigmask(SIG_UNBLOCK, &stop_signals, nullptr);
  out << "stopped after " << service.Judgments().size() << " judgments\n";
  return kExitOk;
}

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kConfigError:
      return kExitConfigError;
    case ErrorCode::kInvalidArgument:
      return kExitUsageError;
    default:
      return kExitRuntimeFailure;
  }
}

}  // namespace

int Dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Persuasion dialogue harness and annotation analysis", "persuade"};
  app.footer(kSchemaFooter);
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  RunFlags run;
  auto* run_cmd = app.add_subcommand("run", "Run the dialogue experiment grid");
  run_cmd->add_option("--config", run.config, "Experiment config (JSON)")
      ->required()
      ->check(CLI::ExistingFile);
  run_cmd->add_flag("--mock", run.mock, "Use the offline mock backend");
  run_cmd->add_option("--seed", run.seed, "Experiment seed (random and printed if absent)");
  run_cmd->add_option("--transcripts", run.transcripts, "Transcript JSONL output");
  run_cmd->add_option("--estimates", run.estimates, "Estimates CSV output");
  run_cmd->add_option("--lengths", run.lengths, "Argument length CSV output");
  run_cmd->add_option("--parallelism", run.parallelism, "Worker threads");
  run_cmd->add_option("--dialogues", run.dialogues, "Dialogues per cell");

  TranscriptFlags estimate;
  auto* estimate_cmd =
      app.add_subcommand("estimate", "Persuasion probabilities with Wilson intervals");
  estimate_cmd->add_option("--transcripts", estimate.transcripts)
      ->required()
      ->check(CLI::ExistingFile);
  estimate_cmd->add_option("--out", estimate.out, "Output CSV ('-' for stdout)");

  TranscriptFlags lengths;
  auto* lengths_cmd =
      app.add_subcommand("lengths", "Argument word counts by cell and outcome");
  lengths_cmd->add_option("--transcripts", lengths.transcripts)
      ->required()
      ->check(CLI::ExistingFile);
  lengths_cmd->add_option("--out", lengths.out, "Output CSV ('-' for stdout)");

  BtFlags bt;
  auto* bt_cmd = app.add_subcommand("bt-fit", "Fit Bradley-Terry strengths");
  bt_cmd->add_option("--tally", bt.tally, "Tally CSV or judgments CSV")
      ->required()
      ->check(CLI::ExistingFile);
  bt_cmd->add_option("--threshold", bt.threshold, "Agreement threshold (judgments only)")
      ->check(CLI::Range(0.0, 1.0));
  bt_cmd->add_flag("--no-gate", bt.no_gate, "Skip worker gating (judgments only)");
  bt_cmd->add_option("--strengths", bt.strengths, "Strengths CSV ('-' for stdout)");
  bt_cmd->add_option("--matrix", bt.matrix, "Pairwise probability matrix CSV");

  JudgmentFlags kappa;
  auto* kappa_cmd =
      app.add_subcommand("kappa", "Fleiss kappa over all and over gated judgments");
  kappa_cmd->add_option("--judgments", kappa.judgments)->required()->check(CLI::ExistingFile);
  kappa_cmd->add_option("--out", kappa.out, "Output CSV ('-' for stdout)");

  JudgmentFlags sweep;
  auto* sweep_cmd =
      app.add_subcommand("sweep", "Rankings at agreement thresholds 0.50 to 0.90");
  sweep_cmd->add_option("--judgments", sweep.judgments)->required()->check(CLI::ExistingFile);
  sweep_cmd->add_flag("--no-gate", sweep.no_gate, "Skip worker gating");
  sweep_cmd->add_option("--out", sweep.out, "Output CSV ('-' for stdout)");

  TtestFlags ttest;
  auto* ttest_cmd = app.add_subcommand(
      "ttest", "Welch t-tests of discounted dimension scores against baseline");
  ttest_cmd->add_option("--scores", ttest.scores)->required()->check(CLI::ExistingFile);
  ttest_cmd->add_option("--transcripts", ttest.transcripts,
                        "Transcripts giving each argument's generating strategy")
      ->required()
      ->check(CLI::ExistingFile);
  ttest_cmd->add_option("--policy", ttest.policy, "Length discount: log1p, per_word, none");
  ttest_cmd->add_option("--out", ttest.out, "Output CSV ('-' for stdout)");

  std::string embeddings_a, embeddings_b;
  auto* similarity_cmd =
      app.add_subcommand("similarity", "Mean cosine similarity between two embedding sets");
  similarity_cmd->add_option("--a", embeddings_a)->required()->check(CLI::ExistingFile);
  similarity_cmd->add_option("--b", embeddings_b)->required()->check(CLI::ExistingFile);

  std::array<int64_t, 4> odds{};
  auto* odds_cmd = app.add_subcommand("odds", "Odds ratio (a/b)/(c/d)");
  odds_cmd->add_option("--a", odds[0], "Successes with the dimension")->required();
  odds_cmd->add_option("--b", odds[1], "Successes without")->required();
  odds_cmd->add_option("--c", odds[2], "Failures with the dimension")->required();
  odds_cmd->add_option("--d", odds[3], "Failures without")->required();

  SampleFlags sample;
  auto* sample_cmd = app.add_subcommand("sample-pairs", "Build the annotation task set");
  sample_cmd->add_option("--transcripts", sample.transcripts)
      ->required()
      ->check(CLI::ExistingFile);
  sample_cmd->add_option("--per-pair", sample.per_pair, "Pairs per dimension pair");
  sample_cmd->add_option("--exclude", sample.exclude, "Dimensions left out");
  sample_cmd->add_option("--control-fraction", sample.control_fraction)
      ->check(CLI::Range(0.0, 1.0));
  sample_cmd->add_option("--controls", sample.controls, "Control corpus JSON");
  sample_cmd->add_option("--seed", sample.seed, "Sampling seed (random and printed if absent)");
  sample_cmd->add_option("--redundancy", sample.redundancy, "Judgments per pair");
  sample_cmd->add_option("--out", sample.out, "Task set JSON");

  ServeFlags serve;
  auto* serve_cmd = app.add_subcommand("serve", "Serve annotation tasks over HTTP");
  serve_cmd->add_option("--tasks", serve.tasks)->required()->check(CLI::ExistingFile);
  serve_cmd->add_option("--log", serve.log, "Judgment log CSV (appended)");
  serve_cmd->add_option("--host", serve.host);
  serve_cmd->add_option("--port", serve.port, "0 picks a free port");
  serve_cmd->add_option("--static", serve.static_dir, "Front-end files served at /");

  ExportFlags export_flags;
  auto* export_cmd =
      app.add_subcommand("export", "Gate workers and export the tally from a judgment log");
  export_cmd->add_option("--log", export_flags.log)->required()->check(CLI::ExistingFile);
  export_cmd->add_option("--threshold", export_flags.threshold)->check(CLI::Range(0.0, 1.0));
  export_cmd->add_flag("--no-gate", export_flags.no_gate, "Skip worker gating");
  export_cmd->add_option("--tally", export_flags.tally, "Tally CSV ('-' for stdout)");
  export_cmd->add_option("--judgments", export_flags.judgments, "Used judgments CSV");
  export_cmd->add_option("--workers", export_flags.workers, "Worker records CSV");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    if (!app.get_subcommands().empty()) {
      err << app.get_subcommands().front()->help();
    } else {
      err << "run 'persuade --help' for the list of commands\n";
    }
    return kExitUsageError;
  }

  try {
    if (*run_cmd) return Run(run, out, err);
    if (*estimate_cmd) return Estimate(estimate, out);
    if (*lengths_cmd) return Lengths(lengths, out);
    if (*bt_cmd) return BtFit(bt, out, err);
    if (*kappa_cmd) return Kappa(kappa, out);
    if (*sweep_cmd) return Sweep(sweep, out, err);
    if (*ttest_cmd) return Ttest(ttest, out);
    if (*similarity_cmd) return Similarity(embeddings_a, embeddings_b, out);
    if (*odds_cmd) return Odds(odds, out);
    if (*sample_cmd) return SamplePairs(sample, out, err);
    if (*serve_cmd) return Serve(serve, out);
    if (*export_cmd) return Export(export_flags, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return ExitCodeFor(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntimeFailure;
  }
  return kExitUsageError;
}

}  // namespace persuasion::cli
