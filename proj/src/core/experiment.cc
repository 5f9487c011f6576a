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

#include "persuasion/experiment.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "persuasion/csv.h"
#include "persuasion/error.h"
#include "persuasion/seeding.h"
#include "persuasion/stats/intervals.h"

namespace persuasion {
namespace {

using nlohmann::json;

std::filesystem::path Resolve(const std::filesystem::path& base,
                              const std::filesystem::path& p) {
  if (p.empty() || p.is_absolute() || base.empty()) return p;
  return base / p;
}

template <typename T>
bool HasDuplicates(const std::vector<T>& items) {
  return std::set<T>(items.begin(), items.end()).size() != items.size();
}

MockBehavior MockFromJson(const json& object, const std::filesystem::path& base_dir) {
  MockBehavior behavior =
      object.contains("behavior_file")
          ? MockBehavior::FromFile(
                Resolve(base_dir, object["behavior_file"].get<std::string>()))
          : MockBehavior::Default();
  behavior.MergeProbabilities(object);
  behavior.Validate();
  return behavior;
}

std::string Cell2String(const Cell& cell) {
  return std::string(DimensionId(cell.first)) + "/" +
         std::string(StubbornnessId(cell.second));
}

}  // namespace

void ExperimentConfig::Validate() const {
  auto bad = [](const std::string& what) {
    return Error(ErrorCode::kConfigError, "experiment: " + what);
  };
  if (dimensions.empty()) throw bad("dimensions must be non-empty");
  if (HasDuplicates(dimensions)) throw bad("dimensions contain duplicates");
  if (stubbornness_levels.empty()) throw bad("stubbornness_levels must be non-empty");
  if (HasDuplicates(stubbornness_levels)) throw bad("stubbornness_levels contain duplicates");
  if (dialogues_per_cell < 1) throw bad("dialogues_per_cell must be >= 1");
  if (parallelism < 1) throw bad("parallelism must be >= 1");
  if (!experiment_seed) throw bad("experiment_seed is not set");
  if (output_path.empty()) throw bad("output_path is empty");
  if (const auto* mock = std::get_if<MockBehavior>(&backend)) {
    mock->Validate();
    for (const Cell& cell : Grid()) {
      if (!mock->persuasion_prob.contains(cell)) {
        throw bad("mock backend has no persuasion probability for " + Cell2String(cell));
      }
    }
  } else {
    std::get<BackendConfig>(backend).Validate();
  }
}

ExperimentConfig ExperimentConfig::FromJson(const json& object,
                                            const std::filesystem::path& base_dir) {
  ExperimentConfig config;
  try {
    if (!object.is_object()) throw Error(ErrorCode::kConfigError, "config must be an object");
    if (object.contains("dimensions")) {
      for (const auto& d : object["dimensions"]) {
        config.dimensions.push_back(DimensionFromId(d.get<std::string>()));
      }
    } else {
      config.dimensions.assign(kAllDimensions.begin(), kAllDimensions.end());
    }
    if (object.contains("stubbornness_levels")) {
      for (const auto& s : object["stubbornness_levels"]) {
        config.stubbornness_levels.push_back(StubbornnessFromId(s.get<std::string>()));
      }
    } else {
      config.stubbornness_levels.assign(kAllStubbornness.begin(), kAllStubbornness.end());
    }
    config.dialogues_per_cell = object.value("dialogues_per_cell", config.dialogues_per_cell);
    if (object.contains("experiment_seed")) {
      config.experiment_seed = object["experiment_seed"].get<uint64_t>();
    }
    config.parallelism = object.value("parallelism", config.parallelism);
    if (object.contains("output_path")) {
      config.output_path = Resolve(base_dir, object["output_path"].get<std::string>());
    }
    if (object.contains("estimates_path")) {
      config.estimates_path = Resolve(base_dir, object["estimates_path"].get<std::string>());
    }
    if (object.contains("catalog_path")) {
      config.catalog_path = Resolve(base_dir, object["catalog_path"].get<std::string>());
    }
    if (object.contains("topic")) config.topic = object["topic"].get<std::string>();

    const json backend = object.value("backend", json{{"type", "mock"}});
    const std::string type = backend.value("type", "mock");
    if (type == "mock") {
      config.backend = MockFromJson(backend, base_dir);
    } else if (type == "http") {
      config.backend = BackendConfig::FromJson(backend);
    } else {
      throw Error(ErrorCode::kConfigError, "unknown backend type '" + type + "'");
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kConfigError, std::string("experiment config: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kConfigError) throw;
    throw Error(ErrorCode::kConfigError, e.what());
  }
  return config;
}

ExperimentConfig ExperimentConfig::FromFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kConfigError, "cannot open config " + path.string());
  json object;
  try {
    object = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kConfigError, path.string() + ": " + e.what());
  }
  return FromJson(object, path.parent_path());
}

std::vector<Cell> ExperimentConfig::Grid() const {
  std::vector<Cell> grid;
  for (SocialDimension d : dimensions) {
    for (Stubbornness s : stubbornness_levels) grid.emplace_back(d, s);
  }
  return grid;
}

std::unique_ptr<ChatBackend> MakeBackend(const ExperimentConfig& config) {
  if (const auto* mock = std::get_if<MockBehavior>(&config.backend)) {
    return std::make_unique<MockBackend>(*mock);
  }
  BackendConfig http = std::get<BackendConfig>(config.backend);
  http.ApplyEnvironmentOverrides();
  return std::make_unique<HttpChatBackend>(std::move(http));
}

PromptCatalog LoadCatalog(const ExperimentConfig& config) {
  PromptCatalog catalog = config.catalog_path.empty()
                              ? PromptCatalog::Default()
                              : PromptCatalog::FromFile(config.catalog_path);
  if (config.topic) catalog.set_topic(*config.topic);
  return catalog;
}

uint64_t DialogueSeed(uint64_t experiment_seed, const Cell& cell, int index) {
  return DeriveSeed(experiment_seed,
                    {static_cast<uint64_t>(cell.first),
                     static_cast<uint64_t>(cell.second),
                     static_cast<uint64_t>(index)}) &
         kWireSeedMask;
}

std::string DialogueId(const Cell& cell, int index) {
  char suffix[16];
  std::snprintf(suffix, sizeof(suffix), "%04d", index);
  return std::string(DimensionId(cell.first)) + "-" +
         std::string(StubbornnessId(cell.second)) + "-" + suffix;
}

ExperimentRun RunExperiment(const ExperimentConfig& config,
                            const ChatBackend& backend,
                            const PromptCatalog& catalog, std::ostream* sink) {
  config.Validate();
  const std::vector<Cell> grid = config.Grid();
  const size_t per_cell = static_cast<size_t>(config.dialogues_per_cell);
  const size_t total = grid.size() * per_cell;

  std::vector<std::optional<DialogueTranscript>> results(total);
  std::vector<std::string> errors(total);
  std::vector<bool> finished(total, false);
  size_t next_to_write = 0;
  std::mutex writer_mutex;
  std::atomic<size_t> next_job{0};

  auto worker = [&]() {
    for (size_t job = next_job++; job < total; job = next_job++) {
      const Cell& cell = grid[job / per_cell];
      const int index = static_cast<int>(job % per_cell);
      DialogueSpec spec{DialogueId(cell, index), cell.first, cell.second,
                        DialogueSeed(*config.experiment_seed, cell, index)};
      std::optional<DialogueTranscript> transcript;
      std::string error;
      try {
        transcript = RunDialogue(backend, catalog, spec);
        transcript->backend_meta["experiment_seed"] =
            std::to_string(*config.experiment_seed);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kBackendError) throw;
        error = e.what();
      }
      std::lock_guard<std::mutex> lock(writer_mutex);
      results[job] = std::move(transcript);
      errors[job] = std::move(error);
      finished[job] = true;
      for (; next_to_write < total && finished[next_to_write]; ++next_to_write) {
        if (sink && results[next_to_write]) {
          *sink << TranscriptToJsonLine(*results[next_to_write]) << '\n';
          sink->flush();
        }
      }
    }
  };

  const int threads = std::min<int>(config.parallelism, static_cast<int>(total));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    std::exception_ptr first_error;
    std::mutex error_mutex;
    for (int i = 0; i < threads; ++i) {
      pool.emplace_back([&]() {
        try {
          worker();
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          next_job = total;  // stop handing out work
        }
      });
    }
    pool.clear();
    if (first_error) std::rethrow_exception(first_error);
  }

  ExperimentRun run;
  for (size_t job = 0; job < total; ++job) {
    if (results[job]) {
      if (!results[job]->outcome_valid) ++run.ambiguous;
      run.transcripts.push_back(std::move(*results[job]));
    } else {
      run.failures.push_back({grid[job / per_cell], static_cast<int>(job % per_cell),
                              errors[job]});
    }
  }
  return run;
}

std::vector<PersuasionEstimate> EstimatePersuasion(
    const std::vector<DialogueTranscript>& transcripts,
    const std::optional<std::vector<Cell>>& grid) {
  std::map<Cell, PersuasionEstimate> cells;
  if (grid) {
    for (const Cell& cell : *grid) cells[cell] = {cell.first, cell.second};
  }
  for (const DialogueTranscript& t : transcripts) {
    const Cell cell{t.dimension, t.stubbornness};
    auto it = cells.find(cell);
    if (it == cells.end()) {
      if (grid) continue;
      it = cells.emplace(cell, PersuasionEstimate{cell.first, cell.second}).first;
    }
    if (!t.outcome_valid) {
      ++it->second.n_ambiguous;
      continue;
    }
    ++it->second.n;
    if (t.outcome.changed) ++it->second.k;
  }

  std::vector<PersuasionEstimate> estimates;
  for (auto& [cell, e] : cells) {
    if (e.n == 0) {
      throw Error(ErrorCode::kEmptyCell, "no valid outcomes for " + Cell2String(cell));
    }
    e.p_hat = static_cast<double>(e.k) / static_cast<double>(e.n);
    const stats::Interval ci = stats::WilsonInterval(e.k, e.n);
    e.ci_low = ci.low;
    e.ci_high = ci.high;
    estimates.push_back(e);
  }
  return estimates;
}

double RelativeChange(const PersuasionEstimate& a, const PersuasionEstimate& b) {
  if (a.p_hat == 0.0) {
    throw Error(ErrorCode::kDivisionByZero, "relative change from a zero probability");
  }
  return (b.p_hat - a.p_hat) / a.p_hat;
}

std::optional<double> MeanRelativeChange(
    const std::vector<PersuasionEstimate>& estimates, Stubbornness from,
    Stubbornness to) {
  std::map<SocialDimension, const PersuasionEstimate*> at_from, at_to;
  for (const auto& e : estimates) {
    if (e.stubbornness == from) at_from[e.dimension] = &e;
    if (e.stubbornness == to) at_to[e.dimension] = &e;
  }
  double sum = 0.0;
  int count = 0;
  for (const auto& [d, a] : at_from) {
    auto it = at_to.find(d);
    if (it == at_to.end() || a->p_hat == 0.0) continue;
    sum += RelativeChange(*a, *it->second);
    ++count;
  }
  if (count == 0) return std::nullopt;
  return sum / count;
}

std::string_view StratumId(Stratum stratum) {
  switch (stratum) {
    case Stratum::kAll: return "all";
    case Stratum::kSuccessful: return "successful";
    case Stratum::kUnsuccessful: return "unsuccessful";
  }
  return "";
}

int64_t WordCount(std::string_view text) {
  int64_t count = 0;
  bool in_word = false;
  for (char c : text) {
    const bool space = std::isspace(static_cast<unsigned char>(c)) != 0;
    if (!space && !in_word) ++count;
    in_word = !space;
  }
  return count;
}

std::vector<LengthRow> ArgumentLengthStats(
    const std::vector<DialogueTranscript>& transcripts,
    const std::optional<std::vector<Cell>>& grid) {
  // Word counts per cell and stratum.
  std::map<Cell, std::array<std::vector<double>, 3>> samples;
  if (grid) {
    for (const Cell& cell : *grid) samples[cell];
  }
  for (const DialogueTranscript& t : transcripts) {
    const Cell cell{t.dimension, t.stubbornness};
    if (grid && !samples.contains(cell)) continue;
    auto& strata = samples[cell];
    if (!t.outcome_valid) continue;
    const double words = static_cast<double>(WordCount(t.Argument()));
    strata[0].push_back(words);
    strata[t.outcome.changed ? 1 : 2].push_back(words);
  }

  std::vector<LengthRow> rows;
  for (const auto& [cell, strata] : samples) {
    for (int s = 0; s < 3; ++s) {
      const std::vector<double>& x = strata[s];
      LengthRow row{cell.first, cell.second, static_cast<Stratum>(s),
                    static_cast<int64_t>(x.size()), std::nullopt, std::nullopt};
      if (!x.empty()) {
        double sum = 0.0;
        for (double v : x) sum += v;
        const double mean = sum / static_cast<double>(x.size());
        row.mean = mean;
        if (x.size() >= 2) {
          double ss = 0.0;
          for (double v : x) ss += (v - mean) * (v - mean);
          row.std = std::sqrt(ss / static_cast<double>(x.size() - 1));
        }
      }
      rows.push_back(row);
    }
  }
  return rows;
}

std::string EstimatesCsv(const std::vector<PersuasionEstimate>& estimates) {
  std::string out = csv::FormatRow(
      {"dimension", "stubbornness", "n", "k", "p_hat", "ci_low", "ci_high"});
  for (const auto& e : estimates) {
    out += csv::FormatRow({std::string(DimensionId(e.dimension)),
                           std::string(StubbornnessId(e.stubbornness)),
                           std::to_string(e.n), std::to_string(e.k),
                           csv::FormatDouble(e.p_hat), csv::FormatDouble(e.ci_low),
                           csv::FormatDouble(e.ci_high)});
  }
  return out;
}

std::string LengthStatsCsv(const std::vector<LengthRow>& rows) {
  std::string out = csv::FormatRow({"dimension", "stubbornness", "stratum", "n",
                                    "mean_words", "std_words", "moments"});
  for (const auto& r : rows) {
    const char* moments = r.n == 0 ? "undefined" : (r.std ? "defined" : "std_undefined");
    out += csv::FormatRow({std::string(DimensionId(r.dimension)),
                           std::string(StubbornnessId(r.stubbornness)),
                           std::string(StratumId(r.stratum)), std::to_string(r.n),
                           r.mean ? csv::FormatDouble(*r.mean) : "",
                           r.std ? csv::FormatDouble(*r.std) : "", moments});
  }
  return out;
}

}  // namespace persuasion
