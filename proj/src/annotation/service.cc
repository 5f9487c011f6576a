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

#include "persuasion/annotation/service.h"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <tuple>

#include "persuasion/error.h"
#include "persuasion/seeding.h"

namespace persuasion::annotation {
namespace {

constexpr uint64_t kImageSalt = 0x696d616765ULL;

int64_t SystemMillis() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

// The k-th serve of a pair shows the stored first argument on the left
// with probability 1/2, independently of every other serve.
Placement PlacementFor(uint64_t placement_seed, uint64_t serve_count) {
  return (DeriveSeed(placement_seed, {serve_count}) & 1) == 0 ? Placement::kOriginal
                                                               : Placement::kSwapped;
}

}  // namespace

AnnotationService::AnnotationService(TaskSet tasks, ServiceOptions options)
    : tasks_(std::move(tasks)), options_(std::move(options)) {
  for (size_t i = 0; i < tasks_.pairs.size(); ++i) {
    const PairTask& pair = tasks_.pairs[i];
    if (!pair_index_.emplace(pair.id, i).second) {
      throw Error(ErrorCode::kInvalidArgument, "duplicate pair id " + pair.id);
    }
    for (const std::string* argument : {&pair.first, &pair.second}) {
      tasks_.Argument(*argument);  // throws on a dangling reference
      image_argument_.emplace(ImageRef(*argument), *argument);
    }
  }
  judgment_counts_.assign(tasks_.pairs.size(), 0);
  in_flight_.assign(tasks_.pairs.size(), 0);
  serve_counts_.assign(tasks_.pairs.size(), 0);
  if (options_.log_path && std::filesystem::exists(*options_.log_path)) {
    Replay(*options_.log_path);
  }
}

std::string AnnotationService::ImageRef(const std::string& argument_id) const {
  return "/images/" +
         Hex64(DeriveSeed(tasks_.seed, {kImageSalt, HashString(argument_id)})) + ".png";
}

int64_t AnnotationService::Now() const {
  return options_.clock ? options_.clock() : SystemMillis();
}

void AnnotationService::Replay(const std::filesystem::path& path) {
  std::ifstream probe(path);
  std::string first_line;
  if (!std::getline(probe, first_line)) return;  // empty file
  for (const Judgment& j : ReadJudgmentsCsv(path)) {
    const auto it = pair_index_.find(j.pair_id);
    if (it == pair_index_.end()) {
      throw Error(ErrorCode::kUnknownPair,
                  "judgment log refers to pair " + j.pair_id + " not in the task set");
    }
    WorkerState& worker = workers_[j.worker_id];
    if (worker.judged.contains(it->second)) {
      throw Error(ErrorCode::kDuplicateJudgment,
                  "judgment log repeats " + j.worker_id + " on " + j.pair_id);
    }
    Apply(j, it->second);
    ++serve_counts_[it->second];
  }
}

void AnnotationService::Apply(const Judgment& judgment, size_t pair_index) {
  workers_[judgment.worker_id].judged.insert(pair_index);
  ++judgment_counts_[pair_index];
  judgments_.push_back(judgment);
}

void AnnotationService::AppendToLog(const Judgment& judgment) {
  if (!options_.log_path) return;
  const bool fresh = !std::filesystem::exists(*options_.log_path) ||
                     std::filesystem::file_size(*options_.log_path) == 0;
  std::ofstream out(*options_.log_path, std::ios::app | std::ios::binary);
  if (fresh) out << JudgmentsCsvHeader();
  out << JudgmentCsvRow(judgment);
  out.flush();
  if (!out) {
    throw Error(ErrorCode::kIoError,
                "cannot append to judgment log " + options_.log_path->string());
  }
}

std::string AnnotationService::RegisterWorker(std::optional<std::string> requested_id) {
  std::lock_guard lock(mu_);
  if (requested_id) {
    if (requested_id->empty() ||
        requested_id->find_first_of(",\"\r\n") != std::string::npos) {
      throw Error(ErrorCode::kInvalidArgument, "worker id must be non-empty plain text");
    }
    workers_.try_emplace(*requested_id);
    return *requested_id;
  }
  std::string id;
  do {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "worker-%04llu",
                  static_cast<unsigned long long>(next_worker_++));
    id = buffer;
  } while (workers_.contains(id));
  workers_.try_emplace(id);
  return id;
}

std::optional<PairView> AnnotationService::NextPair(const std::string& worker_id) {
  std::lock_guard lock(mu_);
  const auto worker_it = workers_.find(worker_id);
  if (worker_it == workers_.end()) {
    throw Error(ErrorCode::kUnknownWorker, "worker " + worker_id + " is not registered");
  }
  WorkerState& worker = worker_it->second;
  if (!worker.outstanding) {
    const uint64_t worker_hash = HashString(worker_id);
    std::optional<size_t> best;
    std::tuple<int64_t, uint64_t> best_key;
    for (size_t i = 0; i < tasks_.pairs.size(); ++i) {
      const PairTask& pair = tasks_.pairs[i];
      if (judgment_counts_[i] >= pair.target_redundancy || worker.judged.contains(i)) {
        continue;
      }
      const std::tuple<int64_t, uint64_t> key{
          judgment_counts_[i] + in_flight_[i],
          DeriveSeed(worker_hash, {HashString(pair.id)})};
      if (!best || key < best_key) {
        best = i;
        best_key = key;
      }
    }
    if (!best) return std::nullopt;
    const PairTask& pair = tasks_.pairs[*best];
    worker.outstanding =
        Outstanding{*best, PlacementFor(pair.placement_seed, serve_counts_[*best]++)};
    ++in_flight_[*best];
  }
  const Outstanding& served = *worker.outstanding;
  const PairTask& pair = tasks_.pairs[served.pair_index];
  PairView view;
  view.pair_id = pair.id;
  view.placement = served.placement;
  const bool original = served.placement == Placement::kOriginal;
  view.left_image_ref = ImageRef(original ? pair.first : pair.second);
  view.right_image_ref = ImageRef(original ? pair.second : pair.first);
  return view;
}

Judgment AnnotationService::RecordJudgment(const std::string& worker_id,
                                           const std::string& pair_id, Choice choice) {
  std::lock_guard lock(mu_);
  const auto worker_it = workers_.find(worker_id);
  if (worker_it == workers_.end()) {
    throw Error(ErrorCode::kUnknownWorker, "worker " + worker_id + " is not registered");
  }
  const auto pair_it = pair_index_.find(pair_id);
  if (pair_it == pair_index_.end()) {
    throw Error(ErrorCode::kUnknownPair, "no pair " + pair_id);
  }
  const size_t index = pair_it->second;
  WorkerState& worker = worker_it->second;
  if (worker.judged.contains(index)) {
    throw Error(ErrorCode::kDuplicateJudgment,
                worker_id + " already judged " + pair_id);
  }
  if (!worker.outstanding || worker.outstanding->pair_index != index) {
    throw Error(ErrorCode::kUnservedPair, pair_id + " is not served to " + worker_id);
  }
  const PairTask& pair = tasks_.pairs[index];
  if (judgment_counts_[index] >= pair.target_redundancy) {
    worker.outstanding.reset();
    --in_flight_[index];
    throw Error(ErrorCode::kRedundancyReached,
                pair_id + " already has " + std::to_string(pair.target_redundancy) +
                    " judgments");
  }
  Judgment judgment;
  judgment.worker_id = worker_id;
  judgment.pair_id = pair_id;
  judgment.choice = choice;
  judgment.order = worker.outstanding->placement;
  judgment.timestamp_ms = Now();
  judgment.is_control = pair.is_control;
  judgment.first_dimension = pair.first_dimension;
  judgment.second_dimension = pair.second_dimension;
  AppendToLog(judgment);
  worker.outstanding.reset();
  --in_flight_[index];
  Apply(judgment, index);
  return judgment;
}

WorkerRecord AnnotationService::Worker(const std::string& worker_id) const {
  std::vector<Judgment> own;
  {
    std::lock_guard lock(mu_);
    if (!workers_.contains(worker_id)) {
      throw Error(ErrorCode::kUnknownWorker, "worker " + worker_id + " is not registered");
    }
    for (const Judgment& j : judgments_) {
      if (j.worker_id == worker_id) own.push_back(j);
    }
  }
  const GateResult gate = GateWorkers(own);
  if (!gate.retained.empty()) return gate.retained.front();
  if (!gate.discarded.empty()) return gate.discarded.front();
  WorkerRecord record;
  record.worker_id = worker_id;
  return record;
}

std::vector<Judgment> AnnotationService::Judgments() const {
  std::lock_guard lock(mu_);
  return judgments_;
}

int64_t AnnotationService::JudgmentCount(const std::string& pair_id) const {
  const auto it = pair_index_.find(pair_id);
  if (it == pair_index_.end()) throw Error(ErrorCode::kUnknownPair, "no pair " + pair_id);
  std::lock_guard lock(mu_);
  return judgment_counts_[it->second];
}

stats::PairwiseTally AnnotationService::GatedTally(double threshold, int min_pairs,
                                                   double max_control_fail_rate) const {
  const GateResult gate = GateWorkers(Judgments(), min_pairs, max_control_fail_rate);
  return ExportTally(gate.retained_judgments, threshold);
}

std::optional<std::string> AnnotationService::ImagePng(const std::string& image_ref) const {
  const auto it = image_argument_.find(image_ref);
  if (it == image_argument_.end()) return std::nullopt;
  {
    std::lock_guard lock(mu_);
    const auto cached = image_cache_.find(image_ref);
    if (cached != image_cache_.end()) return cached->second;
  }
  std::string png = RenderTextPng(tasks_.Argument(it->second).text, options_.image_options);
  std::lock_guard lock(mu_);
  return image_cache_.try_emplace(image_ref, std::move(png)).first->second;
}

}  // namespace persuasion::annotation
