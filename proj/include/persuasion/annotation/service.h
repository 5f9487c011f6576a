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

#ifndef PERSUASION_ANNOTATION_SERVICE_H_
#define PERSUASION_ANNOTATION_SERVICE_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "persuasion/annotation/judgments.h"
#include "persuasion/annotation/tasks.h"
#include "persuasion/annotation/text_image.h"

namespace persuasion::annotation {

// What a worker sees for one task. Image references are opaque and do not
// reveal which argument, dimension or control status lies behind them.
struct PairView {
  std::string pair_id;
  std::string left_image_ref;
  std::string right_image_ref;
  Placement placement = Placement::kOriginal;
};

struct ServiceOptions {
  // Judgments are appended here as CSV and replayed on construction.
  std::optional<std::filesystem::path> log_path;
  // Milliseconds since the epoch; defaults to the system clock.
  std::function<int64_t()> clock;
  TextImageOptions image_options;
};

// Serves pairs and records forced-choice judgments. All methods are
// thread-safe; recording is serialized so per-pair counts are exact.
class AnnotationService {
 public:
  explicit AnnotationService(TaskSet tasks, ServiceOptions options = {});

  AnnotationService(const AnnotationService&) = delete;
  AnnotationService& operator=(const AnnotationService&) = delete;

  // Registers `requested_id` when given (idempotent), else a fresh id.
  std::string RegisterWorker(std::optional<std::string> requested_id = std::nullopt);

  // The worker's outstanding pair if one was served and not yet judged,
  // otherwise the least-judged pair the worker has not judged whose count is
  // below its redundancy target. Ties are broken by a per-worker hash so
  // workers spread over pairs. Returns nullopt when nothing remains.
  // Throws kUnknownWorker.
  std::optional<PairView> NextPair(const std::string& worker_id);

  // Throws kUnknownWorker, kUnknownPair, kDuplicateJudgment,
  // kUnservedPair (never served to this worker) and kRedundancyReached.
  Judgment RecordJudgment(const std::string& worker_id, const std::string& pair_id,
                          Choice choice);

  // Throws kUnknownWorker.
  WorkerRecord Worker(const std::string& worker_id) const;
  std::vector<Judgment> Judgments() const;
  int64_t JudgmentCount(const std::string& pair_id) const;

  // Gated judgments with the given agreement threshold applied.
  stats::PairwiseTally GatedTally(double threshold, int min_pairs = kDefaultMinPairs,
                                  double max_control_fail_rate =
                                      kDefaultMaxControlFailRate) const;

  // PNG bytes for an image reference from a PairView; nullopt if unknown.
  std::optional<std::string> ImagePng(const std::string& image_ref) const;

  const TaskSet& tasks() const { return tasks_; }

 private:
  struct Outstanding {
    size_t pair_index;
    Placement placement;
  };
  struct WorkerState {
    std::set<size_t> judged;
    std::optional<Outstanding> outstanding;
  };

  std::string ImageRef(const std::string& argument_id) const;
  void Replay(const std::filesystem::path& path);
  void Apply(const Judgment& judgment, size_t pair_index);
  void AppendToLog(const Judgment& judgment);
  int64_t Now() const;

  const TaskSet tasks_;
  const ServiceOptions options_;
  std::map<std::string, size_t> pair_index_;
  std::map<std::string, std::string> image_argument_;  // image ref -> argument

  mutable std::mutex mu_;
  std::map<std::string, WorkerState> workers_;
  std::vector<int64_t> judgment_counts_;
  std::vector<int64_t> in_flight_;
  std::vector<uint64_t> serve_counts_;
  std::vector<Judgment> judgments_;
  uint64_t next_worker_ = 1;
  mutable std::map<std::string, std::string> image_cache_;
};

}  // namespace persuasion::annotation

#endif  // PERSUASION_ANNOTATION_SERVICE_H_
