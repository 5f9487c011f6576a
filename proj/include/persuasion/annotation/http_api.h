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

#ifndef PERSUASION_ANNOTATION_HTTP_API_H_
#define PERSUASION_ANNOTATION_HTTP_API_H_

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "persuasion/annotation/service.h"

namespace persuasion::annotation {

struct HttpApiOptions {
  // Files served under / (the browser front end), if set.
  std::optional<std::filesystem::path> static_dir;
  // Value of Access-Control-Allow-Origin; empty disables CORS headers.
  std::string cors_origin = "*";
};

// JSON/CSV endpoints over an AnnotationService:
//   POST /workers            {"worker"?: id} -> {"worker": id}
//   GET  /workers/<id>       worker record
//   GET  /tasks/next?worker= {pair_id, left_image_ref, right_image_ref}
//                            or {"exhausted": true}
//   POST /judgments          {worker, pair_id, choice: "left"|"right"}
//   GET  /images/<ref>.png
//   GET  /export/judgments   judgment log CSV
//   GET  /export/tally?threshold=&gated=  tally CSV (gated by default)
// Errors are {"error": code, "message": text} with 400, 404 or 409.
class AnnotationHttpServer {
 public:
  AnnotationHttpServer(AnnotationService& service, HttpApiOptions options = {});
  ~AnnotationHttpServer();

  AnnotationHttpServer(const AnnotationHttpServer&) = delete;
  AnnotationHttpServer& operator=(const AnnotationHttpServer&) = delete;

  // Returns the bound port or throws kIoError.
  int Bind(const std::string& host, int port);
  int BindToAnyPort(const std::string& host);
  // Blocks until Stop().
  void ListenAfterBind();
  void Stop();
  void WaitUntilReady() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace persuasion::annotation

#endif  // PERSUASION_ANNOTATION_HTTP_API_H_
