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

#include "persuasion/annotation/http_api.h"

#include <cstdlib>

#include "httplib.h"
#include "json.hpp"
#include "persuasion/csv.h"
#include "persuasion/error.h"

namespace persuasion::annotation {
namespace {

using nlohmann::json;

int StatusFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnknownWorker:
    case ErrorCode::kUnknownPair:
      return 404;
    case ErrorCode::kDuplicateJudgment:
    case ErrorCode::kRedundancyReached:
    case ErrorCode::kUnservedPair:
      return 409;
    case ErrorCode::kIoError:
      return 500;
    default:
      return 400;
  }
}

void SendError(httplib::Response& res, int status, std::string_view code,
               const std::string& message) {
  res.status = status;
  res.set_content(json{{"error", code}, {"message", message}}.dump(), "application/json");
}

void SendJson(httplib::Response& res, const json& body, int status = 200) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

json ParseBody(const httplib::Request& req) {
  if (req.body.empty()) return json::object();
  json body = json::parse(req.body, nullptr, /*allow_exceptions=*/false);
  if (!body.is_object()) {
    throw Error(ErrorCode::kParseError, "request body must be a JSON object");
  }
  return body;
}

std::string RequiredString(const json& body, const char* key) {
  const auto it = body.find(key);
  if (it == body.end() || !it->is_string()) {
    throw Error(ErrorCode::kParseError, std::string("missing string field '") + key + "'");
  }
  return it->get<std::string>();
}

json WorkerJson(const WorkerRecord& r) {
  return {{"worker", r.worker_id},
          {"pairs_completed", r.pairs_completed},
          {"controls_seen", r.controls_seen},
          {"controls_failed", r.controls_failed},
          {"retained", r.retained}};
}

}  // namespace

struct AnnotationHttpServer::Impl {
  Impl(AnnotationService& service, HttpApiOptions options)
      : service(service), options(std::move(options)) {}

  AnnotationService& service;
  HttpApiOptions options;
  httplib::Server server;

  // Runs `body`, turning library errors into JSON error responses.
  template <typename Fn>
  void Guard(httplib::Response& res, Fn&& body) {
    try {
      body();
    } catch (const Error& e) {
      SendError(res, StatusFor(e.code()), ErrorCodeName(e.code()), e.what());
    }
  }

  void Routes();
};

void AnnotationHttpServer::Impl::Routes() {
  if (!options.cors_origin.empty()) {
    server.set_default_headers({{"Access-Control-Allow-Origin", options.cors_origin},
                                {"Access-Control-Allow-Headers", "Content-Type"},
                                {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});
    server.Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) {
      res.status = 204;
    });
  }
  server.set_exception_handler(
      [](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
        try {
          std::rethrow_exception(ep);
        } catch (const std::exception& e) {
          SendError(res, 500, "Internal", e.what());
        } catch (...) {
          SendError(res, 500, "Internal", "unknown failure");
        }
      });

  server.Post("/workers", [this](const httplib::Request& req, httplib::Response& res) {
    Guard(res, [&] {
      const json body = ParseBody(req);
      std::optional<std::string> requested;
      if (body.contains("worker")) requested = RequiredString(body, "worker");
      SendJson(res, {{"worker", service.RegisterWorker(requested)}}, 201);
    });
  });

  server.Get(R"(/workers/([^/]+))",
             [this](const httplib::Request& req, httplib::Response& res) {
               Guard(res, [&] { SendJson(res, WorkerJson(service.Worker(req.matches[1]))); });
             });

  server.Get("/tasks/next", [this](const httplib::Request& req, httplib::Response& res) {
    Guard(res, [&] {
      if (!req.has_param("worker")) {
        throw Error(ErrorCode::kInvalidArgument, "query parameter 'worker' is required");
      }
      const auto view = service.NextPair(req.get_param_value("worker"));
      if (!view) {
        SendJson(res, {{"exhausted", true}});
        return;
      }
      SendJson(res, {{"pair_id", view->pair_id},
                     {"left_image_ref", view->left_image_ref},
                     {"right_image_ref", view->right_image_ref}});
    });
  });

  server.Post("/judgments", [this](const httplib::Request& req, httplib::Response& res) {
    Guard(res, [&] {
      const json body = ParseBody(req);
      const Judgment j =
          service.RecordJudgment(RequiredString(body, "worker"),
                                 RequiredString(body, "pair_id"),
                                 ChoiceFromId(RequiredString(body, "choice")));
      SendJson(res,
               {{"recorded", true}, {"pair_id", j.pair_id},
                {"order", PlacementId(j.order)}, {"timestamp", j.timestamp_ms}},
               201);
    });
  });

  server.Get(R"(/images/[0-9a-f]+\.png)",
             [this](const httplib::Request& req, httplib::Response& res) {
               Guard(res, [&] {
                 const auto png = service.ImagePng(req.path);
                 if (!png) {
                   SendError(res, 404, "UnknownImage", "no image " + req.path);
                   return;
                 }
                 res.set_header("Cache-Control", "no-store");
                 res.set_content(*png, "image/png");
               });
             });

  server.Get("/export/judgments", [this](const httplib::Request&, httplib::Response& res) {
    Guard(res, [&] { res.set_content(JudgmentsCsv(service.Judgments()), "text/csv"); });
  });

  server.Get("/export/tally", [this](const httplib::Request& req, httplib::Response& res) {
    Guard(res, [&] {
      double threshold = 0.0;
      if (req.has_param("threshold")) {
        threshold = csv::ParseDouble(req.get_param_value("threshold"));
      }
      bool gated = true;
      if (req.has_param("gated")) gated = csv::ParseBool(req.get_param_value("gated"));
      const std::vector<Judgment> all = service.Judgments();
      const std::vector<Judgment> used =
          gated ? GateWorkers(all).retained_judgments : all;
      int64_t controls = 0;
      for (const Judgment& j : used) controls += j.is_control ? 1 : 0;
      res.set_header("X-Judgments-Used", std::to_string(used.size() - controls));
      res.set_header("X-Control-Judgments-Excluded", std::to_string(controls));
      res.set_content(TallyCsv(ExportTally(used, threshold)), "text/csv");
    });
  });

  if (options.static_dir && !server.set_mount_point("/", options.static_dir->string())) {
    throw Error(ErrorCode::kIoError,
                "static directory " + options.static_dir->string() + " is not readable");
  }
}

AnnotationHttpServer::AnnotationHttpServer(AnnotationService& service,
                                           HttpApiOptions options)
    : impl_(std::make_unique<Impl>(service, std::move(options))) {
  impl_->Routes();
}

AnnotationHttpServer::~AnnotationHttpServer() { Stop(); }

int AnnotationHttpServer::Bind(const std::string& host, int port) {
  if (!impl_->server.bind_to_port(host, port)) {
    throw Error(ErrorCode::kIoError,
                "cannot bind " + host + ":" + std::to_string(port));
  }
  return port;
}

int AnnotationHttpServer::BindToAnyPort(const std::string& host) {
  const int port = impl_->server.bind_to_any_port(host);
  if (port < 0) throw Error(ErrorCode::kIoError, "cannot bind " + host);
  return port;
}

void AnnotationHttpServer::ListenAfterBind() { impl_->server.listen_after_bind(); }

void AnnotationHttpServer::Stop() {
  if (impl_->server.is_running()) impl_->server.stop();
}

void AnnotationHttpServer::WaitUntilReady() const { impl_->server.wait_until_ready(); }

}  // namespace persuasion::annotation
