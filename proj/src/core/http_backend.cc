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

#include <chrono>
#include <sstream>
#include <thread>

#include "httplib.h"
#include "persuasion/error.h"
#include "persuasion/llm_gateway.h"

namespace persuasion {
namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

struct Endpoint {
  std::string origin;  // scheme://host[:port]
  std::string path;    // base path without trailing slash
};

Endpoint SplitEndpoint(const std::string& url) {
  const size_t scheme_end = url.find("://");
  const size_t path_start = url.find('/', scheme_end + 3);
  Endpoint endpoint;
  if (path_start == std::string::npos) {
    endpoint.origin = url;
  } else {
    endpoint.origin = url.substr(0, path_start);
    endpoint.path = url.substr(path_start);
  }
  while (!endpoint.path.empty() && endpoint.path.back() == '/') {
    endpoint.path.pop_back();
  }
  return endpoint;
}

// Outcome of one HTTP attempt.
struct Attempt {
  bool ok = false;
  bool transient = false;
  ErrorCode code = ErrorCode::kRemoteError;
  std::string detail;
  CompletionResponse response;
};

std::string ExtractText(const json& body) {
  if (body.contains("text") && body["text"].is_string()) {
    return body["text"].get<std::string>();
  }
  if (body.contains("choices") && body["choices"].is_array() &&
      !body["choices"].empty()) {
    const json& choice = body["choices"][0];
    if (choice.contains("text") && choice["text"].is_string()) {
      return choice["text"].get<std::string>();
    }
    if (choice.contains("message") && choice["message"].contains("content") &&
        choice["message"]["content"].is_string()) {
      return choice["message"]["content"].get<std::string>();
    }
  }
  return {};
}

}  // namespace

HttpChatBackend::HttpChatBackend(BackendConfig config, Sleeper sleeper)
    : config_(std::move(config)), sleeper_(std::move(sleeper)) {
  config_.Validate();
  if (!sleeper_) {
    sleeper_ = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
  }
}

HttpChatBackend::~HttpChatBackend() = default;

std::map<std::string, std::string> HttpChatBackend::Metadata() const {
  std::ostringstream temperature, top_p;
  temperature << config_.decoding.temperature;
  top_p << config_.decoding.top_p;
  return {{"backend", "http"},
          {"model_id", config_.model_id},
          {"temperature", temperature.str()},
          {"top_p", top_p.str()},
          {"max_tokens", std::to_string(config_.decoding.max_tokens)},
          {"seed_forwarded", "true"}};
}

CompletionResponse HttpChatBackend::Complete(
    const CompletionRequest& request) const {
  const Endpoint endpoint = SplitEndpoint(config_.endpoint_url);
  const std::string path = endpoint.path + "/chat/completions";

  json body = {{"model", config_.model_id},
               {"prompt", request.prompt},
               {"seed", request.seed},
               {"temperature", request.decoding.temperature},
               {"top_p", request.decoding.top_p},
               {"max_tokens", request.decoding.max_tokens}};
  const std::string payload = body.dump();

  auto attempt_once = [&]() -> Attempt {
    Attempt attempt;
    httplib::Client client(endpoint.origin);
    const auto seconds = std::chrono::duration_cast<std::chrono::seconds>(config_.timeout);
    const auto micros = std::chrono::duration_cast<std::chrono::microseconds>(
        config_.timeout - seconds);
    client.set_connection_timeout(seconds.count(), micros.count());
    client.set_read_timeout(seconds.count(), micros.count());
    client.set_write_timeout(seconds.count(), micros.count());
    httplib::Headers headers;
    if (!config_.api_key.empty()) {
      headers.emplace("Authorization", "Bearer " + config_.api_key);
    }

    const auto start = Clock::now();
    auto result = client.Post(path, headers, payload, "application/json");
    const auto elapsed =
        std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start);

    if (!result) {
      attempt.transient = true;
      const auto error = result.error();
      const bool timed_out = error == httplib::Error::ConnectionTimeout ||
                             elapsed >= config_.timeout;
      attempt.code = timed_out ? ErrorCode::kTimeout : ErrorCode::kRemoteError;
      attempt.detail = timed_out ? "request timed out"
                                 : "transport error: " + httplib::to_string(error);
      return attempt;
    }
    const int status = result->status;
    if (status != 200) {
      attempt.transient = status == 429 || status >= 500;
      attempt.code = ErrorCode::kRemoteError;
      attempt.detail = "status " + std::to_string(status);
      return attempt;
    }
    json reply;
    try {
      reply = json::parse(result->body);
    } catch (const json::exception&) {
      attempt.transient = true;
      attempt.detail = "reply is not JSON";
      return attempt;
    }
    std::string text = ExtractText(reply);
    if (text.empty()) {
      attempt.transient = true;
      attempt.detail = "reply carries no text";
      return attempt;
    }
    attempt.ok = true;
    attempt.response.text = std::move(text);
    attempt.response.latency = elapsed;
    if (reply.contains("usage") && reply["usage"].is_object()) {
      attempt.response.prompt_tokens = reply["usage"].value("prompt_tokens", 0);
      attempt.response.completion_tokens =
          reply["usage"].value("completion_tokens", 0);
    }
    if (reply.contains("seed") && reply["seed"].is_number_unsigned()) {
      attempt.response.seed_echoed =
          reply["seed"].get<uint64_t>() == request.seed;
    }
    return attempt;
  };

  const auto delays = RetrySchedule(config_);
  Attempt last;
  for (int i = 0; i <= config_.max_retries; ++i) {
    last = attempt_once();
    if (last.ok) {
      last.response.attempts = i + 1;
      return last.response;
    }
    if (!last.transient) {
      throw Error(last.code, last.detail);
    }
    if (i < config_.max_retries) sleeper_(delays[i]);
  }
  if (config_.max_retries == 0) throw Error(last.code, last.detail);
  throw Error(ErrorCode::kExhaustedRetries,
              std::to_string(config_.max_retries + 1) +
                  " attempts failed; last: " + last.detail);
}

}  // namespace persuasion
