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

#include "persuasion/llm_gateway.h"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "persuasion/error.h"

namespace persuasion {

using nlohmann::json;

std::string_view SpeakerId(Speaker speaker) {
  return speaker == Speaker::kConvincer ? "convincer" : "skeptic";
}

Speaker SpeakerFromId(std::string_view id) {
  if (id == "convincer") return Speaker::kConvincer;
  if (id == "skeptic") return Speaker::kSkeptic;
  throw Error(ErrorCode::kParseError, "unknown speaker '" + std::string(id) + "'");
}

void BackendConfig::Validate() const {
  auto bad = [](const std::string& what) {
    return Error(ErrorCode::kConfigError, "backend: " + what);
  };
  if (endpoint_url.empty()) throw bad("endpoint_url is empty");
  if (!(endpoint_url.starts_with("http://") ||
        endpoint_url.starts_with("https://"))) {
    throw bad("endpoint_url must start with http:// or https://");
  }
  if (model_id.empty()) throw bad("model_id is empty");
  if (!(decoding.temperature >= 0)) throw bad("temperature must be >= 0");
  if (!(decoding.top_p > 0 && decoding.top_p <= 1)) {
    throw bad("top_p must be in (0, 1]");
  }
  if (decoding.max_tokens <= 0) throw bad("max_tokens must be positive");
  if (timeout.count() <= 0) throw bad("timeout must be positive");
  if (max_retries < 0 || max_retries > kMaxRetriesLimit) {
    throw bad("max_retries must be in [0, 8]");
  }
  if (retry_base_delay.count() < 0) throw bad("retry_base_delay is negative");
}

void BackendConfig::ApplyEnvironmentOverrides() {
  if (const char* endpoint = std::getenv("PERSUASION_LLM_ENDPOINT")) {
    endpoint_url = endpoint;
  }
  if (const char* key = std::getenv("PERSUASION_LLM_API_KEY")) {
    api_key = key;
  }
}

BackendConfig BackendConfig::FromJson(const json& object) {
  BackendConfig config;
  try {
    config.endpoint_url = object.value("endpoint_url", config.endpoint_url);
    config.model_id = object.value("model_id", config.model_id);
    config.api_key = object.value("api_key", config.api_key);
    config.decoding.temperature =
        object.value("temperature", config.decoding.temperature);
    config.decoding.top_p = object.value("top_p", config.decoding.top_p);
    config.decoding.max_tokens =
        object.value("max_tokens", config.decoding.max_tokens);
    config.timeout = std::chrono::milliseconds(
        object.value("timeout_ms", config.timeout.count()));
    config.max_retries = object.value("max_retries", config.max_retries);
    config.retry_base_delay = std::chrono::milliseconds(
        object.value("retry_base_delay_ms", config.retry_base_delay.count()));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kConfigError,
                std::string("backend config: ") + e.what());
  }
  return config;
}

json BackendConfig::ToJson() const {
  return json{{"endpoint_url", endpoint_url},
              {"model_id", model_id},
              {"temperature", decoding.temperature},
              {"top_p", decoding.top_p},
              {"max_tokens", decoding.max_tokens},
              {"timeout_ms", timeout.count()},
              {"max_retries", max_retries},
              {"retry_base_delay_ms", retry_base_delay.count()}};
}

std::vector<std::chrono::milliseconds> RetrySchedule(
    const BackendConfig& config) {
  constexpr std::chrono::milliseconds kCap{30000};
  std::vector<std::chrono::milliseconds> delays;
  std::chrono::milliseconds delay = config.retry_base_delay;
  for (int i = 0; i < config.max_retries; ++i) {
    delays.push_back(std::min(delay, kCap));
    delay = std::min(delay * 2, kCap);
  }
  return delays;
}

CompletionResponse Complete(const BackendConfig& config,
                            const CompletionRequest& request) {
  return HttpChatBackend(config).Complete(request);
}

}  // namespace persuasion
