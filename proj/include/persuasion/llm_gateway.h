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

#ifndef PERSUASION_LLM_GATEWAY_H_
#define PERSUASION_LLM_GATEWAY_H_

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "persuasion/dimensions.h"

namespace persuasion {

enum class Speaker { kConvincer, kSkeptic };

std::string_view SpeakerId(Speaker speaker);
Speaker SpeakerFromId(std::string_view id);

struct DecodingParams {
  double temperature = 0.7;
  double top_p = 0.9;
  int max_tokens = 512;
};

struct BackendConfig {
  std::string endpoint_url;
  std::string model_id = "llama-2-70b-chat";
  std::string api_key;  // Never persisted.
  DecodingParams decoding;
  std::chrono::milliseconds timeout{60000};
  int max_retries = 3;
  std::chrono::milliseconds retry_base_delay{500};

  // Throws kConfigError naming the offending field.
  void Validate() const;

  // Reads PERSUASION_LLM_ENDPOINT and PERSUASION_LLM_API_KEY when set.
  void ApplyEnvironmentOverrides();

  static BackendConfig FromJson(const nlohmann::json& object);
  nlohmann::json ToJson() const;
};

inline constexpr int kMaxRetriesLimit = 8;

// One generation call. The routing fields identify the dialogue position;
// networked backends ignore them, the mock backend keys its behavior on them.
struct CompletionRequest {
  std::string prompt;
  uint64_t seed = 0;
  DecodingParams decoding;
  int stage = 0;
  Speaker speaker = Speaker::kConvincer;
  SocialDimension dimension = SocialDimension::kBaseline;
  Stubbornness stubbornness = Stubbornness::kModerate;
};

struct CompletionResponse {
  std::string text;
  int prompt_tokens = 0;
  int completion_tokens = 0;
  std::chrono::milliseconds latency{0};
  int attempts = 1;
  // Whether the server echoed the forwarded seed back; unknown when absent.
  std::optional<bool> seed_echoed;
};

class ChatBackend {
 public:
  virtual ~ChatBackend() = default;

  // Must be safe to call concurrently.
  virtual CompletionResponse Complete(const CompletionRequest& request) const = 0;

  virtual DecodingParams decoding() const = 0;

  // Model id, decoding parameters and similar, recorded with each transcript.
  virtual std::map<std::string, std::string> Metadata() const = 0;
};

// Delay before retry i (0-based): base * 2^i, capped at 30 s. Non-decreasing.
std::vector<std::chrono::milliseconds> RetrySchedule(const BackendConfig& config);

using Sleeper = std::function<void(std::chrono::milliseconds)>;

// Plain HTTP(S) client: POST {endpoint_url}/chat/completions with a JSON body
// {model, prompt, seed, temperature, top_p, max_tokens}. The reply may carry
// the text as "text", choices[0].text, or choices[0].message.content.
//
// Connection failures, timeouts, 429 and 5xx are retried on RetrySchedule.
// Other statuses raise kRemoteError at once. When retries run out the call
// raises kExhaustedRetries; with max_retries = 0 the single failure surfaces
// as kTimeout or kRemoteError directly.
class HttpChatBackend : public ChatBackend {
 public:
  explicit HttpChatBackend(BackendConfig config, Sleeper sleeper = nullptr);
  ~HttpChatBackend() override;

  CompletionResponse Complete(const CompletionRequest& request) const override;
  DecodingParams decoding() const override { return config_.decoding; }
  std::map<std::string, std::string> Metadata() const override;

 private:
  BackendConfig config_;
  Sleeper sleeper_;
};

// Single-call convenience over HttpChatBackend.
CompletionResponse Complete(const BackendConfig& config,
                            const CompletionRequest& request);

}  // namespace persuasion

#endif  // PERSUASION_LLM_GATEWAY_H_
