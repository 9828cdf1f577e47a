// Copyright 2026 The lead Authors.
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

#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <semaphore>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace lead {

struct DecodeParams {
  int top_k = 1;         // greedy
  int max_length = 700;  // generation cap, sent as max_tokens
};

struct EndpointConfig {
  std::string base_url = "http://127.0.0.1:8000";
  std::string path = "/v1/chat/completions";
  std::string model_name = "meta-llama/Llama-3.1-70B-Instruct";
  DecodeParams decode;
  std::chrono::seconds timeout{120};
  int max_retries = 3;  // total attempts per pair
  int max_concurrent = 4;
  std::string api_key_env = "LEAD_LLM_API_KEY";
};

struct ChatRequest {
  // Pair identity; used by mocks, never sent over the wire.
  std::string record_id;
  std::string auid;

  std::string model;
  std::string system;
  std::string user;
  DecodeParams decode;
};

// {model, messages:[{role:"system",content},{role:"user",content}], top_k, max_tokens}
nlohmann::json request_body(const ChatRequest& request);
// Extracts the assistant text from a chat-completion response body.
// Throws Endpoint when the body has no recognizable content.
std::string response_text(const nlohmann::json& body);

class ChatClient {
 public:
  virtual ~ChatClient() = default;
  // Returns the raw model text. Transport faults throw Error(Endpoint).
  virtual std::string complete(const ChatRequest& request) = 0;
  virtual std::string identity() const = 0;
};

// Chat-completion over HTTP(S). The bearer token, if any, comes from the
// environment variable named in the config.
class HttpChatClient final : public ChatClient {
 public:
  explicit HttpChatClient(EndpointConfig config);
  std::string complete(const ChatRequest& request) override;
  std::string identity() const override;

 private:
  EndpointConfig config_;
  std::string api_key_;
};

// Replays recorded responses from JSON Lines {record_id, auid, response_text}.
// Several lines for one pair are served in order, the last one repeating.
class ReplayMockClient final : public ChatClient {
 public:
  static std::unique_ptr<ReplayMockClient> from_file(const std::filesystem::path& path);
  static std::unique_ptr<ReplayMockClient> from_jsonl(std::string_view text, std::string source);

  std::string complete(const ChatRequest& request) override;
  std::string identity() const override { return "mock-replay:" + source_; }

 private:
  std::string source_;
  std::map<std::pair<std::string, std::string>, std::vector<std::string>> responses_;
  std::map<std::pair<std::string, std::string>, std::size_t> served_;
  std::mutex mu_;
};

// Answers from planted labels. Each pair's answer is flipped with
// probability error_rate, decided by a hash of (seed, pair) so results do
// not depend on call order.
class OracleMockClient final : public ChatClient {
 public:
  OracleMockClient(std::map<std::pair<std::string, std::string>, bool> truth, double error_rate,
                   std::uint64_t seed);
  std::string complete(const ChatRequest& request) override;
  std::string identity() const override;

 private:
  std::map<std::pair<std::string, std::string>, bool> truth_;
  double error_rate_;
  std::uint64_t seed_;
};

// Bounds the number of in-flight calls to the wrapped client.
class ConcurrencyLimitedClient final : public ChatClient {
 public:
  ConcurrencyLimitedClient(ChatClient& inner, int max_concurrent);
  std::string complete(const ChatRequest& request) override;
  std::string identity() const override { return inner_.identity(); }

 private:
  ChatClient& inner_;
  std::counting_semaphore<1024> slots_;
};

}  // namespace lead
