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

#include "lead/llm_client.hpp"

#include <algorithm>
#include <cstdlib>

#include <httplib.h>
#include <spdlog/spdlog.h>

#include "lead/csv.hpp"
#include "lead/errors.hpp"
#include "lead/llmjudge.hpp"

namespace lead {

using json = nlohmann::json;

json request_body(const ChatRequest& r) {
  json body = json::object();
  body["model"] = r.model;
  body["messages"] = json::array({json{{"role", "system"}, {"content", r.system}},
                                  json{{"role", "user"}, {"content", r.user}}});
  body["top_k"] = r.decode.top_k;
  body["max_tokens"] = r.decode.max_length;
  return body;
}

std::string response_text(const json& body) {
  if (body.is_object()) {
    if (auto ch = body.find("choices"); ch != body.end() && ch->is_array() && !ch->empty()) {
      const auto& first = (*ch)[0];
      if (auto msg = first.find("message"); msg != first.end() && msg->contains("content") &&
                                            (*msg)["content"].is_string())
        return (*msg)["content"].get<std::string>();
      if (auto text = first.find("text"); text != first.end() && text->is_string())
        return text->get<std::string>();
    }
    if (auto c = body.find("content"); c != body.end() && c->is_string()) return c->get<std::string>();
  }
  raise(ErrorKind::Endpoint, "response has no assistant content");
}

HttpChatClient::HttpChatClient(EndpointConfig config) : config_(std::move(config)) {
  if (!config_.api_key_env.empty())
    if (const char* key = std::getenv(config_.api_key_env.c_str())) api_key_ = key;
}

std::string HttpChatClient::complete(const ChatRequest& request) {
  httplib::Client client(config_.base_url);
  if (!client.is_valid()) raise(ErrorKind::Endpoint, "invalid endpoint URL " + config_.base_url);
  const auto secs = static_cast<time_t>(config_.timeout.count());
  client.set_connection_timeout(secs, 0);
  client.set_read_timeout(secs, 0);
  client.set_write_timeout(secs, 0);
  httplib::Headers headers;
  if (!api_key_.empty()) headers.emplace("Authorization", "Bearer " + api_key_);

  auto res = client.Post(config_.path, headers, request_body(request).dump(), "application/json");
  if (!res) raise(ErrorKind::Endpoint, config_.base_url + ": " + httplib::to_string(res.error()));
  if (res->status / 100 != 2)
    raise(ErrorKind::Endpoint, config_.base_url + config_.path + " returned HTTP " +
                                   std::to_string(res->status));
  json body;
  try {
    body = json::parse(res->body);
  } catch (const json::parse_error& e) {
    raise(ErrorKind::Endpoint, std::string("response is not JSON: ") + e.what());
  }
  return response_text(body);
}

std::string HttpChatClient::identity() const {
  return "http:" + config_.base_url + config_.path + "#" + config_.model_name;
}

std::unique_ptr<ReplayMockClient> ReplayMockClient::from_jsonl(std::string_view text,
                                                               std::string source) {
  auto client = std::unique_ptr<ReplayMockClient>(new ReplayMockClient());
  client->source_ = std::move(source);
  std::size_t line_no = 0, start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    const auto where = client->source_ + ":" + std::to_string(line_no);
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      raise(ErrorKind::Schema, where + ": " + e.what());
    }
    for (const char* key : {"record_id", "auid", "response_text"})
      if (!obj.contains(key) || !obj[key].is_string())
        raise(ErrorKind::Schema, where + ": missing string field '" + key + "'");
    client->responses_[{obj["record_id"].get<std::string>(), obj["auid"].get<std::string>()}]
        .push_back(obj["response_text"].get<std::string>());
  }
  return client;
}

std::unique_ptr<ReplayMockClient> ReplayMockClient::from_file(const std::filesystem::path& path) {
  return from_jsonl(csv::read_text(path), path.string());
}

std::string ReplayMockClient::complete(const ChatRequest& request) {
  std::lock_guard lock(mu_);
  auto key = std::make_pair(request.record_id, request.auid);
  auto it = responses_.find(key);
  if (it == responses_.end())
    raise(ErrorKind::Endpoint, "no recorded response for (" + request.record_id + ", " +
                                   request.auid + ") in " + source_);
  auto& n = served_[key];
  const auto& text = it->second[std::min(n, it->second.size() - 1)];
  ++n;
  return text;
}

OracleMockClient::OracleMockClient(std::map<std::pair<std::string, std::string>, bool> truth,
                                   double error_rate, std::uint64_t seed)
    : truth_(std::move(truth)), error_rate_(error_rate), seed_(seed) {}

namespace {

// splitmix64 finalizer over an FNV-1a digest of the pair.
double pair_uniform(std::uint64_t seed, const std::string& a, const std::string& b) {
  std::uint64_t h = 14695981039346656037ull ^ seed;
  for (const std::string* s : {&a, &b}) {
    for (char c : *s) {
      h ^= static_cast<unsigned char>(c);
      h *= 1099511628211ull;
    }
    h ^= 0xff;
    h *= 1099511628211ull;
  }
  h += 0x9e3779b97f4a7c15ull;
  h = (h ^ (h >> 30)) * 0xbf58476d1ce4e5b9ull;
  h = (h ^ (h >> 27)) * 0x94d049bb133111ebull;
  h ^= h >> 31;
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

}  // namespace

std::string OracleMockClient::complete(const ChatRequest& request) {
  auto it = truth_.find({request.record_id, request.auid});
  if (it == truth_.end())
    raise(ErrorKind::Endpoint, "oracle mock has no label for (" + request.record_id + ", " +
                                   request.auid + ")");
  bool answer = it->second;
  if (error_rate_ > 0.0 && pair_uniform(seed_, request.record_id, request.auid) < error_rate_)
    answer = !answer;
  return serialize_verdict(LlmVerdict{request.record_id, request.auid, answer,
                                      answer ? "Planted match." : "Planted non-match."});
}

std::string OracleMockClient::identity() const {
  return "mock-oracle:error_rate=" + std::to_string(error_rate_) + ",seed=" + std::to_string(seed_);
}

ConcurrencyLimitedClient::ConcurrencyLimitedClient(ChatClient& inner, int max_concurrent)
    : inner_(inner), slots_(std::clamp(max_concurrent, 1, 1024)) {}

std::string ConcurrencyLimitedClient::complete(const ChatRequest& request) {
  slots_.acquire();
  struct Release {
    std::counting_semaphore<1024>& s;
    ~Release() { s.release(); }
  } release{slots_};
  return inner_.complete(request);
}

}  // namespace lead
