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

#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <variant>
#include <vector>

#include "lead/bibcoupling.hpp"
#include "lead/corpus_cache.hpp"
#include "lead/ingest.hpp"
#include "lead/labelspread.hpp"
#include "lead/llm_client.hpp"
#include "lead/llmjudge.hpp"
#include "lead/model.hpp"
#include "lead/taxonomy.hpp"

namespace lead {

struct BcOnly {
  double threshold = 0.15;
  TimeWindow window;
};

struct LsOnly {
  Granularity granularity = Granularity::ScientificArea;
};

struct LlmOnly {
  PromptConfig prompt;
};

// prompt.enrichment selects which evidence reaches the prompt.
struct LlmEnriched {
  PromptConfig prompt;
  TimeWindow window;
  Granularity ls_granularity = Granularity::RecruitmentField;
};

// Escalated pairs get the enriched prompt with both kinds of evidence unless
// prompt.enrichment narrows it.
struct Lead {
  double threshold = 0.15;
  TimeWindow window;
  PromptConfig prompt{MetadataMode::KeywordsTitles, PaperSample{}, Enrichment{true, true}};
  Granularity ls_granularity = Granularity::RecruitmentField;
};

using MethodConfig = std::variant<BcOnly, LsOnly, LlmOnly, LlmEnriched, Lead>;

// "bc", "ls", "llm", "llm_enriched" or "lead".
std::string_view method_name(const MethodConfig& config);
// Throws Param when a threshold lies outside (0, 1).
void validate(const MethodConfig& config);

struct RunOptions {
  unsigned jobs = 1;
  std::optional<std::filesystem::path> cache_dir;
  SpreadParams spread;
  EdgeWeighting weighting = EdgeWeighting::CoPublicationCount;
};

struct CallRecord {
  std::string record_id;
  std::string auid;
  int attempts = 0;
  std::vector<double> latency_ms;
  bool failed = false;
  bool transport_failure = false;
};

struct RunResult {
  std::vector<Decision> decisions;  // sorted by (record_id, auid)
  double elapsed_seconds = 0.0;     // whole run, artifacts included
  double artifact_seconds = 0.0;    // corpus and graph construction only
  std::size_t llm_calls = 0;        // pairs sent to the LLM
  std::size_t llm_attempts = 0;
  std::size_t escalated_pairs = 0;
  std::size_t llm_failures = 0;
  std::size_t endpoint_failures = 0;
  std::vector<CallRecord> calls;    // sorted like decisions
};

class Engine {
 public:
  // `client` may be null for methods that never call an LLM.
  Engine(const Dataset& data, const TaxonomyTable* taxonomy, ChatClient* client,
         EndpointConfig endpoint, RunOptions options = {});

  RunResult run(const std::vector<CandidatePair>& pairs, const MethodConfig& config);

  // Two-stage decision for one pair. Builds missing artifacts on demand.
  Decision lead_decide(const CandidatePair& pair, const Lead& config);

  OverlapResult bc_overlap(const CandidatePair& pair, const TimeWindow& window);
  const FieldCorpus& corpus(const RFCode& rf, const TimeWindow& window,
                            const std::string& exclude_auid = {});
  const LabelModel& label_model(Granularity level);

 private:
  struct Judged {
    Decision decision;
    std::optional<CallRecord> call;
  };

  Judged decide(const CandidatePair& pair, const MethodConfig& config);
  Judged decide_lead(const CandidatePair& pair, const Lead& config);
  std::optional<EnrichmentEvidence> gather(const CandidatePair& pair, const Enrichment& flags,
                                           const TimeWindow& window, Granularity ls_level,
                                           DecisionEvidence& evidence);
  Judged call_llm(const CandidatePair& pair, const PromptConfig& prompt,
                  const std::optional<EnrichmentEvidence>& evidence, Method method);
  const AuthorProfile& candidate(const CandidatePair& pair) const;
  std::string exclusion_for(const CandidatePair& pair) const;
  void prepare(const std::vector<CandidatePair>& pairs, const MethodConfig& config);

  const Dataset& data_;
  const TaxonomyTable* taxonomy_;
  ChatClient* client_;
  EndpointConfig endpoint_;
  RunOptions options_;
  std::unique_ptr<CorpusCache> disk_cache_;
  std::unique_ptr<ConcurrencyLimitedClient> limited_;
  std::set<std::pair<RFCode, std::string>> seed_pairs_;

  using CorpusKey = std::tuple<RFCode, int, int, std::string>;
  std::mutex mu_;
  std::map<CorpusKey, std::unique_ptr<FieldCorpus>> corpora_;
  std::map<Granularity, std::unique_ptr<LabelModel>> models_;
};

}  // namespace lead
