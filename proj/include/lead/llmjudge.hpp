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
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lead/llm_client.hpp"
#include "lead/model.hpp"
#include "lead/taxonomy.hpp"

namespace lead {

enum class MetadataMode { Keywords, KeywordsTitles, KeywordsTitlesAbstracts };

std::string_view to_string(MetadataMode m);
std::optional<MetadataMode> parse_metadata_mode(std::string_view s);

struct PaperSample {
  std::size_t k = 10;
  std::uint64_t seed = 0;
};

struct Enrichment {
  bool include_bc = false;
  bool include_ls = false;
  bool any() const { return include_bc || include_ls; }
};

struct PromptConfig {
  MetadataMode mode = MetadataMode::KeywordsTitles;
  std::optional<PaperSample> sample = PaperSample{};  // nullopt: every paper
  Enrichment enrichment;
};

struct PromptPair {
  std::string system;
  std::string user;
};

struct LabeledCode {
  std::string code;
  std::optional<std::string> label;
};

struct BcEvidence {
  double overlap_pct = 0.0;  // one decimal
  std::size_t n_papers = 0;
  std::size_t n_cited = 0;
  std::size_t n_matches = 0;
};

// Classification lines, finest first. Coarser predictions leave the finer
// lines empty.
struct LsEvidence {
  std::optional<LabeledCode> field;
  std::optional<LabeledCode> group;
  std::optional<LabeledCode> area;
};

struct EnrichmentEvidence {
  std::optional<BcEvidence> bc;
  std::optional<LsEvidence> ls;
  bool empty() const { return !bc && !ls; }
};

BcEvidence bc_evidence(const OverlapResult& overlap);
// nullopt when the prediction abstained.
std::optional<LsEvidence> ls_evidence(const LsPrediction& prediction, const TaxonomyTable* taxonomy);

struct LlmVerdict {
  std::string cerca_univ_id;
  std::string scopus_candidate_id;
  bool match = false;
  std::string explanation;
};

// Author header plus chronologically ordered publications. With sampling,
// up to k papers are drawn with a generator seeded from (seed, auid) and
// then re-sorted by year.
std::string render_candidate_block(const AuthorProfile& profile, const PromptConfig& config);

// Zero-shot prompt. The AD description comes from the taxonomy; without a
// label the raw AD code is used and a warning is logged.
PromptPair render_prompt(const RegistryRecord& record, std::string_view auid,
                         std::string_view candidate_block, const TaxonomyTable* taxonomy);

// Prompt with the automated-evidence list. Items are numbered in order
// (citation analysis, then co-authorship classification) and only present
// items are shown. With no evidence at all it falls back to render_prompt.
PromptPair render_enriched_prompt(const RegistryRecord& record, std::string_view auid,
                                  std::string_view candidate_block,
                                  const EnrichmentEvidence& evidence,
                                  const TaxonomyTable* taxonomy);

// Extracts the first well-formed JSON object in `raw`.
// Throws NoJsonFound, MissingField or InvalidMatchValue.
LlmVerdict parse_verdict(std::string_view raw);
std::string serialize_verdict(const LlmVerdict& v);

struct JudgeOutcome {
  Decision decision;
  int attempts = 0;
  std::vector<double> latency_ms;
  bool failed = false;           // fell back to "no"
  bool transport_failure = false;  // last failure was an endpoint error
};

// Renders the prompt (enriched when `evidence` is given), calls the client
// up to max_retries times on transport or parse faults and returns a
// Decision. Exhausted retries yield verdict no with an error annotation;
// nothing is thrown for endpoint failures.
JudgeOutcome judge(const CandidatePair& pair, const AuthorProfile& profile,
                   const PromptConfig& config, const std::optional<EnrichmentEvidence>& evidence,
                   ChatClient& client, const EndpointConfig& endpoint,
                   const TaxonomyTable* taxonomy);

}  // namespace lead
