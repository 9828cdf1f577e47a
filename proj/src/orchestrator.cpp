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

#include "lead/orchestrator.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>

#include <spdlog/spdlog.h>

#include "lead/errors.hpp"
#include "lead/parallel.hpp"

namespace lead {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void check_threshold(double t) {
  if (!(t > 0.0 && t < 1.0))
    raise(ErrorKind::Param, "threshold must lie in (0, 1), got " + std::to_string(t));
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool uses_bc(const MethodConfig& c) {
  return std::visit(Overloaded{[](const BcOnly&) { return true; },
                               [](const LsOnly&) { return false; },
                               [](const LlmOnly&) { return false; },
                               [](const LlmEnriched& m) { return m.prompt.enrichment.include_bc; },
                               [](const Lead&) { return true; }},
                    c);
}

std::optional<TimeWindow> bc_window(const MethodConfig& c) {
  if (auto* m = std::get_if<BcOnly>(&c)) return m->window;
  if (auto* m = std::get_if<LlmEnriched>(&c)) return m->window;
  if (auto* m = std::get_if<Lead>(&c)) return m->window;
  return std::nullopt;
}

std::optional<Granularity> ls_level(const MethodConfig& c) {
  if (auto* m = std::get_if<LsOnly>(&c)) return m->granularity;
  if (auto* m = std::get_if<LlmEnriched>(&c))
    if (m->prompt.enrichment.include_ls) return m->ls_granularity;
  if (auto* m = std::get_if<Lead>(&c))
    if (m->prompt.enrichment.include_ls) return m->ls_granularity;
  return std::nullopt;
}

bool uses_llm(const MethodConfig& c) {
  return !std::holds_alternative<BcOnly>(c) && !std::holds_alternative<LsOnly>(c);
}

}  // namespace

std::string_view method_name(const MethodConfig& config) {
  return std::visit(Overloaded{[](const BcOnly&) { return std::string_view("bc"); },
                               [](const LsOnly&) { return std::string_view("ls"); },
                               [](const LlmOnly&) { return std::string_view("llm"); },
                               [](const LlmEnriched&) { return std::string_view("llm_enriched"); },
                               [](const Lead&) { return std::string_view("lead"); }},
                    config);
}

void validate(const MethodConfig& config) {
  if (auto* m = std::get_if<BcOnly>(&config)) check_threshold(m->threshold);
  if (auto* m = std::get_if<Lead>(&config)) check_threshold(m->threshold);
}

Engine::Engine(const Dataset& data, const TaxonomyTable* taxonomy, ChatClient* client,
               EndpointConfig endpoint, RunOptions options)
    : data_(data),
      taxonomy_(taxonomy),
      client_(client),
      endpoint_(std::move(endpoint)),
      options_(std::move(options)) {
  if (options_.cache_dir) disk_cache_ = std::make_unique<CorpusCache>(*options_.cache_dir);
  if (client_)
    limited_ = std::make_unique<ConcurrencyLimitedClient>(*client_, endpoint_.max_concurrent);
  for (const auto& s : data_.seeds()) seed_pairs_.emplace(s.rf, s.auid);
}

const AuthorProfile& Engine::candidate(const CandidatePair& pair) const {
  const auto* p = data_.profile(pair.auid);
  if (!p) raise(ErrorKind::DanglingReference, "no profile for candidate auid " + pair.auid);
  return *p;
}

std::string Engine::exclusion_for(const CandidatePair& pair) const {
  return seed_pairs_.count({pair.record.rf, pair.auid}) ? pair.auid : std::string();
}

const FieldCorpus& Engine::corpus(const RFCode& rf, const TimeWindow& window,
                                  const std::string& exclude_auid) {
  std::lock_guard lock(mu_);
  CorpusKey key{rf, window.start_year, window.end_year, exclude_auid};
  if (auto it = corpora_.find(key); it != corpora_.end()) return *it->second;

  const auto seeds = data_.seed_profiles(rf);
  std::optional<std::string_view> exclude;
  if (!exclude_auid.empty()) exclude = exclude_auid;

  std::optional<FieldCorpus> built;
  if (disk_cache_) {
    std::vector<std::string> ids;
    for (const auto* p : seeds)
      if (p->auid != exclude_auid) ids.push_back(p->auid);
    built = disk_cache_->get(rf, window, seed_set_hash(std::move(ids)));
  }
  if (!built) {
    built = build_field_corpus(seeds, rf, window, exclude, options_.jobs);
    if (built->empty_seed_list)
      spdlog::warn("field {} has no seed authors; its corpus is empty", rf.str());
    if (disk_cache_) disk_cache_->put(*built);
  }
  auto& slot = corpora_[key];
  slot = std::make_unique<FieldCorpus>(std::move(*built));
  return *slot;
}

const LabelModel& Engine::label_model(Granularity level) {
  std::lock_guard lock(mu_);
  auto& slot = models_[level];
  if (!slot)
    slot = std::make_unique<LabelModel>(
        LabelModel::build(data_, level, options_.spread, options_.weighting));
  return *slot;
}

OverlapResult Engine::bc_overlap(const CandidatePair& pair, const TimeWindow& window) {
  const auto& fc = corpus(pair.record.rf, window, exclusion_for(pair));
  return overlap(candidate_reference_set(candidate(pair), window), fc);
}

void Engine::prepare(const std::vector<CandidatePair>& pairs, const MethodConfig& config) {
  if (uses_llm(config) && !client_)
    raise(ErrorKind::Prerequisite,
          std::string("LLM client (endpoint or mock fixture) required by method ") +
              std::string(method_name(config)));
  const bool need_bc = uses_bc(config);
  const auto level = ls_level(config);
  if ((need_bc || level) && data_.seeds().empty())
    raise(ErrorKind::Prerequisite, std::string("seed alignments required by method ") +
                                       std::string(method_name(config)) +
                                       " but the seed list is empty");
  for (const auto& pair : pairs) candidate(pair);
  if (need_bc) {
    const auto window = *bc_window(config);
    for (const auto& pair : pairs) corpus(pair.record.rf, window, exclusion_for(pair));
  }
  if (level) label_model(*level);
}

std::optional<EnrichmentEvidence> Engine::gather(const CandidatePair& pair, const Enrichment& flags,
                                                 const TimeWindow& window, Granularity level,
                                                 DecisionEvidence& evidence) {
  if (!flags.any()) return std::nullopt;
  EnrichmentEvidence out;
  if (flags.include_bc) {
    if (!evidence.overlap) evidence.overlap = bc_overlap(pair, window);
    out.bc = bc_evidence(*evidence.overlap);
  }
  if (flags.include_ls) {
    evidence.ls = label_model(level).predict(pair.auid);
    out.ls = ls_evidence(*evidence.ls, taxonomy_);
  }
  return out;
}

Engine::Judged Engine::call_llm(const CandidatePair& pair, const PromptConfig& prompt,
                                const std::optional<EnrichmentEvidence>& evidence, Method method) {
  if (!limited_) raise(ErrorKind::Prerequisite, "LLM client (endpoint or mock fixture)");
  auto outcome = judge(pair, candidate(pair), prompt, evidence, *limited_, endpoint_, taxonomy_);
  Judged j;
  j.decision = std::move(outcome.decision);
  j.decision.method = method;
  j.call = CallRecord{pair.record.record_id, pair.auid,          outcome.attempts,
                      std::move(outcome.latency_ms), outcome.failed, outcome.failed && outcome.transport_failure};
  return j;
}

Engine::Judged Engine::decide_lead(const CandidatePair& pair, const Lead& config) {
  DecisionEvidence evidence;
  evidence.overlap = bc_overlap(pair, config.window);
  const double ratio = evidence.overlap->ratio;
  if (bc_classify(*evidence.overlap, config.threshold) == Verdict::Yes) {
    Judged j;
    j.decision.record_id = pair.record.record_id;
    j.decision.auid = pair.auid;
    j.decision.verdict = Verdict::Yes;
    j.decision.method = Method::LEAD_BC_STAGE;
    j.decision.score = ratio;
    j.decision.evidence = std::move(evidence);
    return j;
  }
  auto enrich =
      gather(pair, config.prompt.enrichment, config.window, config.ls_granularity, evidence);
  auto j = call_llm(pair, config.prompt, enrich, Method::LEAD_LLM_STAGE);
  j.decision.score = ratio;
  auto error = std::move(j.decision.evidence.error);
  j.decision.evidence = std::move(evidence);
  j.decision.evidence.error = std::move(error);
  return j;
}

Decision Engine::lead_decide(const CandidatePair& pair, const Lead& config) {
  check_threshold(config.threshold);
  return decide_lead(pair, config).decision;
}

Engine::Judged Engine::decide(const CandidatePair& pair, const MethodConfig& config) {
  return std::visit(
      Overloaded{
          [&](const BcOnly& m) {
            Judged j;
            auto o = bc_overlap(pair, m.window);
            j.decision.record_id = pair.record.record_id;
            j.decision.auid = pair.auid;
            j.decision.verdict = bc_classify(o, m.threshold);
            j.decision.method = Method::BC;
            j.decision.score = o.ratio;
            j.decision.evidence.overlap = o;
            return j;
          },
          [&](const LsOnly& m) {
            Judged j;
            auto o = ls_classify(pair.record, pair.auid, label_model(m.granularity));
            j.decision.record_id = pair.record.record_id;
            j.decision.auid = pair.auid;
            j.decision.verdict = o.verdict;
            j.decision.method = Method::LS;
            if (o.prediction.class_id) j.decision.score = o.prediction.confidence;
            j.decision.evidence.ls = o.prediction;
            return j;
          },
          [&](const LlmOnly& m) { return call_llm(pair, m.prompt, std::nullopt, Method::LLM); },
          [&](const LlmEnriched& m) {
            DecisionEvidence evidence;
            auto enrich =
                gather(pair, m.prompt.enrichment, m.window, m.ls_granularity, evidence);
            auto j = call_llm(pair, m.prompt, enrich, Method::LLM_ENRICHED);
            if (evidence.overlap) j.decision.score = evidence.overlap->ratio;
            auto error = std::move(j.decision.evidence.error);
            j.decision.evidence = std::move(evidence);
            j.decision.evidence.error = std::move(error);
            return j;
          },
          [&](const Lead& m) { return decide_lead(pair, m); }},
      config);
}

RunResult Engine::run(const std::vector<CandidatePair>& pairs, const MethodConfig& config) {
  validate(config);
  const auto t0 = Clock::now();
  prepare(pairs, config);
  RunResult result;
  result.artifact_seconds = seconds_since(t0);

  std::vector<Judged> judged(pairs.size());
  parallel_for(pairs.size(), options_.jobs,
               [&](std::size_t i) { judged[i] = decide(pairs[i], config); });

  std::vector<std::size_t> order(pairs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return decision_order(judged[a].decision, judged[b].decision);
  });
  result.decisions.reserve(pairs.size());
  for (auto i : order) {
    auto& j = judged[i];
    if (j.decision.method == Method::LEAD_LLM_STAGE) ++result.escalated_pairs;
    if (j.call) {
      ++result.llm_calls;
      result.llm_attempts += static_cast<std::size_t>(j.call->attempts);
      if (j.call->failed) ++result.llm_failures;
      if (j.call->transport_failure) ++result.endpoint_failures;
      result.calls.push_back(std::move(*j.call));
    }
    result.decisions.push_back(std::move(j.decision));
  }
  result.elapsed_seconds = seconds_since(t0);
  spdlog::info("{}: {} pairs, {} LLM calls, {:.3f} s ({:.3f} s building artifacts)",
               method_name(config), pairs.size(), result.llm_calls, result.elapsed_seconds,
               result.artifact_seconds);
  return result;
}

}  // namespace lead
