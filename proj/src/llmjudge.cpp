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

#include "lead/llmjudge.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <numeric>
#include <random>

#include <json.hpp>
#include <spdlog/fmt/fmt.h>
#include <spdlog/spdlog.h>

#include "lead/errors.hpp"

namespace lead {

namespace {

using json = nlohmann::json;

constexpr std::string_view kSystemText =
    "Your task is to evaluate the candidate to determine if they match the specified researcher "
    "profile.";

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 14695981039346656037ull;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return h;
}

std::string join(const std::vector<std::string>& items, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

// Indices of the publications to show, ascending (hence chronological).
std::vector<std::size_t> pick_papers(const AuthorProfile& profile, const PromptConfig& config) {
  std::vector<std::size_t> idx(profile.publications.size());
  std::iota(idx.begin(), idx.end(), 0);
  if (!config.sample || idx.size() <= config.sample->k) return idx;
  // Partial Fisher-Yates on raw mt19937_64 output; the standard
  // distributions are implementation-defined and would break cross-platform
  // reproducibility.
  std::mt19937_64 rng(config.sample->seed ^ fnv1a(profile.auid));
  const std::size_t k = config.sample->k;
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng() % (idx.size() - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(k);
  std::sort(idx.begin(), idx.end());
  return idx;
}

std::string field_description(const RegistryRecord& record, const TaxonomyTable* taxonomy) {
  if (taxonomy) {
    if (!record.ad.empty())
      if (auto label = taxonomy->ad_label(record.ad)) return *label;
  }
  const std::string fallback = record.ad.empty() ? record.rf.str() : record.ad;
  spdlog::warn("no AD label for record {} ({}); using the raw code", record.record_id, fallback);
  return fallback;
}

std::string question(const RegistryRecord& record, const TaxonomyTable* taxonomy) {
  return fmt::format(
      "Is the following candidate a match for the researcher {} {}, affiliated with {}, working "
      "in the Italian academic field of {}?\n\n",
      record.first_name, record.last_name, record.university, field_description(record, taxonomy));
}

std::string closing(const RegistryRecord& record, std::string_view auid,
                    std::string_view candidate_block) {
  std::string out = "Here is the candidate:\n";
  out += candidate_block;
  out += "\n\nBased on the provided information, do you believe this candidate is the best match?\n\n";
  out += "Please respond with \"yes\" or \"no\" and a brief explanation.\n\n";
  out += "Respond only in JSON format as follows:\n\n";
  out += "{\n";
  out += "  \"cerca_univ_id\": " + json(record.record_id).dump() + ",\n";
  out += "  \"scopus_candidate_id\": " + json(std::string(auid)).dump() + ",\n";
  out += "  \"match\": \"yes\" or \"no\",\n";
  out += "  \"explanation\": \"Your explanation here.\"\n";
  out += "}";
  return out;
}

std::string labeled_line(std::string_view name, const LabeledCode& c) {
  std::string line = fmt::format("   - {}: {}", name, c.code);
  if (c.label) line += " - " + *c.label;
  return line + "\n";
}

std::string lower_trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  std::string out(s.substr(b, e - b));
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string id_field(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) raise(ErrorKind::MissingField, key);
  if (it->is_string()) return it->get<std::string>();
  if (it->is_number_integer()) return std::to_string(it->get<long long>());
  if (it->is_number_unsigned()) return std::to_string(it->get<unsigned long long>());
  return it->dump();
}

// End of the balanced object starting at `open`, honoring string literals.
std::optional<std::size_t> matching_brace(std::string_view s, std::size_t open) {
  int depth = 0;
  bool in_string = false;
  for (std::size_t i = open; i < s.size(); ++i) {
    char c = s[i];
    if (in_string) {
      if (c == '\\') ++i;
      else if (c == '"') in_string = false;
      continue;
    }
    if (c == '"') in_string = true;
    else if (c == '{') ++depth;
    else if (c == '}' && --depth == 0) return i;
  }
  return std::nullopt;
}

}  // namespace

std::string_view to_string(MetadataMode m) {
  switch (m) {
    case MetadataMode::Keywords: return "keywords";
    case MetadataMode::KeywordsTitles: return "keywords_titles";
    case MetadataMode::KeywordsTitlesAbstracts: return "keywords_titles_abstracts";
  }
  return "keywords_titles";
}

std::optional<MetadataMode> parse_metadata_mode(std::string_view s) {
  for (auto m : {MetadataMode::Keywords, MetadataMode::KeywordsTitles,
                 MetadataMode::KeywordsTitlesAbstracts})
    if (to_string(m) == s) return m;
  return std::nullopt;
}

BcEvidence bc_evidence(const OverlapResult& o) {
  return BcEvidence{o.percent_1dp(), o.n_papers, o.n_cited, o.n_shared};
}

std::optional<LsEvidence> ls_evidence(const LsPrediction& p, const TaxonomyTable* taxonomy) {
  if (!p.class_id) return std::nullopt;
  auto lbl = [&](Granularity g, const std::string& code) -> std::optional<std::string> {
    return taxonomy ? taxonomy->label(g, code) : std::nullopt;
  };
  LsEvidence ev;
  std::optional<RFCode> rf;
  switch (p.level) {
    case Granularity::AcademicDiscipline:
      ev.field = LabeledCode{*p.class_id, lbl(Granularity::AcademicDiscipline, *p.class_id)};
      if (taxonomy) rf = taxonomy->rf_of_ad(*p.class_id);
      break;
    case Granularity::RecruitmentField:
      rf = RFCode::parse(*p.class_id);
      ev.field = LabeledCode{rf->str(), lbl(Granularity::RecruitmentField, rf->str())};
      break;
    case Granularity::RecruitmentFieldGroup: {
      const auto& g = *p.class_id;
      ev.group = LabeledCode{g, lbl(Granularity::RecruitmentFieldGroup, g)};
      const auto area = g.substr(0, 2);
      ev.area = LabeledCode{area, lbl(Granularity::ScientificArea, area)};
      return ev;
    }
    case Granularity::ScientificArea:
      ev.area = LabeledCode{*p.class_id, lbl(Granularity::ScientificArea, *p.class_id)};
      return ev;
  }
  if (rf) {
    ev.group = LabeledCode{rf->group_str(), lbl(Granularity::RecruitmentFieldGroup, rf->group_str())};
    ev.area = LabeledCode{rf->area(), lbl(Granularity::ScientificArea, rf->area())};
  }
  return ev;
}

std::string render_candidate_block(const AuthorProfile& profile, const PromptConfig& config) {
  std::string out;
  out += "Author ID: " + profile.auid + "\n";
  out += "Name: " + profile.full_name + "\n";
  out += "Surname: " + profile.surname + "\n";
  out += "Initials: " + profile.initials + "\n";
  out += "Affiliations: " + join(profile.affiliations, "; ") + "\n";
  out += "\nPublications (chronological order):";
  for (auto i : pick_papers(profile, config)) {
    const auto& pub = profile.publications[i];
    out += "\n- [" + std::to_string(pub.year) + "] ";
    if (config.mode != MetadataMode::Keywords) out += pub.title + " - ";
    out += "Keywords: " + join(pub.keywords, ", ");
    if (config.mode == MetadataMode::KeywordsTitlesAbstracts)
      out += " - Abstract: " + pub.abstract_text.value_or("");
  }
  return out;
}

PromptPair render_prompt(const RegistryRecord& record, std::string_view auid,
                         std::string_view candidate_block, const TaxonomyTable* taxonomy) {
  return PromptPair{std::string(kSystemText),
                    question(record, taxonomy) + closing(record, auid, candidate_block)};
}

PromptPair render_enriched_prompt(const RegistryRecord& record, std::string_view auid,
                                  std::string_view candidate_block,
                                  const EnrichmentEvidence& evidence,
                                  const TaxonomyTable* taxonomy) {
  if (evidence.empty()) {
    spdlog::warn("enriched prompt for ({}, {}) has no evidence; using the plain prompt",
                 record.record_id, auid);
    return render_prompt(record, auid, candidate_block, taxonomy);
  }
  std::string user = question(record, taxonomy);
  user +=
      "You also have additional information obtained through automated methods, which may "
      "contain inaccuracies.\n"
      "Please use this information critically to support your evaluation:\n\n";
  int item = 0;
  if (evidence.bc) {
    const auto& bc = *evidence.bc;
    user += fmt::format(
        "{}. An analysis of citations through a citation network has shown that {:.1f}% of the "
        "citations in the candidate's {} papers (which cite a total of {} papers) align with those "
        "of the academic community, with {} relevant citations found in the network.\n",
        ++item, bc.overlap_pct, bc.n_papers, bc.n_cited, bc.n_matches);
  }
  if (evidence.ls) {
    user += fmt::format(
        "{}. A method based on a co-authorship network has predicted the following academic "
        "classification:\n",
        ++item);
    if (evidence.ls->field) user += labeled_line("Recruitment field", *evidence.ls->field);
    if (evidence.ls->group) user += labeled_line("Macro recruitment field", *evidence.ls->group);
    if (evidence.ls->area) user += labeled_line("Area", *evidence.ls->area);
  }
  user += "\n";
  user += closing(record, auid, candidate_block);
  return PromptPair{std::string(kSystemText), std::move(user)};
}

LlmVerdict parse_verdict(std::string_view raw) {
  std::optional<json> found;
  for (auto open = raw.find('{'); open != std::string_view::npos; open = raw.find('{', open + 1)) {
    auto close = matching_brace(raw, open);
    if (!close) continue;
    auto parsed = json::parse(raw.substr(open, *close - open + 1), nullptr, false);
    if (!parsed.is_discarded() && parsed.is_object()) {
      found = std::move(parsed);
      break;
    }
  }
  if (!found) raise(ErrorKind::NoJsonFound, "no JSON object in model output");
  const json& obj = *found;

  LlmVerdict v;
  v.cerca_univ_id = id_field(obj, "cerca_univ_id");
  v.scopus_candidate_id = id_field(obj, "scopus_candidate_id");
  auto m = obj.find("match");
  if (m == obj.end()) raise(ErrorKind::MissingField, "match");
  const std::string match = m->is_string() ? lower_trim(m->get<std::string>()) : m->dump();
  if (match == "yes") v.match = true;
  else if (match == "no") v.match = false;
  else raise(ErrorKind::InvalidMatchValue, "match is '" + match + "'");
  auto e = obj.find("explanation");
  if (e == obj.end()) raise(ErrorKind::MissingField, "explanation");
  v.explanation = e->is_string() ? e->get<std::string>() : e->dump();
  return v;
}

std::string serialize_verdict(const LlmVerdict& v) {
  nlohmann::ordered_json j;
  j["cerca_univ_id"] = v.cerca_univ_id;
  j["scopus_candidate_id"] = v.scopus_candidate_id;
  j["match"] = v.match ? "yes" : "no";
  j["explanation"] = v.explanation;
  return j.dump();
}

JudgeOutcome judge(const CandidatePair& pair, const AuthorProfile& profile,
                   const PromptConfig& config, const std::optional<EnrichmentEvidence>& evidence,
                   ChatClient& client, const EndpointConfig& endpoint,
                   const TaxonomyTable* taxonomy) {
  const auto block = render_candidate_block(profile, config);
  const auto prompt = evidence ? render_enriched_prompt(pair.record, pair.auid, block, *evidence, taxonomy)
                               : render_prompt(pair.record, pair.auid, block, taxonomy);
  ChatRequest request{pair.record.record_id, pair.auid, endpoint.model_name,
                      prompt.system,         prompt.user, endpoint.decode};

  JudgeOutcome out;
  out.decision.record_id = pair.record.record_id;
  out.decision.auid = pair.auid;
  out.decision.method = evidence ? Method::LLM_ENRICHED : Method::LLM;

  std::string last_error;
  const int attempts = std::max(1, endpoint.max_retries);
  for (int a = 1; a <= attempts; ++a) {
    out.attempts = a;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      const auto text = client.complete(request);
      out.latency_ms.push_back(
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
      auto verdict = parse_verdict(text);
      if (verdict.cerca_univ_id != pair.record.record_id || verdict.scopus_candidate_id != pair.auid)
        raise(ErrorKind::MissingField, "response ids (" + verdict.cerca_univ_id + ", " +
                                           verdict.scopus_candidate_id + ") do not echo the request");
      out.decision.verdict = verdict.match ? Verdict::Yes : Verdict::No;
      out.decision.explanation = verdict.explanation;
      out.transport_failure = false;
      return out;
    } catch (const Error& e) {
      if (out.latency_ms.size() < static_cast<std::size_t>(a))
        out.latency_ms.push_back(
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
      last_error = e.what();
      out.transport_failure = e.is_endpoint();
      spdlog::debug("({}, {}) attempt {}/{} failed: {}", pair.record.record_id, pair.auid, a,
                    attempts, last_error);
    }
  }
  spdlog::warn("({}, {}) LLM judge gave up after {} attempts: {}", pair.record.record_id, pair.auid,
               attempts, last_error);
  out.failed = true;
  out.decision.verdict = Verdict::No;
  out.decision.evidence.error =
      "llm failure after " + std::to_string(attempts) + " attempts: " + last_error;
  return out;
}

}  // namespace lead
