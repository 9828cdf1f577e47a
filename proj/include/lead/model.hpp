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

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lead/taxonomy.hpp"

namespace lead {

// Canonical identifier of a cited work: trimmed and ASCII case-folded.
// Reference identity is exact string equality; no fuzzy matching.
class ReferenceId {
 public:
  // Throws InvalidReference if nothing remains after trimming.
  static ReferenceId canonicalize(std::string_view raw);

  const std::string& value() const { return value_; }

  auto operator<=>(const ReferenceId&) const = default;

 private:
  explicit ReferenceId(std::string v) : value_(std::move(v)) {}
  std::string value_;
};

inline ReferenceId canonicalize_reference(std::string_view raw) {
  return ReferenceId::canonicalize(raw);
}

struct RegistryRecord {
  std::string record_id;
  std::string first_name;
  std::string last_name;
  std::string role;
  std::optional<std::string> gender;
  RFCode rf;
  std::string ad;
  std::string university;
  std::optional<std::string> department;
  int year = 2000;
};

struct Publication {
  std::string pub_id;
  int year = 0;
  std::string title;
  std::vector<std::string> keywords;
  std::optional<std::string> abstract_text;
  std::vector<ReferenceId> references;  // deduplicated, first-seen order
  std::vector<std::string> coauthor_auids;
};

struct AuthorProfile {
  std::string auid;
  std::string given_name;
  std::string surname;
  std::string initials;
  std::string full_name;
  std::vector<std::string> affiliations;
  std::vector<Publication> publications;  // ascending by year
};

struct CandidatePair {
  RegistryRecord record;
  std::string auid;
  std::optional<bool> gold;
};

enum class Verdict { Yes, No, Abstain };
enum class Method { BC, LS, LLM, LLM_ENRICHED, LEAD_BC_STAGE, LEAD_LLM_STAGE };

std::string_view to_string(Verdict v);
std::string_view to_string(Method m);
std::optional<Verdict> parse_verdict_name(std::string_view s);
std::optional<Method> parse_method_name(std::string_view s);

// Shared-reference statistics of one candidate against one field corpus.
struct OverlapResult {
  std::size_t n_papers = 0;  // candidate papers inside the window
  std::size_t n_cited = 0;   // distinct candidate references inside the window
  std::size_t n_shared = 0;  // |candidate refs ∩ corpus refs|
  double ratio = 0.0;        // n_shared / n_cited, 0 when degenerate
  bool degenerate = false;   // n_cited == 0

  // Percentage rounded half-up to one decimal, computed exactly on the
  // integer counts (e.g. 2206/2393 -> 92.2).
  double percent_1dp() const;
};

// Inferred field class of a graph node after label spreading.
struct LsPrediction {
  Granularity level = Granularity::ScientificArea;
  std::optional<std::string> class_id;  // nullopt: abstain
  double confidence = 0.0;
  bool tie = false;
  bool in_graph = true;
};

struct DecisionEvidence {
  std::optional<OverlapResult> overlap;
  std::optional<LsPrediction> ls;
  std::optional<std::string> error;  // LLM fallback annotation
  bool empty() const { return !overlap && !ls && !error; }
};

struct Decision {
  std::string record_id;
  std::string auid;
  Verdict verdict = Verdict::No;
  Method method = Method::BC;
  std::optional<double> score;
  std::optional<std::string> explanation;
  DecisionEvidence evidence;
};

// Orders decisions by (record_id, auid) for deterministic output.
bool decision_order(const Decision& a, const Decision& b);

// Half-up rounding of num/den*100 to `decimals` places, exact in integers.
double percent_half_up(std::size_t num, std::size_t den, int decimals = 1);

}  // namespace lead
