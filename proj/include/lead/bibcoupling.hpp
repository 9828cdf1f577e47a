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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lead/model.hpp"

namespace lead {

// Inclusive publication-year interval.
struct TimeWindow {
  int start_year = 2016;
  int end_year = 2023;

  // "start:end", inclusive. Throws Param on malformed or reversed input.
  static TimeWindow parse(std::string_view text);
  std::string str() const;
  bool contains(int year) const { return year >= start_year && year <= end_year; }
  bool operator==(const TimeWindow&) const = default;
};

// Union of references cited by a field's seed authors within a window.
struct FieldCorpus {
  RFCode rf;
  TimeWindow window;
  std::size_t n_seed_authors = 0;
  std::size_t n_papers = 0;
  std::vector<ReferenceId> references;  // sorted, unique
  std::string seed_hash;                // identifies the seed set used
  bool empty_seed_list = false;

  bool contains(const ReferenceId& ref) const;
};

struct CandidateReferences {
  std::size_t n_papers = 0;
  std::vector<ReferenceId> references;  // sorted, unique
};

// Stable 64-bit FNV-1a over the sorted auids, hex encoded.
std::string seed_set_hash(std::vector<std::string> auids);

// `exclude_auid` drops the candidate from its own field corpus when it is
// itself a seed. Work is split across `jobs` threads; the result does not
// depend on the split.
FieldCorpus build_field_corpus(std::span<const AuthorProfile* const> seeds, const RFCode& rf,
                               const TimeWindow& window,
                               std::optional<std::string_view> exclude_auid = std::nullopt,
                               unsigned jobs = 1);

CandidateReferences candidate_reference_set(const AuthorProfile& profile, const TimeWindow& window);

// Shares are counted over distinct references; the ratio's denominator is
// the candidate's distinct in-window reference count.
OverlapResult overlap(const CandidateReferences& candidate, const FieldCorpus& corpus);

// yes iff ratio >= threshold; degenerate overlaps are always no.
Verdict bc_classify(const OverlapResult& result, double threshold);

}  // namespace lead
