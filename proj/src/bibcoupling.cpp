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

#include "lead/bibcoupling.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <iterator>

#include "lead/errors.hpp"
#include "lead/parallel.hpp"

namespace lead {

namespace {

void sort_unique(std::vector<ReferenceId>& refs) {
  std::sort(refs.begin(), refs.end());
  refs.erase(std::unique(refs.begin(), refs.end()), refs.end());
}

std::optional<int> to_int(std::string_view s) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace

TimeWindow TimeWindow::parse(std::string_view text) {
  auto colon = text.find(':');
  std::optional<int> a, b;
  if (colon != std::string_view::npos) {
    a = to_int(text.substr(0, colon));
    b = to_int(text.substr(colon + 1));
  }
  if (!a || !b) raise(ErrorKind::Param, "window '" + std::string(text) + "' must be start:end");
  if (*a > *b) raise(ErrorKind::Param, "window '" + std::string(text) + "' has start > end");
  return TimeWindow{*a, *b};
}

std::string TimeWindow::str() const {
  return std::to_string(start_year) + ":" + std::to_string(end_year);
}

bool FieldCorpus::contains(const ReferenceId& ref) const {
  return std::binary_search(references.begin(), references.end(), ref);
}

std::string seed_set_hash(std::vector<std::string> auids) {
  std::sort(auids.begin(), auids.end());
  std::uint64_t h = 14695981039346656037ull;
  auto mix = [&h](unsigned char c) {
    h ^= c;
    h *= 1099511628211ull;
  };
  for (const auto& a : auids) {
    for (char c : a) mix(static_cast<unsigned char>(c));
    mix(0);
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

FieldCorpus build_field_corpus(std::span<const AuthorProfile* const> seeds, const RFCode& rf,
                               const TimeWindow& window, std::optional<std::string_view> exclude_auid,
                               unsigned jobs) {
  std::vector<const AuthorProfile*> used;
  used.reserve(seeds.size());
  for (const auto* p : seeds)
    if (!exclude_auid || p->auid != *exclude_auid) used.push_back(p);

  FieldCorpus corpus;
  corpus.rf = rf;
  corpus.window = window;
  corpus.n_seed_authors = used.size();
  corpus.empty_seed_list = used.empty();
  {
    std::vector<std::string> ids;
    for (const auto* p : used) ids.push_back(p->auid);
    corpus.seed_hash = seed_set_hash(std::move(ids));
  }
  if (used.empty()) return corpus;

  // Per-chunk partial unions, merged afterwards.
  const std::size_t n_chunks = std::min<std::size_t>(used.size(), std::max(1u, jobs) * 4);
  std::vector<std::vector<ReferenceId>> partial(n_chunks);
  std::vector<std::size_t> papers(n_chunks, 0);
  parallel_for(n_chunks, jobs, [&](std::size_t c) {
    for (std::size_t i = c; i < used.size(); i += n_chunks) {
      for (const auto& pub : used[i]->publications) {
        if (!window.contains(pub.year)) continue;
        ++papers[c];
        partial[c].insert(partial[c].end(), pub.references.begin(), pub.references.end());
      }
    }
    sort_unique(partial[c]);
  });

  std::size_t total = 0;
  for (std::size_t c = 0; c < n_chunks; ++c) {
    corpus.n_papers += papers[c];
    total += partial[c].size();
  }
  corpus.references.reserve(total);
  for (auto& part : partial)
    corpus.references.insert(corpus.references.end(), std::make_move_iterator(part.begin()),
                             std::make_move_iterator(part.end()));
  sort_unique(corpus.references);
  return corpus;
}

CandidateReferences candidate_reference_set(const AuthorProfile& profile, const TimeWindow& window) {
  CandidateReferences out;
  for (const auto& pub : profile.publications) {
    if (!window.contains(pub.year)) continue;
    ++out.n_papers;
    out.references.insert(out.references.end(), pub.references.begin(), pub.references.end());
  }
  sort_unique(out.references);
  return out;
}

OverlapResult overlap(const CandidateReferences& candidate, const FieldCorpus& corpus) {
  OverlapResult r;
  r.n_papers = candidate.n_papers;
  r.n_cited = candidate.references.size();
  // Both sides are sorted and unique: a linear merge counts the intersection.
  auto a = candidate.references.begin();
  auto b = corpus.references.begin();
  while (a != candidate.references.end() && b != corpus.references.end()) {
    if (*a < *b) ++a;
    else if (*b < *a) ++b;
    else {
      ++r.n_shared;
      ++a;
      ++b;
    }
  }
  r.degenerate = r.n_cited == 0;
  r.ratio = r.degenerate ? 0.0 : static_cast<double>(r.n_shared) / static_cast<double>(r.n_cited);
  return r;
}

Verdict bc_classify(const OverlapResult& result, double threshold) {
  if (result.degenerate) return Verdict::No;
  return result.ratio >= threshold ? Verdict::Yes : Verdict::No;
}

}  // namespace lead
