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

#include "lead/model.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>

#include "lead/errors.hpp"

namespace lead {

ReferenceId ReferenceId::canonicalize(std::string_view raw) {
  auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
  std::size_t b = 0, e = raw.size();
  while (b < e && is_space(raw[b])) ++b;
  while (e > b && is_space(raw[e - 1])) --e;
  if (b == e) raise(ErrorKind::InvalidReference, "empty reference identifier");
  std::string out(raw.substr(b, e - b));
  // ASCII folding only: non-ASCII UTF-8 bytes pass through unchanged.
  for (char& c : out) {
    auto u = static_cast<unsigned char>(c);
    if (u < 0x80) c = static_cast<char>(std::tolower(u));
  }
  return ReferenceId(std::move(out));
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Yes: return "yes";
    case Verdict::No: return "no";
    case Verdict::Abstain: return "abstain";
  }
  return "no";
}

std::string_view to_string(Method m) {
  switch (m) {
    case Method::BC: return "BC";
    case Method::LS: return "LS";
    case Method::LLM: return "LLM";
    case Method::LLM_ENRICHED: return "LLM_ENRICHED";
    case Method::LEAD_BC_STAGE: return "LEAD_BC_STAGE";
    case Method::LEAD_LLM_STAGE: return "LEAD_LLM_STAGE";
  }
  return "BC";
}

std::optional<Verdict> parse_verdict_name(std::string_view s) {
  for (Verdict v : {Verdict::Yes, Verdict::No, Verdict::Abstain})
    if (to_string(v) == s) return v;
  return std::nullopt;
}

std::optional<Method> parse_method_name(std::string_view s) {
  for (Method m : {Method::BC, Method::LS, Method::LLM, Method::LLM_ENRICHED,
                   Method::LEAD_BC_STAGE, Method::LEAD_LLM_STAGE})
    if (to_string(m) == s) return m;
  return std::nullopt;
}

bool decision_order(const Decision& a, const Decision& b) {
  if (a.record_id != b.record_id) return a.record_id < b.record_id;
  return a.auid < b.auid;
}

double percent_half_up(std::size_t num, std::size_t den, int decimals) {
  if (den == 0) return 0.0;
  std::uint64_t scale = 100;
  for (int i = 0; i < decimals; ++i) scale *= 10;
  // floor((num * scale) / den + 1/2) == floor((2 * num * scale + den) / (2 * den))
  const auto n = static_cast<unsigned __int128>(num) * scale * 2 + den;
  const auto units = static_cast<std::uint64_t>(n / (static_cast<unsigned __int128>(den) * 2));
  return static_cast<double>(units) / static_cast<double>(scale / 100);
}

double OverlapResult::percent_1dp() const {
  return degenerate ? 0.0 : percent_half_up(n_shared, n_cited, 1);
}

}  // namespace lead
