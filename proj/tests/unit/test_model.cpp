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

#include <doctest.h>

#include <algorithm>
#include <random>
#include <string>

#include "lead/errors.hpp"
#include "lead/model.hpp"

using namespace lead;

TEST_CASE("reference canonicalization trims and case-folds") {
  CHECK(ReferenceId::canonicalize(" 2-s2.0-001 ").value() == "2-s2.0-001");
  CHECK(ReferenceId::canonicalize("DOI:10.1/ABC").value() == "doi:10.1/abc");
  CHECK(ReferenceId::canonicalize("\t85012345678\n").value() == "85012345678");
}

TEST_CASE("blank reference is rejected") {
  CHECK_THROWS_AS(ReferenceId::canonicalize("   "), Error);
  try {
    ReferenceId::canonicalize("");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidReference);
  }
}

TEST_CASE("non-ASCII bytes pass through canonicalization") {
  CHECK(ReferenceId::canonicalize("Università").value() == "università");
}

TEST_CASE("canonicalization is idempotent on random strings") {
  std::mt19937_64 rng(11);
  const std::string alphabet = "aZ09 -_./:\t\xc3\xa0";
  for (int trial = 0; trial < 2000; ++trial) {
    std::string s;
    const auto len = rng() % 12;
    for (std::size_t i = 0; i < len; ++i) s.push_back(alphabet[rng() % alphabet.size()]);
    bool blank = std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
    if (blank) {
      CHECK_THROWS_AS(ReferenceId::canonicalize(s), Error);
      continue;
    }
    const auto once = ReferenceId::canonicalize(s);
    CHECK(ReferenceId::canonicalize(once.value()) == once);
  }
}

TEST_CASE("percentages round half-up on exact integers") {
  CHECK(percent_half_up(2206, 2393) == doctest::Approx(92.2));
  CHECK(percent_half_up(27, 470) == doctest::Approx(5.7));
  CHECK(percent_half_up(23, 597) == doctest::Approx(3.9));
  CHECK(percent_half_up(1, 60) == doctest::Approx(1.7));
  // 1/8 = 12.5% exactly, 1/16 = 6.25% exactly: ties go up.
  CHECK(percent_half_up(1, 8, 0) == doctest::Approx(13.0));
  CHECK(percent_half_up(1, 16, 1) == doctest::Approx(6.3));
  CHECK(percent_half_up(0, 0) == 0.0);
  CHECK(percent_half_up(5, 5) == doctest::Approx(100.0));
}

TEST_CASE("overlap percent is zero when degenerate") {
  OverlapResult r;
  r.degenerate = true;
  CHECK(r.percent_1dp() == 0.0);
  r = OverlapResult{130, 2393, 2206, 2206.0 / 2393.0, false};
  CHECK(r.percent_1dp() == doctest::Approx(92.2));
}

TEST_CASE("verdict and method names round-trip") {
  for (auto v : {Verdict::Yes, Verdict::No, Verdict::Abstain})
    CHECK(parse_verdict_name(to_string(v)) == v);
  for (auto m : {Method::BC, Method::LS, Method::LLM, Method::LLM_ENRICHED, Method::LEAD_BC_STAGE,
                 Method::LEAD_LLM_STAGE})
    CHECK(parse_method_name(to_string(m)) == m);
  CHECK_FALSE(parse_verdict_name("maybe").has_value());
}

TEST_CASE("decisions order by record then auid") {
  Decision a{"14", "7103169675"}, b{"14", "57194011914"}, c{"15", "1"};
  std::vector<Decision> v{c, a, b};
  std::sort(v.begin(), v.end(), decision_order);
  CHECK(v[0].auid == "57194011914");
  CHECK(v[1].auid == "7103169675");
  CHECK(v[2].record_id == "15");
}
