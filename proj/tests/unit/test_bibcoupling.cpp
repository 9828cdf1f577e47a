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

#include <random>
#include <set>
#include <sstream>

#include "lead/bibcoupling.hpp"
#include "lead/corpus_cache.hpp"
#include "lead/errors.hpp"
#include "lead/ingest.hpp"
#include "support/registry_fixture.hpp"

using namespace lead;

namespace {

Publication pub(std::string id, int year, std::vector<std::string> refs) {
  Publication p;
  p.pub_id = std::move(id);
  p.year = year;
  std::set<ReferenceId> seen;
  for (const auto& r : refs) {
    auto c = ReferenceId::canonicalize(r);
    if (seen.insert(c).second) p.references.push_back(c);
  }
  return p;
}

AuthorProfile author(std::string auid, std::vector<Publication> pubs) {
  AuthorProfile a;
  a.auid = std::move(auid);
  a.publications = std::move(pubs);
  return a;
}

FieldCorpus corpus_of(const std::vector<AuthorProfile>& seeds, const TimeWindow& w = {},
                      std::optional<std::string_view> exclude = std::nullopt, unsigned jobs = 1) {
  std::vector<const AuthorProfile*> ptrs;
  for (const auto& s : seeds) ptrs.push_back(&s);
  return build_field_corpus(ptrs, parse_rf("09/E3"), w, exclude, jobs);
}

// Candidate with `n` distinct references of which the first `shared` are in
// the corpus built by corpus_with().
CandidateReferences candidate(std::size_t n, std::size_t shared) {
  CandidateReferences c;
  c.n_papers = 1;
  for (std::size_t i = 0; i < n; ++i)
    c.references.push_back(ReferenceId::canonicalize(
        i < shared ? fmt::format("c{:07}", i) : fmt::format("private{:07}", i)));
  std::sort(c.references.begin(), c.references.end());
  return c;
}

FieldCorpus corpus_with(std::size_t n) {
  FieldCorpus f;
  for (std::size_t i = 0; i < n; ++i) f.references.push_back(ReferenceId::canonicalize(fmt::format("c{:07}", i)));
  std::sort(f.references.begin(), f.references.end());
  return f;
}

}  // namespace

TEST_CASE("time windows") {
  const auto w = TimeWindow::parse("2016:2023");
  CHECK(w.start_year == 2016);
  CHECK(w.end_year == 2023);
  CHECK(w.str() == "2016:2023");
  CHECK(w.contains(2016));
  CHECK(w.contains(2023));
  CHECK_FALSE(w.contains(2015));
  CHECK_THROWS_AS(TimeWindow::parse("2023:2016"), Error);
  CHECK_THROWS_AS(TimeWindow::parse("2016-2023"), Error);
  CHECK_THROWS_AS(TimeWindow::parse("abc:2023"), Error);
}

TEST_CASE("corpus deduplicates references") {
  const auto c = corpus_of({author("1", {pub("p", 2018, {"a", "b", "A", "b "})})});
  CHECK(c.n_papers == 1);
  CHECK(c.n_seed_authors == 1);
  REQUIRE(c.references.size() == 2);
  CHECK(c.references[0].value() == "a");
  CHECK(c.references[1].value() == "b");
}

TEST_CASE("window filter drops out-of-window papers") {
  const auto c = corpus_of({author("1", {pub("old", 2016, {"x"}), pub("new", 2021, {"y"})})},
                           TimeWindow{2020, 2023});
  CHECK(c.n_papers == 1);
  REQUIRE(c.references.size() == 1);
  CHECK(c.references[0].value() == "y");
}

TEST_CASE("empty seed list gives a flagged empty corpus") {
  const auto c = corpus_of({});
  CHECK(c.empty_seed_list);
  CHECK(c.references.empty());
  CHECK(c.n_papers == 0);
}

TEST_CASE("self-exclusion removes the candidate from its own corpus") {
  std::vector<AuthorProfile> seeds{author("1", {pub("a", 2020, {"r1"})}),
                                   author("2", {pub("b", 2020, {"r2"})})};
  const auto all = corpus_of(seeds);
  const auto without = corpus_of(seeds, {}, std::string_view("2"));
  CHECK(all.references.size() == 2);
  CHECK(without.references.size() == 1);
  CHECK(without.n_seed_authors == 1);
  CHECK(all.seed_hash != without.seed_hash);
}

TEST_CASE("seed hash ignores order") {
  CHECK(seed_set_hash({"1", "2", "3"}) == seed_set_hash({"3", "1", "2"}));
  CHECK(seed_set_hash({"1", "2"}) != seed_set_hash({"1", "3"}));
  CHECK(seed_set_hash({}).size() == 16);
}

TEST_CASE("candidate reference set") {
  const auto a = author("c", {pub("p1", 2015, {"z"}), pub("p2", 2017, {"a", "b"}), pub("p3", 2019, {"b", "c"})});
  const auto s = candidate_reference_set(a, TimeWindow{});
  CHECK(s.n_papers == 2);
  CHECK(s.references.size() == 3);
  const auto none = candidate_reference_set(author("d", {pub("p", 2001, {"q"})}), TimeWindow{});
  CHECK(none.n_papers == 0);
  CHECK(none.references.empty());
}

TEST_CASE("overlap examples at reference counts") {
  const auto big = corpus_with(10000);
  auto r = overlap(candidate(2393, 2206), big);
  CHECK(r.n_cited == 2393);
  CHECK(r.n_shared == 2206);
  CHECK(r.ratio == doctest::Approx(0.9220).epsilon(1e-4));
  CHECK(r.percent_1dp() == doctest::Approx(92.2));
  CHECK(bc_classify(r, 0.15) == Verdict::Yes);

  r = overlap(candidate(470, 27), big);
  CHECK(r.ratio == doctest::Approx(0.0574).epsilon(1e-3));
  CHECK(r.percent_1dp() == doctest::Approx(5.7));
  CHECK(bc_classify(r, 0.15) == Verdict::No);

  r = overlap(candidate(597, 23), big);
  CHECK(r.percent_1dp() == doctest::Approx(3.9));
  r = overlap(candidate(60, 1), big);
  CHECK(r.percent_1dp() == doctest::Approx(1.7));

  r = overlap(candidate(50, 50), big);
  CHECK(r.ratio == 1.0);
}

TEST_CASE("threshold boundary and degenerate input") {
  OverlapResult r{1, 20, 3, 0.15, false};
  CHECK(bc_classify(r, 0.15) == Verdict::Yes);
  r.ratio = 0.1499;
  CHECK(bc_classify(r, 0.15) == Verdict::No);
  const auto d = overlap(CandidateReferences{}, corpus_with(10));
  CHECK(d.degenerate);
  CHECK(d.ratio == 0.0);
  CHECK(bc_classify(d, 0.01) == Verdict::No);
}

TEST_CASE("overlap properties on random instances") {
  std::mt19937_64 rng(2024);
  auto random_ids = [&](std::size_t n, std::size_t universe) {
    std::vector<std::string> v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(fmt::format("r{}", rng() % universe));
    return v;
  };
  for (int trial = 0; trial < 300; ++trial) {
    const auto universe = 5 + rng() % 60;
    const auto seed_raw = random_ids(rng() % 50, universe);
    const auto cand_raw = random_ids(rng() % 50, universe);
    const auto seeds = std::vector<AuthorProfile>{author("s", {pub("p", 2018, seed_raw)})};
    const auto corpus = corpus_of(seeds);
    const auto cand = candidate_reference_set(author("c", {pub("q", 2020, cand_raw)}), TimeWindow{});
    const auto r = overlap(cand, corpus);

    // naive double loop over canonical distinct values
    std::set<std::string> cs, ks;
    for (const auto& s : cand_raw) cs.insert(ReferenceId::canonicalize(s).value());
    for (const auto& s : seed_raw) ks.insert(ReferenceId::canonicalize(s).value());
    std::size_t naive = 0;
    for (const auto& a : cs)
      for (const auto& b : ks)
        if (a == b) ++naive;
    CHECK(r.n_shared == naive);
    CHECK(r.n_cited == cs.size());
    CHECK(r.ratio >= 0.0);
    CHECK(r.ratio <= 1.0);
    CHECK(r.n_shared <= std::min(r.n_cited, corpus.references.size()));

    // duplicating raw references changes nothing
    auto dup = cand_raw;
    dup.insert(dup.end(), cand_raw.begin(), cand_raw.end());
    const auto r2 = overlap(candidate_reference_set(author("c", {pub("q", 2020, dup)}), TimeWindow{}), corpus);
    CHECK(r2.n_shared == r.n_shared);
    CHECK(r2.n_cited == r.n_cited);

    // adding references to the corpus never lowers the overlap
    auto more = seed_raw;
    const auto extra = random_ids(10, universe);
    more.insert(more.end(), extra.begin(), extra.end());
    const auto bigger = corpus_of({author("s", {pub("p", 2018, more)})});
    const auto r3 = overlap(cand, bigger);
    CHECK(r3.n_shared >= r.n_shared);
    CHECK(r3.ratio >= r.ratio);
  }
}

TEST_CASE("widening the window never shrinks the corpus") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Publication> pubs;
    for (int i = 0; i < 20; ++i)
      pubs.push_back(pub(fmt::format("p{}", i), 2010 + static_cast<int>(rng() % 14),
                         {fmt::format("r{}", rng() % 40), fmt::format("r{}", rng() % 40)}));
    const std::vector<AuthorProfile> seeds{author("s", pubs)};
    const int a = 2010 + static_cast<int>(rng() % 14);
    const int b = a + static_cast<int>(rng() % 5);
    const auto narrow = corpus_of(seeds, TimeWindow{a, b});
    const auto wide = corpus_of(seeds, TimeWindow{a - 2, b + 2});
    CHECK(std::includes(wide.references.begin(), wide.references.end(), narrow.references.begin(),
                        narrow.references.end()));
  }
}

TEST_CASE("parallel corpus build equals serial build") {
  std::vector<AuthorProfile> seeds;
  for (int s = 0; s < 37; ++s) {
    std::vector<Publication> pubs;
    for (int p = 0; p < 5; ++p)
      pubs.push_back(pub(fmt::format("{}-{}", s, p), 2016 + p, {fmt::format("r{}", s * 7 + p), fmt::format("r{}", p)}));
    seeds.push_back(author(std::to_string(s), pubs));
  }
  const auto serial = corpus_of(seeds, {}, std::nullopt, 1);
  const auto parallel = corpus_of(seeds, {}, std::nullopt, 8);
  CHECK(serial.references == parallel.references);
  CHECK(serial.n_papers == parallel.n_papers);
}

TEST_CASE("corpus cache round-trips and rejects mismatches") {
  lead::testing::TempDir dir("cache");
  std::vector<AuthorProfile> seeds{author("1", {pub("a", 2020, {"r1", "weird%ref", "x"})})};
  const auto c = corpus_of(seeds);
  CorpusCache cache(dir.path());
  CHECK_FALSE(cache.get(c.rf, c.window, c.seed_hash).has_value());
  cache.put(c);
  const auto back = cache.get(c.rf, c.window, c.seed_hash);
  REQUIRE(back.has_value());
  CHECK(back->references == c.references);
  CHECK(back->n_papers == c.n_papers);
  CHECK(back->n_seed_authors == c.n_seed_authors);
  CHECK_FALSE(cache.get(c.rf, TimeWindow{2020, 2023}, c.seed_hash).has_value());
  CHECK_FALSE(cache.get(c.rf, c.window, "0000000000000000").has_value());

  std::stringstream ss;
  write_corpus(ss, c);
  const auto parsed = read_corpus(ss, "mem");
  CHECK(parsed.references == c.references);

  std::stringstream bad("not a corpus\n");
  CHECK_THROWS_AS(read_corpus(bad, "mem"), Error);
}

TEST_CASE("table 5 corpus counts at full scale") {
  lead::testing::TempDir dir("t5");
  lead::testing::write_fixture(lead::testing::make_registry_fixture(), dir.path());
  const auto data = Dataset::load(DatasetPaths::in_directory(dir.path()));
  const auto seeds = data.seed_profiles(parse_rf("09/E3"));
  const auto c = build_field_corpus(seeds, parse_rf("09/E3"), TimeWindow{2016, 2023});
  CHECK(c.n_seed_authors == 271);
  CHECK(c.n_papers == 12912);
  CHECK(c.references.size() == 232934);
  const auto r14 = overlap(candidate_reference_set(*data.profile(lead::testing::kRossiAuid), TimeWindow{}), c);
  CHECK(r14.n_papers == 130);
  CHECK(r14.n_cited == 2393);
  CHECK(r14.n_shared == 2206);
  const auto r15 = overlap(candidate_reference_set(*data.profile(lead::testing::kRossiHomonymAuid), TimeWindow{}), c);
  CHECK(r15.n_papers == 26);
  CHECK(r15.n_cited == 470);
  CHECK(r15.n_shared == 27);
}
