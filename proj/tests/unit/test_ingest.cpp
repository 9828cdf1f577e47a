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
#include <functional>
#include <string>

#include "lead/bibcoupling.hpp"
#include "lead/errors.hpp"
#include "lead/ingest.hpp"
#include "support/registry_fixture.hpp"

using namespace lead;

namespace {

const char* kRegistryHeader =
    "record_id,first_name,last_name,role,gender,rf,ad,university,department,year\n";
const char* kGoldHeader = "record_id,first_name,last_name,rf,ad,university,auid,correct\n";

struct Caught {
  ErrorKind kind;
  std::string what;
};

Caught catch_error(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return {e.kind(), e.what()};
  }
  FAIL("expected an error");
  return {ErrorKind::Io, ""};
}

}  // namespace

TEST_CASE("registry row as in the namesake example") {
  const auto rows = parse_registry(
      std::string(kRegistryHeader) +
          "14,DAVIDE,ROSSI,Associate Professor,Male,09/E3,ING-INF/01,Bologna,"
          "\"Electrical, Electronic and Information Engineering \"\"Guglielmo Marconi\"\"\",2022\n",
      "registry.csv");
  REQUIRE(rows.size() == 1);
  const auto& r = rows[0];
  CHECK(r.record_id == "14");
  CHECK(r.first_name == "DAVIDE");
  CHECK(r.last_name == "ROSSI");
  CHECK(r.rf == parse_rf("09/E3"));
  CHECK(r.ad == "ING-INF/01");
  CHECK(r.university == "Bologna");
  CHECK(r.year == 2022);
  CHECK(r.gender == "Male");
  CHECK(r.department == "Electrical, Electronic and Information Engineering \"Guglielmo Marconi\"");
}

TEST_CASE("header-only registry is empty") {
  CHECK(parse_registry(kRegistryHeader, "registry.csv").empty());
}

TEST_CASE("malformed recruitment field is a schema error at its line") {
  const auto e = catch_error([] {
    parse_registry(std::string(kRegistryHeader) +
                       "1,A,B,Researcher,,09/E3,X,Pisa,,2020\n"
                       "2,A,B,Researcher,,9/E3,X,Pisa,,2020\n",
                   "registry.csv");
  });
  CHECK(e.kind == ErrorKind::Schema);
  CHECK(e.what.find("registry.csv:3") != std::string::npos);
}

TEST_CASE("registry rejects duplicate ids, old years and missing columns") {
  CHECK(catch_error([] {
          parse_registry(std::string(kRegistryHeader) + "1,A,B,R,,09/E3,X,P,,2020\n1,C,D,R,,09/E3,X,P,,2020\n", "r");
        }).kind == ErrorKind::DuplicateRecordId);
  CHECK(catch_error([] {
          parse_registry(std::string(kRegistryHeader) + "1,A,B,R,,09/E3,X,P,,1999\n", "r");
        }).kind == ErrorKind::Schema);
  const auto missing = catch_error([] { parse_registry("record_id,first_name\n1,A\n", "r"); });
  CHECK(missing.kind == ErrorKind::Schema);
  CHECK(missing.what.find("last_name") != std::string::npos);
}

TEST_CASE("profiles: references are canonicalized and deduplicated per publication") {
  const auto profiles = parse_profiles(
      R"({"auid":"7103169675","given_name":"Davide","surname":"Rossi","initials":"D.","full_name":"Davide Rossi","affiliations":["Università di Bologna"],"publications":[)"
      R"({"pub_id":"b","year":2020,"title":"T2","keywords":["k"],"references":["R1"," r1 ","R2"],"coauthor_auids":[]},)"
      R"({"pub_id":"a","year":2017,"title":"T1","keywords":[],"references":["r1"],"coauthor_auids":["57000000001"]}]})"
      "\n",
      "profiles.jsonl");
  REQUIRE(profiles.size() == 1);
  const auto& p = profiles[0];
  CHECK(p.auid == "7103169675");
  REQUIRE(p.publications.size() == 2);
  CHECK(p.publications[0].year == 2017);  // sorted by year
  CHECK(p.publications[1].references.size() == 2);
  CHECK(p.publications[1].references[0].value() == "r1");
  CHECK_FALSE(p.publications[1].abstract_text.has_value());
}

TEST_CASE("profile with zero publications loads") {
  const auto profiles = parse_profiles(R"({"auid":"1","publications":[]})" "\n", "p");
  REQUIRE(profiles.size() == 1);
  CHECK(profiles[0].publications.empty());
}

TEST_CASE("numeric auids are read as strings") {
  const auto profiles = parse_profiles(R"({"auid":7103169675,"publications":[]})" "\n", "p");
  CHECK(profiles[0].auid == "7103169675");
}

TEST_CASE("duplicate auid is rejected") {
  CHECK(catch_error([] {
          parse_profiles(R"({"auid":"7103169675"})" "\n" R"({"auid":"7103169675"})" "\n", "p");
        }).kind == ErrorKind::DuplicateAuid);
}

TEST_CASE("profile schema errors carry the line") {
  const auto e = catch_error([] { parse_profiles("{\"auid\":\"1\"}\n{not json}\n", "profiles.jsonl"); });
  CHECK(e.kind == ErrorKind::Schema);
  CHECK(e.what.find("profiles.jsonl:2") != std::string::npos);
  CHECK(catch_error([] {
          parse_profiles(R"({"auid":"1","publications":[{"pub_id":"a","year":1800}]})" "\n", "p");
        }).kind == ErrorKind::Schema);
  CHECK(catch_error([] {
          parse_profiles(
              R"({"auid":"1","publications":[{"pub_id":"a","year":2020},{"pub_id":"a","year":2021}]})" "\n",
              "p");
        }).kind == ErrorKind::Schema);
}

TEST_CASE("gold labels") {
  std::string text = kGoldHeader;
  for (int i = 0; i < 606; ++i)
    text += fmt::format("{},N,S,09/E3,ING-INF/01,Bologna,{},{}\n", i, 1000 + i, i < 394 ? 1 : 0);
  const auto gold = parse_gold(text, "gold.csv");
  CHECK(gold.size() == 606);
  CHECK(std::count_if(gold.begin(), gold.end(), [](const auto& g) { return *g.gold; }) == 394);

  const auto one = parse_gold(std::string(kGoldHeader) + "14,D,R,09/E3,ING-INF/01,Bologna,7103169675,1\n", "g");
  CHECK(one[0].gold == true);
  CHECK(one[0].record.rf == parse_rf("09/E3"));
  CHECK(catch_error([] {
          parse_gold(std::string(kGoldHeader) + "14,D,R,09/E3,ING-INF/01,Bologna,7103169675,2\n", "g");
        }).kind == ErrorKind::Schema);
}

TEST_CASE("gold column overrides") {
  GoldColumns cols;
  cols.apply_overrides("record_id=ID,auid=AUID,correct=OK");
  const auto gold = parse_gold(
      "ID,first_name,last_name,rf,ad,university,AUID,OK\n14,D,R,09/E3,X,Bologna,7103169675,1\n", "g", cols);
  CHECK(gold[0].auid == "7103169675");
  CHECK_THROWS_AS(cols.apply_overrides("nonsense=X"), Error);
}

TEST_CASE("seeds") {
  const auto seeds = parse_seeds("record_id,auid,rf\nS1,9100000,09/E3\n", "seeds.csv");
  REQUIRE(seeds.size() == 1);
  CHECK(seeds[0].rf == parse_rf("09/E3"));
}

TEST_CASE("assembled dataset rejects dangling references") {
  auto records = parse_registry(std::string(kRegistryHeader) + "1,A,B,R,,09/E3,X,P,,2020\n", "r");
  auto profiles = parse_profiles(R"({"auid":"10"})" "\n", "p");
  CHECK(catch_error([&] {
          Dataset::assemble(records, profiles, parse_seeds("record_id,auid,rf\n1,99,09/E3\n", "s"), {});
        }).kind == ErrorKind::DanglingReference);
  CHECK(catch_error([&] {
          Dataset::assemble(records, profiles, parse_seeds("record_id,auid,rf\n2,10,09/E3\n", "s"), {});
        }).kind == ErrorKind::DanglingReference);
  CHECK(catch_error([&] {
          Dataset::assemble(records, profiles, {},
                            parse_gold(std::string(kGoldHeader) + "1,A,B,09/E3,X,P,11,1\n", "g"));
        }).kind == ErrorKind::DanglingReference);
  const auto ok = Dataset::assemble(records, profiles, parse_seeds("record_id,auid,rf\n1,10,09/E3\n", "s"),
                                    parse_gold(std::string(kGoldHeader) + "1,A,B,09/E3,X,P,10,1\n", "g"));
  CHECK(ok.seed_profiles(parse_rf("09/E3")).size() == 1);
  CHECK(ok.seed_fields().size() == 1);
  CHECK(ok.record("1") != nullptr);
  CHECK(ok.profile("10") != nullptr);
  CHECK(ok.profile("11") == nullptr);
}

TEST_CASE("fixture files load and reproduce the candidate statistics") {
  lead::testing::TempDir dir("ingest");
  lead::testing::write_fixture(lead::testing::make_registry_fixture(), dir.path());
  const auto data = Dataset::load(DatasetPaths::in_directory(dir.path()));
  CHECK(data.gold().size() == 4);
  const auto* rossi = data.profile(lead::testing::kRossiAuid);
  REQUIRE(rossi);
  const auto refs = candidate_reference_set(*rossi, TimeWindow{});
  CHECK(refs.n_papers == 130);
  CHECK(refs.references.size() == 2393);
  CHECK(data.seed_profiles(parse_rf("09/E3")).size() == 271);
}

TEST_CASE("loading is deterministic") {
  const auto fx = lead::testing::make_registry_fixture(lead::testing::FixtureScale{5, 50, 500, 3, 20, 100});
  const auto a = parse_profiles(fx.profiles_jsonl, "p");
  const auto b = parse_profiles(fx.profiles_jsonl, "p");
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].auid == b[i].auid);
    REQUIRE(a[i].publications.size() == b[i].publications.size());
    for (std::size_t k = 0; k < a[i].publications.size(); ++k)
      CHECK(a[i].publications[k].references == b[i].publications[k].references);
  }
}
