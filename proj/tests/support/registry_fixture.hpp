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

// Registry scenario with fixed corpus and candidate counts:
//  * RF 09/E3: 271 seed authors, 12,912 in-window papers, 232,934 distinct
//    references (2016-2023).
//  * record 14 / 7103169675: 130 papers, 2,393 references, 2,206 shared.
//  * record 15 / 57194011914: 26 papers, 470 references, 27 shared.
//  * record 49 / 6603258864: 14 papers, 597 references, 23 shared.
//  * record 49 / 57208832161: 1 paper, 60 references, 1 shared.
// Titles, keywords and the record 49 identity are invented.

#include <unistd.h>

#include <atomic>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>
#include <spdlog/fmt/fmt.h>

#include "lead/decisions_io.hpp"

namespace lead::testing {

inline constexpr const char* kRossiAuid = "7103169675";
inline constexpr const char* kRossiHomonymAuid = "57194011914";
inline constexpr const char* kRecord49Auid = "6603258864";
inline constexpr const char* kRecord49SecondAuid = "57208832161";

struct RegistryFixture {
  std::string registry_csv;
  std::string profiles_jsonl;
  std::string seeds_csv;
  std::string gold_csv;
};

struct FixtureScale {
  std::size_t e3_seeds = 271;
  std::size_t e3_papers = 12912;
  std::size_t e3_refs = 232934;
  std::size_t b4_seeds = 20;
  std::size_t b4_papers = 400;
  std::size_t b4_refs = 6000;
};

namespace detail {

using ojson = nlohmann::ordered_json;

inline ojson paper(const std::string& pub_id, int year, const std::string& title,
                   std::vector<std::string> keywords, std::vector<std::string> refs,
                   std::vector<std::string> coauthors) {
  ojson p;
  p["pub_id"] = pub_id;
  p["year"] = year;
  p["title"] = title;
  p["keywords"] = std::move(keywords);
  p["abstract"] = "";
  p["references"] = std::move(refs);
  p["coauthor_auids"] = std::move(coauthors);
  return p;
}

inline ojson profile(const std::string& auid, const std::string& given, const std::string& surname,
                     std::vector<std::string> affiliations, ojson pubs) {
  ojson j;
  j["auid"] = auid;
  j["given_name"] = given;
  j["surname"] = surname;
  j["initials"] = given.substr(0, 1) + ".";
  j["full_name"] = given + " " + surname;
  j["affiliations"] = std::move(affiliations);
  j["publications"] = std::move(pubs);
  return j;
}

// Seed authors of one field. Reference j goes to paper j % n_papers and paper
// p to author p % n_seeds, so every count is exact. Each seed also has one
// paper before the window citing `stale` references.
inline void seed_field(RegistryFixture& fx, const std::string& tag, const std::string& rf,
                       const std::string& ad, const std::string& university, std::size_t n_seeds,
                       std::size_t n_papers, std::size_t n_refs,
                       const std::vector<std::string>& stale) {
  std::vector<std::vector<std::string>> paper_refs(n_papers);
  for (std::size_t j = 0; j < n_refs; ++j)
    paper_refs[j % n_papers].push_back(fmt::format("{}-{:06}", tag, j));
  std::vector<ojson> pubs(n_seeds, ojson::array());
  auto seed_auid = [&](std::size_t s) { return fmt::format("9{}{:05}", tag == "e3" ? 1 : 2, s); };
  for (std::size_t p = 0; p < n_papers; ++p) {
    const auto s = p % n_seeds;
    std::vector<std::string> co{seed_auid((s + 1) % n_seeds)};
    pubs[s].push_back(paper(fmt::format("{}-p{:05}", tag, p), 2016 + static_cast<int>(p % 8),
                            fmt::format("Seed study {} in {}", p, rf), {rf + " topic"},
                            std::move(paper_refs[p]), std::move(co)));
  }
  for (std::size_t s = 0; s < n_seeds; ++s) {
    pubs[s].push_back(paper(fmt::format("{}-old{:03}", tag, s), 2012, "Early work", {"early"},
                            stale, {}));
    const auto record_id = fmt::format("S{}{:03}", tag, s);
    const auto auid = seed_auid(s);
    fx.registry_csv += fmt::format("{},Seed{},Author{},Associate Professor,,{},{},{},,2024\n",
                                   record_id, s, s, rf, ad, university);
    fx.seeds_csv += fmt::format("{},{},{}\n", record_id, auid, rf);
    fx.profiles_jsonl += profile(auid, fmt::format("Seed{}", s), fmt::format("Author{}", s),
                                 {university}, std::move(pubs[s]))
                             .dump() +
                         "\n";
  }
}

// Candidate with `shared` references taken from the field corpus and the rest
// private, spread over `n_papers` in-window papers. References also repeat
// across papers and once within a paper, in a different case.
inline ojson candidate_pubs(const std::string& auid, const std::string& corpus_tag,
                            std::size_t n_papers, std::size_t n_refs, std::size_t shared,
                            const std::vector<std::string>& coauthors,
                            const std::vector<std::string>& topics) {
  std::vector<std::string> refs;
  for (std::size_t j = 0; j < shared; ++j) refs.push_back(fmt::format("{}-{:06}", corpus_tag, j * 3));
  for (std::size_t j = shared; j < n_refs; ++j) refs.push_back(fmt::format("x{}-{:05}", auid, j));
  std::vector<std::vector<std::string>> per(n_papers);
  for (std::size_t j = 0; j < refs.size(); ++j) {
    per[j % n_papers].push_back(refs[j]);
    if (j % 5 == 0 && n_papers > 1) per[(j + 1) % n_papers].push_back(refs[j]);
  }
  if (!refs.empty()) {
    std::string upper = refs[0];
    for (auto& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    per[0].push_back(" " + upper + " ");
  }
  ojson pubs = ojson::array();
  for (std::size_t p = 0; p < n_papers; ++p) {
    const auto& topic = topics[p % topics.size()];
    pubs.push_back(paper(fmt::format("{}-{:03}", auid, p), 2023 - static_cast<int>(p % 8),
                         fmt::format("{} study {}", topic, p + 1),
                         {topic, fmt::format("method {}", p % 4 + 1)}, std::move(per[p]),
                         {coauthors[p % coauthors.size()]}));
  }
  return pubs;
}

}  // namespace detail

inline RegistryFixture make_registry_fixture(const FixtureScale& scale = {}) {
  using detail::candidate_pubs;
  using detail::profile;
  RegistryFixture fx;
  fx.registry_csv = "record_id,first_name,last_name,role,gender,rf,ad,university,department,year\n";
  fx.seeds_csv = "record_id,auid,rf\n";
  fx.gold_csv = "record_id,first_name,last_name,rf,ad,university,auid,correct\n";

  // Stale references: cited by seeds only before the window, and by the
  // homonym inside it. They must not count as shared.
  std::vector<std::string> stale;
  for (std::size_t j = 0; j < 40; ++j) stale.push_back(fmt::format("x{}-{:05}", kRossiHomonymAuid, 100 + j));

  detail::seed_field(fx, "e3", "09/E3", "ING-INF/01", "Bologna", scale.e3_seeds, scale.e3_papers,
                     scale.e3_refs, stale);
  detail::seed_field(fx, "b4", "13/B4", "SECS-P/11", "Milano", scale.b4_seeds, scale.b4_papers,
                     scale.b4_refs, {});

  fx.registry_csv +=
      "14,Davide,Rossi,Associate Professor,M,09/E3,ING-INF/01,Bologna,"
      "\"Electrical, Electronic and Information Engineering \"\"Guglielmo Marconi\"\"\",2024\n"
      "15,Davide,Rossi,Associate Professor,M,09/E3,ING-INF/01,Bologna,"
      "\"Electrical, Electronic and Information Engineering \"\"Guglielmo Marconi\"\"\",2024\n"
      "49,Anna,Verdi,Researcher,F,13/B4,SECS-P/11,Milano,Economics,2024\n";

  auto rossi = candidate_pubs(kRossiAuid, "e3", 130, 2393, 2206, {"9100000", "9100001"},
                              {"Low-power circuits", "Analog front-ends", "Sensor interfaces"});
  rossi.push_back(detail::paper(std::string(kRossiAuid) + "-old", 2014, "Early circuits", {"circuits"},
                                {"x-early-1", "x-early-2"}, {}));
  fx.profiles_jsonl += profile(kRossiAuid, "Davide", "Rossi", {"Università di Bologna"}, rossi).dump() + "\n";
  fx.profiles_jsonl += profile(kRossiHomonymAuid, "Davide", "Rossi", {"Università di Bologna"},
                               candidate_pubs(kRossiHomonymAuid, "e3", 26, 470, 27, {"4400001"},
                                              {"Medieval law", "Legal history"}))
                           .dump() +
                       "\n";
  fx.profiles_jsonl += profile(kRecord49Auid, "Anna", "Verdi", {"Università degli Studi di Milano"},
                               candidate_pubs(kRecord49Auid, "b4", 14, 597, 23, {"9200000", "9200001"},
                                              {"Bank lending", "Market liquidity"}))
                           .dump() +
                       "\n";
  fx.profiles_jsonl += profile(kRecord49SecondAuid, "A.", "Verdi", {"Bocconi University"},
                               candidate_pubs(kRecord49SecondAuid, "b4", 1, 60, 1, {"9200002"},
                                              {"Sovereign bonds"}))
                           .dump() +
                       "\n";

  fx.gold_csv +=
      "14,Davide,Rossi,09/E3,ING-INF/01,Bologna,7103169675,1\n"
      "15,Davide,Rossi,09/E3,ING-INF/01,Bologna,57194011914,0\n"
      "49,Anna,Verdi,13/B4,SECS-P/11,Milano,6603258864,1\n"
      "49,Anna,Verdi,13/B4,SECS-P/11,Milano,57208832161,1\n";
  return fx;
}

class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            fmt::format("lead-{}-{}-{}", tag, static_cast<long>(::getpid()), counter++);
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline void write_fixture(const RegistryFixture& fx, const std::filesystem::path& dir) {
  write_text_file(dir / "registry.csv", fx.registry_csv);
  write_text_file(dir / "profiles.jsonl", fx.profiles_jsonl);
  write_text_file(dir / "seeds.csv", fx.seeds_csv);
  write_text_file(dir / "gold.csv", fx.gold_csv);
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace lead::testing
