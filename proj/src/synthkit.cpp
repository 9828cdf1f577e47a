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

#include "lead/synthkit.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <vector>

#include <spdlog/fmt/fmt.h>

#include "lead/csv.hpp"
#include "lead/decisions_io.hpp"
#include "lead/errors.hpp"

namespace lead::synth {

namespace {

using ojson = nlohmann::ordered_json;

constexpr std::size_t kMaxFields = 14 * 26 * 9;
constexpr int kSeedFirstYear = 2012;
constexpr int kCandidateFirstYear = 2014;
constexpr int kLastYear = 2023;
constexpr int kWindowStart = 2016;
constexpr double kCoauthorLocality = 0.9;

const char* const kGiven[] = {"Marco",  "Giulia", "Luca",   "Francesca", "Andrea", "Chiara",
                              "Paolo",  "Sara",   "Davide", "Elena",     "Matteo", "Anna",
                              "Stefano", "Laura", "Simone", "Martina"};
const char* const kSurname[] = {"Rossi",   "Russo",   "Ferrari", "Esposito", "Bianchi",
                                "Romano",  "Colombo", "Ricci",   "Marino",   "Greco",
                                "Bruno",   "Gallo",   "Conti",   "De Luca",  "Costa",
                                "Giordano", "Mancini", "Rizzo",  "Lombardi", "Moretti"};
const char* const kCities[] = {"Bologna", "Milano", "Padova", "Pisa",   "Torino",
                               "Napoli",  "Roma",   "Firenze", "Genova", "Trento"};
const char* const kRoles[] = {"Full Professor", "Associate Professor", "Researcher"};

// Raw mt19937_64 output only: the standard distributions are not portable.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  std::uint64_t next() { return eng_(); }
  double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  bool chance(double p) { return unit() < p; }
  int between(int lo, int hi) {
    return lo + static_cast<int>(eng_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(eng_() % n); }

 private:
  std::mt19937_64 eng_;
};

struct Field {
  std::string rf;
  std::string ad;
  std::string area;
  std::string group;
  std::vector<std::string> authors;  // seeds and true matches, for co-authorship
};

struct Author {
  std::string auid;
  std::string given;
  std::string surname;
  std::string affiliation;
  std::size_t home_field = 0;
  int first_year = kSeedFirstYear;
  double noise = 0.0;      // share of references from other pools
  std::size_t confuser = 0;  // pool the noisy references come from, when fixed
  bool fixed_confuser = false;
};

void check_range(const IntRange& r, int min_lo, const char* name) {
  if (r.lo < min_lo || r.hi < r.lo)
    raise(ErrorKind::Param, fmt::format("{} must satisfy {} <= lo <= hi, got {}..{}", name, min_lo,
                                        r.lo, r.hi));
}

void check_fraction(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0))
    raise(ErrorKind::Param, fmt::format("{} must lie in [0, 1], got {}", name, v));
}

std::string field_code(std::size_t i) {
  const auto area = 1 + i % 14;
  const auto letter = static_cast<char>('A' + (i / 14) % 26);
  const auto digit = 1 + i / (14 * 26);
  return fmt::format("{:02}/{}{}", area, letter, digit);
}

std::string ref_id(std::size_t field, std::size_t j) { return fmt::format("syn-{:03}-{:05}", field, j); }

ojson range_json(const IntRange& r) { return ojson::array({r.lo, r.hi}); }

IntRange range_from(const nlohmann::json& j, const char* key) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
    raise(ErrorKind::Param, std::string(key) + " must be a [lo, hi] integer pair");
  return IntRange{j[0].get<int>(), j[1].get<int>()};
}

class Generator {
 public:
  explicit Generator(const SynthParams& p) : p_(p), rng_(p.rng_seed) {}

  SynthFiles run();

 private:
  std::string new_auid() { return fmt::format("5{:010}", 1000000 + next_auid_++); }

  // Per-candidate noise with mean equal to the global noise level; skewed so
  // that most candidates are clean and a few are genuinely hard.
  double candidate_noise() {
    const double nu = p_.cross_field_ref_noise;
    if (nu <= 0.0) return 0.0;
    if (nu >= 1.0) return 1.0;
    return std::pow(rng_.unit(), 1.0 / nu - 1.0);
  }

  std::size_t other_field(std::size_t f) {
    const auto k = rng_.below(p_.n_fields - 1);
    return k >= f ? k + 1 : k;
  }

  ojson publications(const Author& a, bool force_window);

  const SynthParams& p_;
  Rng rng_;
  std::size_t next_auid_ = 0;
  std::vector<Field> fields_;
  std::vector<std::string> all_authors_;
};

ojson Generator::publications(const Author& a, bool force_window) {
  ojson pubs = ojson::array();
  const int n_papers = rng_.between(p_.papers_per_author.lo, p_.papers_per_author.hi);
  const auto& home = fields_[a.home_field];
  for (int k = 0; k < n_papers; ++k) {
    const int year = (force_window && k == 0) ? rng_.between(kWindowStart, kLastYear)
                                              : rng_.between(a.first_year, kLastYear);
    const int n_refs = rng_.between(p_.refs_per_paper.lo, p_.refs_per_paper.hi);
    std::set<std::string> refs;
    std::vector<std::string> ordered;
    while (static_cast<int>(ordered.size()) < n_refs) {
      std::size_t pool = a.home_field;
      if (a.noise > 0.0 && rng_.chance(a.noise))
        pool = a.fixed_confuser ? a.confuser : other_field(a.home_field);
      auto id = ref_id(pool, rng_.below(p_.field_pool_size));
      if (refs.insert(id).second) ordered.push_back(std::move(id));
    }
    std::vector<std::string> coauthors;
    const int degree = rng_.between(p_.coauthor_degree.lo, p_.coauthor_degree.hi);
    for (int c = 0; c < degree; ++c) {
      const auto& pool = rng_.chance(kCoauthorLocality) ? home.authors : all_authors_;
      const auto& who = pool[rng_.below(pool.size())];
      if (who != a.auid && std::find(coauthors.begin(), coauthors.end(), who) == coauthors.end())
        coauthors.push_back(who);
    }
    ojson pub;
    pub["pub_id"] = fmt::format("{}-{:02}", a.auid, k + 1);
    pub["year"] = year;
    pub["title"] = fmt::format("Study {} on {} topics", k + 1, home.rf);
    pub["keywords"] = ojson::array({fmt::format("{} topic {}", home.rf, rng_.between(1, 8)),
                                    fmt::format("{} method {}", home.rf, rng_.between(1, 8))});
    pub["abstract"] = fmt::format("We study problem {} in field {}.", rng_.between(1, 99), home.rf);
    pub["references"] = ordered;
    pub["coauthor_auids"] = coauthors;
    pubs.push_back(std::move(pub));
  }
  return pubs;
}

SynthFiles Generator::run() {
  for (std::size_t f = 0; f < p_.n_fields; ++f) {
    Field fld;
    fld.rf = field_code(f);
    fld.area = fld.rf.substr(0, 2);
    fld.group = fld.rf.substr(0, 4);
    fld.ad = fmt::format("SYN/{:02}", f + 1);
    fields_.push_back(std::move(fld));
  }

  struct Record {
    std::string record_id;
    std::size_t field;
    Author self;  // registry identity; its profile is the true match
    std::optional<Author> homonym;
    bool seed = false;
  };
  std::vector<Record> records;
  auto make_author = [&](std::size_t field) {
    Author a;
    a.auid = new_auid();
    a.given = kGiven[rng_.below(std::size(kGiven))];
    a.surname = kSurname[rng_.below(std::size(kSurname))];
    a.affiliation = fmt::format("University of {}", kCities[rng_.below(std::size(kCities))]);
    a.home_field = field;
    return a;
  };

  for (std::size_t f = 0; f < p_.n_fields; ++f) {
    for (std::size_t i = 0; i < p_.seeds_per_field; ++i) {
      Record r{fmt::format("S{:03}{:04}", f + 1, i + 1), f, make_author(f), std::nullopt, true};
      r.self.first_year = kSeedFirstYear;
      // Seeds share a little of their citations with other fields.
      r.self.noise = p_.cross_field_ref_noise / 2.0;
      fields_[f].authors.push_back(r.self.auid);
      records.push_back(std::move(r));
    }
    for (std::size_t i = 0; i < p_.candidates_per_field; ++i) {
      Record r{fmt::format("R{:03}{:04}", f + 1, i + 1), f, make_author(f), std::nullopt, false};
      r.self.first_year = kCandidateFirstYear;
      r.self.noise = candidate_noise();
      fields_[f].authors.push_back(r.self.auid);
      if (p_.homonym_rate > 0.0 && rng_.chance(p_.homonym_rate)) {
        Author h = make_author(other_field(f));
        h.given = r.self.given;
        h.surname = r.self.surname;
        h.first_year = kCandidateFirstYear;
        // A homonym's stray citations land in the field it is confused with.
        h.noise = candidate_noise() * p_.cross_field_ref_noise;
        h.confuser = f;
        h.fixed_confuser = true;
        fields_[h.home_field].authors.push_back(h.auid);
        r.homonym = std::move(h);
      }
      records.push_back(std::move(r));
    }
  }
  for (const auto& fld : fields_)
    all_authors_.insert(all_authors_.end(), fld.authors.begin(), fld.authors.end());

  SynthFiles out;
  out.registry_csv = "record_id,first_name,last_name,role,gender,rf,ad,university,department,year\n";
  out.seeds_csv = "record_id,auid,rf\n";
  out.gold_csv = "record_id,first_name,last_name,rf,ad,university,auid,correct\n";
  std::size_t n_pos = 0, n_neg = 0, n_profiles = 0;

  auto profile_line = [&](const Author& a, bool force_window) {
    ojson j;
    j["auid"] = a.auid;
    j["given_name"] = a.given;
    j["surname"] = a.surname;
    j["initials"] = a.given.substr(0, 1) + ".";
    j["full_name"] = a.given + " " + a.surname;
    j["affiliations"] = ojson::array({a.affiliation});
    j["publications"] = publications(a, force_window);
    ++n_profiles;
    return j.dump() + "\n";
  };

  for (const auto& r : records) {
    const auto& fld = fields_[r.field];
    out.registry_csv +=
        csv::join_row({r.record_id, r.self.given, r.self.surname,
                       kRoles[rng_.below(std::size(kRoles))], rng_.chance(0.5) ? "F" : "M", fld.rf,
                       fld.ad, r.self.affiliation, fmt::format("Department {}", fld.group), "2024"}) +
        "\n";
    out.profiles_jsonl += profile_line(r.self, !r.seed);
    if (r.seed) {
      out.seeds_csv += csv::join_row({r.record_id, r.self.auid, fld.rf}) + "\n";
      continue;
    }
    auto gold_row = [&](const std::string& auid, bool correct) {
      out.gold_csv += csv::join_row({r.record_id, r.self.given, r.self.surname, fld.rf, fld.ad,
                                     r.self.affiliation, auid, correct ? "1" : "0"}) +
                      "\n";
      (correct ? n_pos : n_neg)++;
    };
    gold_row(r.self.auid, true);
    if (r.homonym) {
      out.profiles_jsonl += profile_line(*r.homonym, true);
      gold_row(r.homonym->auid, false);
    }
  }

  out.taxonomy_csv = "rf_code,rf_label,rfg_label,sa_label,ad_codes\n";
  for (std::size_t f = 0; f < fields_.size(); ++f) {
    const auto& fld = fields_[f];
    out.taxonomy_csv +=
        csv::join_row({fld.rf, fmt::format("Synthetic field {}", fld.rf),
                       fmt::format("Synthetic group {}", fld.group),
                       fmt::format("Synthetic area {}", fld.area),
                       fmt::format("{}=Synthetic discipline {}", fld.ad, f + 1)}) +
        "\n";
  }

  ojson manifest;
  manifest["generator"] = "lead synthkit";
  manifest["format_version"] = 1;
  manifest["params"] = to_json(p_);
  manifest["counts"] = {{"fields", p_.n_fields},
                        {"registry_records", records.size()},
                        {"profiles", n_profiles},
                        {"gold_positive", n_pos},
                        {"gold_negative", n_neg}};
  out.manifest_json = manifest.dump(2) + "\n";
  return out;
}

}  // namespace

void validate(const SynthParams& p) {
  if (p.n_fields == 0 || p.n_fields > kMaxFields)
    raise(ErrorKind::Param, fmt::format("n_fields must lie in [1, {}]", kMaxFields));
  if (p.seeds_per_field == 0) raise(ErrorKind::Param, "seeds_per_field must be at least 1");
  check_fraction(p.homonym_rate, "homonym_rate");
  check_fraction(p.cross_field_ref_noise, "cross_field_ref_noise");
  check_range(p.papers_per_author, 1, "papers_per_author");
  check_range(p.refs_per_paper, 1, "refs_per_paper");
  check_range(p.coauthor_degree, 0, "coauthor_degree");
  if (p.field_pool_size == 0) raise(ErrorKind::Param, "field_pool_size must be at least 1");
  if (static_cast<std::size_t>(p.refs_per_paper.hi) > p.field_pool_size)
    raise(ErrorKind::Param,
          fmt::format("refs_per_paper upper bound {} exceeds field_pool_size {}",
                      p.refs_per_paper.hi, p.field_pool_size));
  if (p.n_fields < 2 && (p.homonym_rate > 0.0 || p.cross_field_ref_noise > 0.0))
    raise(ErrorKind::Param, "homonyms and cross-field noise need at least two fields");
}

nlohmann::ordered_json to_json(const SynthParams& p) {
  ojson j;
  j["rng_seed"] = p.rng_seed;
  j["n_fields"] = p.n_fields;
  j["seeds_per_field"] = p.seeds_per_field;
  j["candidates_per_field"] = p.candidates_per_field;
  j["homonym_rate"] = p.homonym_rate;
  j["papers_per_author"] = range_json(p.papers_per_author);
  j["refs_per_paper"] = range_json(p.refs_per_paper);
  j["field_pool_size"] = p.field_pool_size;
  j["cross_field_ref_noise"] = p.cross_field_ref_noise;
  j["coauthor_degree"] = range_json(p.coauthor_degree);
  return j;
}

SynthParams params_from_json(const nlohmann::json& j) {
  if (!j.is_object()) raise(ErrorKind::Param, "synth params must be a JSON object");
  SynthParams p;
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "rng_seed") p.rng_seed = v.get<std::uint64_t>();
      else if (key == "n_fields") p.n_fields = v.get<std::size_t>();
      else if (key == "seeds_per_field") p.seeds_per_field = v.get<std::size_t>();
      else if (key == "candidates_per_field") p.candidates_per_field = v.get<std::size_t>();
      else if (key == "homonym_rate") p.homonym_rate = v.get<double>();
      else if (key == "papers_per_author") p.papers_per_author = range_from(v, "papers_per_author");
      else if (key == "refs_per_paper") p.refs_per_paper = range_from(v, "refs_per_paper");
      else if (key == "field_pool_size") p.field_pool_size = v.get<std::size_t>();
      else if (key == "cross_field_ref_noise") p.cross_field_ref_noise = v.get<double>();
      else if (key == "coauthor_degree") p.coauthor_degree = range_from(v, "coauthor_degree");
      else raise(ErrorKind::Param, "unknown synth parameter '" + key + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    raise(ErrorKind::Param, std::string("bad synth parameter value: ") + e.what());
  }
  return p;
}

SynthFiles generate(const SynthParams& p) {
  validate(p);
  return Generator(p).run();
}

void write_dataset(const SynthFiles& files, const std::filesystem::path& dir) {
  write_text_file(dir / "registry.csv", files.registry_csv);
  write_text_file(dir / "profiles.jsonl", files.profiles_jsonl);
  write_text_file(dir / "seeds.csv", files.seeds_csv);
  write_text_file(dir / "gold.csv", files.gold_csv);
  write_text_file(dir / "taxonomy.csv", files.taxonomy_csv);
  write_text_file(dir / "manifest.json", files.manifest_json);
}

}  // namespace lead::synth
