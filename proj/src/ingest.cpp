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

#include "lead/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <set>

#include <json.hpp>
#include <spdlog/spdlog.h>

#include "lead/csv.hpp"
#include "lead/errors.hpp"

namespace lead {

namespace {

using json = nlohmann::json;

std::string at_line(std::string_view source, std::size_t line) {
  return std::string(source) + ":" + std::to_string(line);
}

std::optional<std::string> non_empty(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return s;
}

int parse_int(const std::string& s, const std::string& where, std::string_view what) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    raise(ErrorKind::Schema, where + ": " + std::string(what) + " '" + s + "' is not an integer");
  return v;
}

RFCode parse_rf_at(const std::string& s, const std::string& where) {
  try {
    return RFCode::parse(s);
  } catch (const Error& e) {
    raise(ErrorKind::Schema, where + ": " + e.what());
  }
}

std::string get_string(const json& obj, const char* key, const std::string& where,
                       bool required = false) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) {
    if (required) raise(ErrorKind::Schema, where + ": missing field '" + key + "'");
    return {};
  }
  if (it->is_string()) return it->get<std::string>();
  if (it->is_number_integer()) return std::to_string(it->get<long long>());
  raise(ErrorKind::Schema, where + ": field '" + key + "' must be a string");
}

std::vector<std::string> get_strings(const json& obj, const char* key, const std::string& where) {
  std::vector<std::string> out;
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return out;
  if (!it->is_array()) raise(ErrorKind::Schema, where + ": field '" + key + "' must be an array");
  for (const auto& v : *it) {
    if (v.is_string()) out.push_back(v.get<std::string>());
    else if (v.is_number_integer()) out.push_back(std::to_string(v.get<long long>()));
    else raise(ErrorKind::Schema, where + ": '" + key + "' entries must be strings");
  }
  return out;
}

Publication parse_publication(const json& obj, const std::string& where) {
  if (!obj.is_object()) raise(ErrorKind::Schema, where + ": publication must be an object");
  Publication pub;
  pub.pub_id = get_string(obj, "pub_id", where, true);
  if (pub.pub_id.empty()) raise(ErrorKind::Schema, where + ": empty pub_id");
  auto year = obj.find("year");
  if (year == obj.end() || !year->is_number_integer())
    raise(ErrorKind::Schema, where + ": publication " + pub.pub_id + " has no integer year");
  pub.year = year->get<int>();
  if (pub.year <= 1900)
    raise(ErrorKind::Schema, where + ": publication " + pub.pub_id + " year must be > 1900");
  pub.title = get_string(obj, "title", where);
  pub.keywords = get_strings(obj, "keywords", where);
  pub.abstract_text = non_empty(get_string(obj, "abstract", where));
  pub.coauthor_auids = get_strings(obj, "coauthor_auids", where);

  std::set<ReferenceId> seen;
  for (const auto& raw : get_strings(obj, "references", where)) {
    ReferenceId ref = [&] {
      try {
        return canonicalize_reference(raw);
      } catch (const Error& e) {
        raise(ErrorKind::Schema, where + ": publication " + pub.pub_id + ": " + e.what());
      }
    }();
    if (seen.insert(ref).second) pub.references.push_back(std::move(ref));
  }
  return pub;
}

}  // namespace

void GoldColumns::apply_overrides(std::string_view spec) {
  std::size_t start = 0;
  while (start < spec.size()) {
    auto end = spec.find(',', start);
    if (end == std::string_view::npos) end = spec.size();
    auto item = spec.substr(start, end - start);
    start = end + 1;
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string_view::npos)
      raise(ErrorKind::Schema, "gold column override '" + std::string(item) + "' lacks '='");
    auto key = item.substr(0, eq);
    std::string value(item.substr(eq + 1));
    if (key == "record_id") record_id = value;
    else if (key == "first_name") first_name = value;
    else if (key == "last_name") last_name = value;
    else if (key == "rf") rf = value;
    else if (key == "ad") ad = value;
    else if (key == "university") university = value;
    else if (key == "auid") auid = value;
    else if (key == "correct") correct = value;
    else raise(ErrorKind::Schema, "unknown gold column key '" + std::string(key) + "'");
  }
}

std::vector<RegistryRecord> parse_registry(std::string_view text, std::string_view source) {
  csv::Table t(csv::parse(text, source), std::string(source));
  const auto c_id = t.require("record_id"), c_first = t.require("first_name"),
             c_last = t.require("last_name"), c_role = t.require("role"),
             c_gender = t.require("gender"), c_rf = t.require("rf"), c_ad = t.require("ad"),
             c_uni = t.require("university"), c_dept = t.require("department"),
             c_year = t.require("year");

  std::vector<RegistryRecord> out;
  std::set<std::string> ids;
  for (const auto& row : t.rows()) {
    const auto where = at_line(source, row.line);
    const auto& f = row.fields;
    RegistryRecord r;
    r.record_id = f[c_id];
    if (r.record_id.empty()) raise(ErrorKind::Schema, where + ": empty record_id");
    if (!ids.insert(r.record_id).second)
      raise(ErrorKind::DuplicateRecordId, where + ": record_id " + r.record_id);
    r.first_name = f[c_first];
    r.last_name = f[c_last];
    r.role = f[c_role];
    r.gender = non_empty(f[c_gender]);
    r.rf = parse_rf_at(f[c_rf], where);
    r.ad = f[c_ad];
    r.university = f[c_uni];
    r.department = non_empty(f[c_dept]);
    r.year = parse_int(f[c_year], where, "year");
    if (r.year < 2000) raise(ErrorKind::Schema, where + ": year " + f[c_year] + " is before 2000");
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<RegistryRecord> load_registry(const std::filesystem::path& path) {
  return parse_registry(csv::read_text(path), path.string());
}

AuthorProfile parse_profile_line(std::string_view line, const std::string& where) {
  json obj;
  try {
    obj = json::parse(line);
  } catch (const json::parse_error& e) {
    raise(ErrorKind::Schema, where + ": " + e.what());
  }
  if (!obj.is_object()) raise(ErrorKind::Schema, where + ": profile must be a JSON object");

  AuthorProfile p;
  p.auid = get_string(obj, "auid", where, true);
  if (p.auid.empty()) raise(ErrorKind::Schema, where + ": empty auid");
  p.given_name = get_string(obj, "given_name", where);
  p.surname = get_string(obj, "surname", where);
  p.initials = get_string(obj, "initials", where);
  p.full_name = get_string(obj, "full_name", where);
  p.affiliations = get_strings(obj, "affiliations", where);

  if (auto it = obj.find("publications"); it != obj.end() && !it->is_null()) {
    if (!it->is_array()) raise(ErrorKind::Schema, where + ": publications must be an array");
    std::set<std::string> pub_ids;
    for (const auto& pj : *it) {
      auto pub = parse_publication(pj, where);
      if (!pub_ids.insert(pub.pub_id).second)
        raise(ErrorKind::Schema, where + ": duplicate pub_id " + pub.pub_id + " in " + p.auid);
      p.publications.push_back(std::move(pub));
    }
  }
  std::stable_sort(p.publications.begin(), p.publications.end(),
                   [](const Publication& a, const Publication& b) { return a.year < b.year; });
  return p;
}

std::vector<AuthorProfile> parse_profiles(std::string_view text, std::string_view source) {
  std::vector<AuthorProfile> out;
  std::set<std::string> auids;
  std::size_t line_no = 0, start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;
    const auto where = at_line(source, line_no);
    auto p = parse_profile_line(line, where);
    if (!auids.insert(p.auid).second) raise(ErrorKind::DuplicateAuid, where + ": auid " + p.auid);
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<AuthorProfile> load_profiles(const std::filesystem::path& path) {
  return parse_profiles(csv::read_text(path), path.string());
}

std::vector<SeedAlignment> parse_seeds(std::string_view text, std::string_view source) {
  csv::Table t(csv::parse(text, source), std::string(source));
  const auto c_id = t.require("record_id"), c_auid = t.require("auid"), c_rf = t.require("rf");
  std::vector<SeedAlignment> out;
  for (const auto& row : t.rows()) {
    const auto where = at_line(source, row.line);
    SeedAlignment s{row.fields[c_id], row.fields[c_auid], parse_rf_at(row.fields[c_rf], where)};
    if (s.record_id.empty() || s.auid.empty())
      raise(ErrorKind::Schema, where + ": seed rows need record_id and auid");
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<SeedAlignment> load_seeds(const std::filesystem::path& path) {
  return parse_seeds(csv::read_text(path), path.string());
}

std::vector<CandidatePair> parse_gold(std::string_view text, std::string_view source,
                                      const GoldColumns& cols) {
  csv::Table t(csv::parse(text, source), std::string(source));
  const auto c_id = t.require(cols.record_id), c_first = t.require(cols.first_name),
             c_last = t.require(cols.last_name), c_rf = t.require(cols.rf),
             c_ad = t.require(cols.ad), c_uni = t.require(cols.university),
             c_auid = t.require(cols.auid), c_correct = t.require(cols.correct);

  std::vector<CandidatePair> out;
  std::set<std::pair<std::string, std::string>> keys;
  for (const auto& row : t.rows()) {
    const auto where = at_line(source, row.line);
    const auto& f = row.fields;
    CandidatePair pair;
    pair.record.record_id = f[c_id];
    pair.record.first_name = f[c_first];
    pair.record.last_name = f[c_last];
    pair.record.rf = parse_rf_at(f[c_rf], where);
    pair.record.ad = f[c_ad];
    pair.record.university = f[c_uni];
    pair.auid = f[c_auid];
    if (pair.record.record_id.empty() || pair.auid.empty())
      raise(ErrorKind::Schema, where + ": gold rows need record_id and auid");
    const auto& correct = f[c_correct];
    if (correct == "1") pair.gold = true;
    else if (correct == "0") pair.gold = false;
    else raise(ErrorKind::Schema, where + ": correct must be 0 or 1, found '" + correct + "'");
    if (!keys.emplace(pair.record.record_id, pair.auid).second)
      raise(ErrorKind::Schema, where + ": duplicate gold pair (" + pair.record.record_id + ", " +
                                   pair.auid + ")");
    out.push_back(std::move(pair));
  }
  return out;
}

std::vector<CandidatePair> load_gold(const std::filesystem::path& path, const GoldColumns& cols) {
  return parse_gold(csv::read_text(path), path.string(), cols);
}

std::vector<PairRef> load_pairs(const std::filesystem::path& path) {
  csv::Table t = csv::Table::from_file(path);
  const auto c_id = t.require("record_id"), c_auid = t.require("auid");
  const auto c_correct = t.column("correct");
  std::vector<PairRef> out;
  for (const auto& row : t.rows()) {
    PairRef p{row.fields[c_id], row.fields[c_auid], std::nullopt};
    if (c_correct) {
      const auto& v = row.fields[*c_correct];
      if (v == "1") p.gold = true;
      else if (v == "0") p.gold = false;
      else if (!v.empty())
        raise(ErrorKind::Schema, at_line(t.source(), row.line) + ": correct must be 0 or 1");
    }
    out.push_back(std::move(p));
  }
  return out;
}

DatasetPaths DatasetPaths::in_directory(const std::filesystem::path& dir) {
  DatasetPaths p;
  p.registry = dir / "registry.csv";
  p.profiles = dir / "profiles.jsonl";
  p.seeds = dir / "seeds.csv";
  if (std::filesystem::exists(dir / "gold.csv")) p.gold = dir / "gold.csv";
  return p;
}

Dataset Dataset::assemble(std::vector<RegistryRecord> records, std::vector<AuthorProfile> profiles,
                          std::vector<SeedAlignment> seeds, std::vector<CandidatePair> gold) {
  Dataset d;
  d.records_ = std::move(records);
  d.profiles_ = std::move(profiles);
  for (std::size_t i = 0; i < d.records_.size(); ++i)
    if (!d.record_index_.emplace(d.records_[i].record_id, i).second)
      raise(ErrorKind::DuplicateRecordId, d.records_[i].record_id);
  for (std::size_t i = 0; i < d.profiles_.size(); ++i)
    if (!d.profile_index_.emplace(d.profiles_[i].auid, i).second)
      raise(ErrorKind::DuplicateAuid, d.profiles_[i].auid);

  std::map<RFCode, std::set<std::string>> seen_seed;
  for (const auto& s : seeds) {
    if (!d.record_index_.count(s.record_id))
      raise(ErrorKind::DanglingReference, "seed record_id " + s.record_id + " not in registry");
    auto pit = d.profile_index_.find(s.auid);
    if (pit == d.profile_index_.end())
      raise(ErrorKind::DanglingReference, "seed auid " + s.auid + " has no profile");
    if (seen_seed[s.rf].insert(s.auid).second) d.seeds_by_rf_[s.rf].push_back(pit->second);
  }
  d.seeds_ = std::move(seeds);

  std::set<std::pair<std::string, std::string>> keys;
  for (auto& g : gold) {
    auto rit = d.record_index_.find(g.record.record_id);
    if (rit == d.record_index_.end())
      raise(ErrorKind::DanglingReference, "gold record_id " + g.record.record_id + " not in registry");
    if (!d.profile_index_.count(g.auid))
      raise(ErrorKind::DanglingReference, "gold auid " + g.auid + " has no profile");
    if (!keys.emplace(g.record.record_id, g.auid).second)
      raise(ErrorKind::Schema, "duplicate gold pair (" + g.record.record_id + ", " + g.auid + ")");
    const auto& reg = d.records_[rit->second];
    if (reg.rf != g.record.rf || reg.last_name != g.record.last_name)
      spdlog::warn("gold row ({}, {}) disagrees with registry record; using registry values",
                   g.record.record_id, g.auid);
    g.record = reg;
  }
  d.gold_ = std::move(gold);
  return d;
}

Dataset Dataset::load(const DatasetPaths& paths) {
  auto records = load_registry(paths.registry);
  auto profiles = load_profiles(paths.profiles);
  auto seeds = load_seeds(paths.seeds);
  std::vector<CandidatePair> gold;
  if (paths.gold) gold = load_gold(*paths.gold, paths.gold_columns);
  return assemble(std::move(records), std::move(profiles), std::move(seeds), std::move(gold));
}

const RegistryRecord* Dataset::record(std::string_view record_id) const {
  auto it = record_index_.find(std::string(record_id));
  return it == record_index_.end() ? nullptr : &records_[it->second];
}

const AuthorProfile* Dataset::profile(std::string_view auid) const {
  auto it = profile_index_.find(std::string(auid));
  return it == profile_index_.end() ? nullptr : &profiles_[it->second];
}

std::vector<const AuthorProfile*> Dataset::seed_profiles(const RFCode& rf) const {
  std::vector<const AuthorProfile*> out;
  if (auto it = seeds_by_rf_.find(rf); it != seeds_by_rf_.end())
    for (auto idx : it->second) out.push_back(&profiles_[idx]);
  return out;
}

std::vector<RFCode> Dataset::seed_fields() const {
  std::vector<RFCode> out;
  for (const auto& [rf, _] : seeds_by_rf_) out.push_back(rf);
  return out;
}

std::vector<CandidatePair> Dataset::resolve(const std::vector<PairRef>& refs) const {
  std::vector<CandidatePair> out;
  out.reserve(refs.size());
  for (const auto& r : refs) {
    const auto* rec = record(r.record_id);
    if (!rec) raise(ErrorKind::DanglingReference, "pair record_id " + r.record_id + " not in registry");
    if (!profile(r.auid)) raise(ErrorKind::DanglingReference, "pair auid " + r.auid + " has no profile");
    out.push_back(CandidatePair{*rec, r.auid, r.gold});
  }
  return out;
}

}  // namespace lead
