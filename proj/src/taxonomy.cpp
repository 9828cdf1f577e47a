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

#include "lead/taxonomy.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include <spdlog/spdlog.h>

#include "lead/csv.hpp"
#include "lead/errors.hpp"

namespace lead {

RFCode RFCode::parse(std::string_view code) {
  auto bad = [&](const char* why) -> RFCode {
    raise(ErrorKind::InvalidRFCode, "'" + std::string(code) + "': " + why);
  };
  if (code.size() != 5 || code[2] != '/') return bad("expected the form AA/GF");
  if (!std::isdigit(static_cast<unsigned char>(code[0])) ||
      !std::isdigit(static_cast<unsigned char>(code[1])))
    return bad("area must be two digits");
  int area = (code[0] - '0') * 10 + (code[1] - '0');
  if (area < 1 || area > 14) return bad("area outside 01-14");
  if (code[3] < 'A' || code[3] > 'Z') return bad("group must be an uppercase letter");
  if (!std::isdigit(static_cast<unsigned char>(code[4]))) return bad("field must be a digit");
  RFCode out;
  out.area_ = std::string(code.substr(0, 2));
  out.group_ = code[3];
  out.field_ = code[4];
  return out;
}

std::string RFCode::str() const { return area_ + "/" + group_ + field_; }
std::string RFCode::group_str() const { return area_ + "/" + group_; }

std::string_view to_string(Granularity g) {
  switch (g) {
    case Granularity::ScientificArea: return "SA";
    case Granularity::RecruitmentFieldGroup: return "RFG";
    case Granularity::RecruitmentField: return "RF";
    case Granularity::AcademicDiscipline: return "AD";
  }
  return "SA";
}

std::optional<Granularity> parse_granularity(std::string_view text) {
  std::string t(text);
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::toupper(c); });
  if (t == "SA" || t == "SCIENTIFICAREA") return Granularity::ScientificArea;
  if (t == "RFG" || t == "RECRUITMENTFIELDGROUP") return Granularity::RecruitmentFieldGroup;
  if (t == "RF" || t == "RECRUITMENTFIELD") return Granularity::RecruitmentField;
  if (t == "AD" || t == "ACADEMICDISCIPLINE") return Granularity::AcademicDiscipline;
  return std::nullopt;
}

std::string project(const RFCode& code, Granularity level, std::optional<std::string_view> ad) {
  switch (level) {
    case Granularity::ScientificArea: return code.area();
    case Granularity::RecruitmentFieldGroup: return code.group_str();
    case Granularity::RecruitmentField: return code.str();
    case Granularity::AcademicDiscipline:
      if (!ad || ad->empty())
        raise(ErrorKind::MissingAD, "AD granularity requested for " + code.str() + " without an AD code");
      return std::string(*ad);
  }
  return code.str();
}

const std::array<AreaCounts, 14>& official_area_counts() {
  static const std::array<AreaCounts, 14> counts = {{
      {2, 7, 10}, {3, 6, 8}, {4, 8, 12}, {1, 4, 12}, {10, 14, 19},
      {10, 27, 50}, {7, 14, 30}, {5, 12, 22}, {7, 21, 42}, {11, 21, 77},
      {4, 18, 34}, {7, 16, 21}, {3, 15, 19}, {3, 7, 14},
  }};
  return counts;
}

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

void put_label(std::map<std::string, std::string>& m, const std::string& key,
               const std::string& label, std::string_view what, std::string_view where) {
  if (label.empty()) return;
  auto [it, inserted] = m.emplace(key, label);
  if (!inserted && it->second != label)
    spdlog::warn("{}: conflicting {} label for {}: '{}' vs '{}' (keeping first)", where, what, key,
                 it->second, label);
}

}  // namespace

TaxonomyTable TaxonomyTable::parse(std::string_view csv_text, std::string_view source) {
  csv::Table table(csv::parse(csv_text, source), std::string(source));
  const auto c_rf = table.require("rf_code");
  const auto c_rf_label = table.require("rf_label");
  const auto c_rfg_label = table.require("rfg_label");
  const auto c_sa_label = table.require("sa_label");
  const auto c_ads = table.require("ad_codes");

  TaxonomyTable out;
  for (const auto& row : table.rows()) {
    const std::string where = std::string(source) + ":" + std::to_string(row.line);
    RFCode rf;
    try {
      rf = RFCode::parse(trim(row.fields[c_rf]));
    } catch (const Error& e) {
      raise(ErrorKind::Schema, where + ": " + e.what());
    }
    if (!out.rf_labels_.emplace(rf.str(), trim(row.fields[c_rf_label])).second)
      raise(ErrorKind::Schema, where + ": duplicate rf_code " + rf.str());
    put_label(out.rfg_labels_, rf.group_str(), trim(row.fields[c_rfg_label]), "group", where);
    put_label(out.sa_labels_, rf.area(), trim(row.fields[c_sa_label]), "area", where);

    std::string_view ads = row.fields[c_ads];
    std::size_t start = 0;
    while (start <= ads.size()) {
      auto end = ads.find(';', start);
      if (end == std::string_view::npos) end = ads.size();
      std::string entry = trim(ads.substr(start, end - start));
      start = end + 1;
      if (entry.empty()) continue;
      std::string code = entry, label;
      if (auto eq = entry.find('='); eq != std::string::npos) {
        code = trim(std::string_view(entry).substr(0, eq));
        label = trim(std::string_view(entry).substr(eq + 1));
      }
      auto [it, inserted] = out.ad_to_rf_.emplace(code, rf);
      if (!inserted && it->second != rf)
        spdlog::debug("{}: AD {} also listed under {}; keeping {}", where, code, rf.str(),
                      it->second.str());
      put_label(out.ad_labels_, code, label, "AD", where);
    }
  }
  return out;
}

TaxonomyTable TaxonomyTable::load(const std::filesystem::path& path) {
  return parse(csv::read_text(path), path.string());
}

std::optional<std::string> TaxonomyTable::label(Granularity level, std::string_view class_id) const {
  const std::map<std::string, std::string>* m = nullptr;
  switch (level) {
    case Granularity::ScientificArea: m = &sa_labels_; break;
    case Granularity::RecruitmentFieldGroup: m = &rfg_labels_; break;
    case Granularity::RecruitmentField: m = &rf_labels_; break;
    case Granularity::AcademicDiscipline: m = &ad_labels_; break;
  }
  auto it = m->find(std::string(class_id));
  if (it == m->end() || it->second.empty()) return std::nullopt;
  return it->second;
}

std::optional<std::string> TaxonomyTable::ad_label(std::string_view ad) const {
  return label(Granularity::AcademicDiscipline, ad);
}

std::optional<RFCode> TaxonomyTable::rf_of_ad(std::string_view ad) const {
  auto it = ad_to_rf_.find(std::string(ad));
  if (it == ad_to_rf_.end()) return std::nullopt;
  return it->second;
}

std::array<AreaCounts, 14> TaxonomyTable::area_counts() const {
  std::array<AreaCounts, 14> out{};
  auto idx = [](const std::string& area) { return std::stoi(area) - 1; };
  std::set<std::string> groups;
  for (const auto& [rf, _] : rf_labels_) {
    auto code = RFCode::parse(rf);
    out[idx(code.area())].fields++;
    if (groups.insert(code.group_str()).second) out[idx(code.area())].groups++;
  }
  for (const auto& [ad, rf] : ad_to_rf_) out[idx(rf.area())].disciplines++;
  return out;
}

}  // namespace lead
