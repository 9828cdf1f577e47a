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

#include <array>
#include <compare>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lead {

// Recruitment field code of the form "AA/GF": two-digit scientific area
// (01-14), recruitment-field-group letter, field digit.
class RFCode {
 public:
  RFCode() = default;

  // Throws InvalidRFCode on malformed input.
  static RFCode parse(std::string_view code);

  const std::string& area() const { return area_; }
  char group_letter() const { return group_; }
  char field_digit() const { return field_; }

  std::string str() const;        // "AA/GF"
  std::string group_str() const;  // "AA/G"

  auto operator<=>(const RFCode&) const = default;

 private:
  std::string area_ = "01";
  char group_ = 'A';
  char field_ = '1';
};

inline RFCode parse_rf(std::string_view code) { return RFCode::parse(code); }

enum class Granularity {
  ScientificArea,
  RecruitmentFieldGroup,
  RecruitmentField,
  AcademicDiscipline,
};

std::string_view to_string(Granularity g);
// Accepts "SA", "RFG", "RF", "AD" and the long enum names, case-insensitive.
std::optional<Granularity> parse_granularity(std::string_view text);

// Class id of `code` at `level`. The AD level needs the AD code and returns
// it unchanged; MissingAD is thrown when it is absent.
std::string project(const RFCode& code, Granularity level,
                    std::optional<std::string_view> ad = std::nullopt);

struct AreaCounts {
  int groups = 0;
  int fields = 0;
  int disciplines = 0;
  auto operator<=>(const AreaCounts&) const = default;
};

// Official per-area counts of the 2015 taxonomy (RFGs, RFs, ADs), indexed
// by area number - 1.
const std::array<AreaCounts, 14>& official_area_counts();

class TaxonomyTable {
 public:
  // CSV header: rf_code,rf_label,rfg_label,sa_label,ad_codes
  // ad_codes is ';'-separated; an entry may carry a label as CODE=Label.
  static TaxonomyTable load(const std::filesystem::path& path);
  static TaxonomyTable parse(std::string_view csv_text,
                             std::string_view source = "<memory>");

  const std::map<std::string, std::string>& sa_labels() const { return sa_labels_; }
  const std::map<std::string, std::string>& rfg_labels() const { return rfg_labels_; }
  const std::map<std::string, std::string>& rf_labels() const { return rf_labels_; }
  const std::map<std::string, RFCode>& ad_to_rf() const { return ad_to_rf_; }
  const std::map<std::string, std::string>& ad_labels() const { return ad_labels_; }

  // Label of a class id at the given level, if known.
  std::optional<std::string> label(Granularity level, std::string_view class_id) const;
  std::optional<std::string> ad_label(std::string_view ad) const;
  std::optional<RFCode> rf_of_ad(std::string_view ad) const;

  // Counts per area for areas "01".."14", in order.
  std::array<AreaCounts, 14> area_counts() const;
  bool empty() const { return rf_labels_.empty(); }

 private:
  std::map<std::string, std::string> sa_labels_;
  std::map<std::string, std::string> rfg_labels_;
  std::map<std::string, std::string> rf_labels_;
  std::map<std::string, RFCode> ad_to_rf_;
  std::map<std::string, std::string> ad_labels_;
};

}  // namespace lead
