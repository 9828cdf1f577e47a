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

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "lead/model.hpp"

namespace lead {

// One registry academic with a verified AUID, used for field corpora and
// seed labels.
struct SeedAlignment {
  std::string record_id;
  std::string auid;
  RFCode rf;
};

// Column names for the gold file. Public gold-standard releases do not all
// agree on header spelling, so every name can be remapped.
struct GoldColumns {
  std::string record_id = "record_id";
  std::string first_name = "first_name";
  std::string last_name = "last_name";
  std::string rf = "rf";
  std::string ad = "ad";
  std::string university = "university";
  std::string auid = "auid";
  std::string correct = "correct";

  // Applies "key=Header,key=Header" overrides; unknown keys throw Schema.
  void apply_overrides(std::string_view spec);
};

std::vector<RegistryRecord> load_registry(const std::filesystem::path& path);
std::vector<RegistryRecord> parse_registry(std::string_view text, std::string_view source);

std::vector<AuthorProfile> load_profiles(const std::filesystem::path& path);
std::vector<AuthorProfile> parse_profiles(std::string_view text, std::string_view source);
// Parses one profiles.jsonl object; `where` prefixes error messages.
AuthorProfile parse_profile_line(std::string_view line, const std::string& where);

std::vector<SeedAlignment> load_seeds(const std::filesystem::path& path);
std::vector<SeedAlignment> parse_seeds(std::string_view text, std::string_view source);

std::vector<CandidatePair> load_gold(const std::filesystem::path& path,
                                     const GoldColumns& columns = {});
std::vector<CandidatePair> parse_gold(std::string_view text, std::string_view source,
                                      const GoldColumns& columns = {});

// Pair file for arbitrary runs: header record_id,auid with an optional
// `correct` column.
struct PairRef {
  std::string record_id;
  std::string auid;
  std::optional<bool> gold;
};
std::vector<PairRef> load_pairs(const std::filesystem::path& path);

struct DatasetPaths {
  std::filesystem::path registry;
  std::filesystem::path profiles;
  std::filesystem::path seeds;
  std::optional<std::filesystem::path> gold;
  GoldColumns gold_columns;

  // registry.csv, profiles.jsonl, seeds.csv and (if present) gold.csv in `dir`.
  static DatasetPaths in_directory(const std::filesystem::path& dir);
};

class Dataset {
 public:
  // Validates referential integrity: every seed/gold record_id and auid must
  // resolve, duplicates are rejected. Nothing is silently dropped.
  static Dataset assemble(std::vector<RegistryRecord> records, std::vector<AuthorProfile> profiles,
                          std::vector<SeedAlignment> seeds, std::vector<CandidatePair> gold);
  static Dataset load(const DatasetPaths& paths);

  const std::vector<RegistryRecord>& records() const { return records_; }
  const std::vector<AuthorProfile>& profiles() const { return profiles_; }
  const std::vector<SeedAlignment>& seeds() const { return seeds_; }
  const std::vector<CandidatePair>& gold() const { return gold_; }

  const RegistryRecord* record(std::string_view record_id) const;
  const AuthorProfile* profile(std::string_view auid) const;

  // Seed profiles aligned to `rf`, in seeds-file order, unique by auid.
  std::vector<const AuthorProfile*> seed_profiles(const RFCode& rf) const;
  // Distinct seed RFs in ascending order.
  std::vector<RFCode> seed_fields() const;

  // Resolves pair references against the registry; throws DanglingReference.
  std::vector<CandidatePair> resolve(const std::vector<PairRef>& refs) const;

 private:
  std::vector<RegistryRecord> records_;
  std::vector<AuthorProfile> profiles_;
  std::vector<SeedAlignment> seeds_;
  std::vector<CandidatePair> gold_;
  std::unordered_map<std::string, std::size_t> record_index_;
  std::unordered_map<std::string, std::size_t> profile_index_;
  std::map<RFCode, std::vector<std::size_t>> seeds_by_rf_;  // profile indices
};

}  // namespace lead
