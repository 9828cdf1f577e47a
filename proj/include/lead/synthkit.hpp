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

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>

#include <json.hpp>

namespace lead::synth {

struct IntRange {
  int lo = 0;
  int hi = 0;
};

struct SynthParams {
  std::uint64_t rng_seed = 1;
  std::size_t n_fields = 4;
  std::size_t seeds_per_field = 12;
  std::size_t candidates_per_field = 25;  // registry records with gold pairs
  double homonym_rate = 0.5;              // chance a record also gets a homonym candidate
  IntRange papers_per_author{3, 10};
  IntRange refs_per_paper{8, 25};
  std::size_t field_pool_size = 400;
  double cross_field_ref_noise = 0.15;
  IntRange coauthor_degree{1, 4};
};

// Throws Param on infeasible settings.
void validate(const SynthParams& p);

nlohmann::ordered_json to_json(const SynthParams& p);
// Keys missing from `j` keep their defaults; unknown keys throw Param.
SynthParams params_from_json(const nlohmann::json& j);

struct SynthFiles {
  std::string registry_csv;
  std::string profiles_jsonl;
  std::string seeds_csv;
  std::string gold_csv;
  std::string taxonomy_csv;
  std::string manifest_json;
};

// Deterministic given the params.
SynthFiles generate(const SynthParams& p);

// registry.csv, profiles.jsonl, seeds.csv, gold.csv, taxonomy.csv, manifest.json
void write_dataset(const SynthFiles& files, const std::filesystem::path& dir);

}  // namespace lead::synth
