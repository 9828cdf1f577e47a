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

#include <map>
#include <memory>
#include <string>
#include <utility>

#include "lead/ingest.hpp"
#include "lead/synthkit.hpp"
#include "lead/taxonomy.hpp"
#include "support/registry_fixture.hpp"

namespace lead::testing {

// A generated dataset loaded back through the regular readers.
struct SynthDataset {
  explicit SynthDataset(const synth::SynthParams& params, const std::string& tag = "synth")
      : dir(tag) {
    synth::write_dataset(synth::generate(params), dir.path());
    data = Dataset::load(DatasetPaths::in_directory(dir.path()));
    taxonomy = TaxonomyTable::load(dir.path() / "taxonomy.csv");
  }

  // Planted labels keyed by (record_id, auid).
  std::map<std::pair<std::string, std::string>, bool> truth() const {
    std::map<std::pair<std::string, std::string>, bool> out;
    for (const auto& p : data.gold()) out[{p.record.record_id, p.auid}] = p.gold.value_or(false);
    return out;
  }

  TempDir dir;
  Dataset data;
  TaxonomyTable taxonomy;
};

inline synth::SynthParams synth_seed(std::uint64_t seed) {
  synth::SynthParams p;
  p.rng_seed = seed;
  return p;
}

}  // namespace lead::testing
