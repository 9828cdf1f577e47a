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
#include <iosfwd>
#include <optional>
#include <string>

#include "lead/bibcoupling.hpp"

namespace lead {

// On-disk cache of field corpora, one text file per (rf, window, seed set):
//
//   lead-corpus 1
//   rf 09/E3
//   window 2016 2023
//   seed_hash 1f0c...
//   n_seed_authors 271
//   n_papers 12912
//   n_references 232934
//   empty_seed_list 0
//   <one canonical reference per line, ascending byte order>
//
// In reference lines '%', '\n' and '\r' are written as %25, %0A and %0D.
class CorpusCache {
 public:
  explicit CorpusCache(std::filesystem::path dir);

  std::filesystem::path file_for(const RFCode& rf, const TimeWindow& window,
                                 const std::string& seed_hash) const;

  std::optional<FieldCorpus> get(const RFCode& rf, const TimeWindow& window,
                                 const std::string& seed_hash) const;
  void put(const FieldCorpus& corpus) const;

 private:
  std::filesystem::path dir_;
};

void write_corpus(std::ostream& out, const FieldCorpus& corpus);
// Throws Schema on malformed input.
FieldCorpus read_corpus(std::istream& in, const std::string& source);

}  // namespace lead
