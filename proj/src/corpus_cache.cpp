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

#include "lead/corpus_cache.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <spdlog/spdlog.h>

#include "lead/errors.hpp"

namespace lead {

namespace {

constexpr const char* kMagic = "lead-corpus 1";

std::string encode(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (c == '%') out += "%25";
    else if (c == '\n') out += "%0A";
    else if (c == '\r') out += "%0D";
    else out.push_back(c);
  }
  return out;
}

std::string decode(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '%' && i + 2 < s.size()) {
      auto code = s.substr(i + 1, 2);
      if (code == "25") out.push_back('%');
      else if (code == "0A") out.push_back('\n');
      else if (code == "0D") out.push_back('\r');
      else out.append(s, i, 3);
      i += 2;
    } else {
      out.push_back(s[i]);
    }
  }
  return out;
}

}  // namespace

void write_corpus(std::ostream& out, const FieldCorpus& c) {
  out << kMagic << '\n'
      << "rf " << c.rf.str() << '\n'
      << "window " << c.window.start_year << ' ' << c.window.end_year << '\n'
      << "seed_hash " << c.seed_hash << '\n'
      << "n_seed_authors " << c.n_seed_authors << '\n'
      << "n_papers " << c.n_papers << '\n'
      << "n_references " << c.references.size() << '\n'
      << "empty_seed_list " << (c.empty_seed_list ? 1 : 0) << '\n';
  for (const auto& r : c.references) out << encode(r.value()) << '\n';
}

FieldCorpus read_corpus(std::istream& in, const std::string& source) {
  auto fail = [&](const std::string& why) -> FieldCorpus {
    raise(ErrorKind::Schema, source + ": " + why);
  };
  std::string line;
  if (!std::getline(in, line) || line != kMagic) return fail("not a corpus file");

  auto field = [&](const char* key) -> std::string {
    if (!std::getline(in, line)) fail(std::string("missing ") + key);
    std::string prefix = std::string(key) + " ";
    if (line.rfind(prefix, 0) != 0) fail(std::string("expected ") + key);
    return line.substr(prefix.size());
  };

  FieldCorpus c;
  try {
    c.rf = RFCode::parse(field("rf"));
    std::istringstream w(field("window"));
    if (!(w >> c.window.start_year >> c.window.end_year)) fail("bad window");
    c.seed_hash = field("seed_hash");
    c.n_seed_authors = std::stoull(field("n_seed_authors"));
    c.n_papers = std::stoull(field("n_papers"));
    const auto n_refs = std::stoull(field("n_references"));
    c.empty_seed_list = field("empty_seed_list") == "1";
    c.references.reserve(n_refs);
    for (std::size_t i = 0; i < n_refs; ++i) {
      if (!std::getline(in, line)) fail("truncated reference list");
      c.references.push_back(ReferenceId::canonicalize(decode(line)));
      if (i > 0 && !(c.references[i - 1] < c.references[i])) fail("references not strictly sorted");
    }
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    fail(e.what());
  }
  return c;
}

CorpusCache::CorpusCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::filesystem::path CorpusCache::file_for(const RFCode& rf, const TimeWindow& window,
                                            const std::string& seed_hash) const {
  std::string name = "corpus_" + rf.area() + "-" + rf.group_letter() + rf.field_digit() + "_" +
                     std::to_string(window.start_year) + "-" + std::to_string(window.end_year) +
                     "_" + seed_hash + ".txt";
  return dir_ / name;
}

std::optional<FieldCorpus> CorpusCache::get(const RFCode& rf, const TimeWindow& window,
                                            const std::string& seed_hash) const {
  auto path = file_for(rf, window, seed_hash);
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  try {
    auto c = read_corpus(in, path.string());
    if (c.rf != rf || !(c.window == window) || c.seed_hash != seed_hash) {
      spdlog::warn("corpus cache {} does not match its key; ignoring", path.string());
      return std::nullopt;
    }
    return c;
  } catch (const Error& e) {
    spdlog::warn("ignoring unreadable corpus cache: {}", e.what());
    return std::nullopt;
  }
}

void CorpusCache::put(const FieldCorpus& corpus) const {
  std::filesystem::create_directories(dir_);
  auto path = file_for(corpus.rf, corpus.window, corpus.seed_hash);
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) raise(ErrorKind::Io, "cannot write " + tmp.string());
    write_corpus(out, corpus);
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace lead
