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

#include "lead/decisions_io.hpp"

#include <fstream>

#include "lead/csv.hpp"
#include "lead/errors.hpp"

namespace lead {

namespace {

using json = nlohmann::json;

template <class T>
T field(const json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) raise(ErrorKind::Schema, where + ": missing field '" + key + "'");
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    raise(ErrorKind::Schema, where + ": field '" + key + "' has the wrong type");
  }
}

}  // namespace

nlohmann::ordered_json decision_to_json(const Decision& d) {
  nlohmann::ordered_json j;
  j["record_id"] = d.record_id;
  j["auid"] = d.auid;
  j["verdict"] = std::string(to_string(d.verdict));
  j["method"] = std::string(to_string(d.method));
  if (d.score) j["score"] = *d.score;
  if (d.explanation) j["explanation"] = *d.explanation;
  if (!d.evidence.empty()) {
    nlohmann::ordered_json ev = nlohmann::ordered_json::object();
    if (const auto& o = d.evidence.overlap) {
      ev["overlap"] = {{"n_papers", o->n_papers}, {"n_cited", o->n_cited},
                       {"n_shared", o->n_shared}, {"ratio", o->ratio},
                       {"percent", o->percent_1dp()}, {"degenerate", o->degenerate}};
    }
    if (const auto& l = d.evidence.ls) {
      nlohmann::ordered_json ls;
      ls["level"] = std::string(to_string(l->level));
      ls["class_id"] = l->class_id ? json(*l->class_id) : json(nullptr);
      ls["confidence"] = l->confidence;
      ls["tie"] = l->tie;
      ls["in_graph"] = l->in_graph;
      ev["ls"] = std::move(ls);
    }
    if (d.evidence.error) ev["error"] = *d.evidence.error;
    j["evidence"] = std::move(ev);
  }
  return j;
}

Decision decision_from_json(const json& j, const std::string& where) {
  if (!j.is_object()) raise(ErrorKind::Schema, where + ": expected a JSON object");
  Decision d;
  d.record_id = field<std::string>(j, "record_id", where);
  d.auid = field<std::string>(j, "auid", where);
  const auto verdict = field<std::string>(j, "verdict", where);
  const auto method = field<std::string>(j, "method", where);
  auto v = parse_verdict_name(verdict);
  if (!v) raise(ErrorKind::Schema, where + ": unknown verdict '" + verdict + "'");
  auto m = parse_method_name(method);
  if (!m) raise(ErrorKind::Schema, where + ": unknown method '" + method + "'");
  d.verdict = *v;
  d.method = *m;
  if (j.contains("score")) d.score = field<double>(j, "score", where);
  if (j.contains("explanation")) d.explanation = field<std::string>(j, "explanation", where);
  if (auto it = j.find("evidence"); it != j.end() && it->is_object()) {
    const auto& ev = *it;
    if (auto o = ev.find("overlap"); o != ev.end()) {
      OverlapResult r;
      r.n_papers = field<std::size_t>(*o, "n_papers", where);
      r.n_cited = field<std::size_t>(*o, "n_cited", where);
      r.n_shared = field<std::size_t>(*o, "n_shared", where);
      r.ratio = field<double>(*o, "ratio", where);
      r.degenerate = field<bool>(*o, "degenerate", where);
      d.evidence.overlap = r;
    }
    if (auto l = ev.find("ls"); l != ev.end()) {
      LsPrediction p;
      const auto level = field<std::string>(*l, "level", where);
      auto g = parse_granularity(level);
      if (!g) raise(ErrorKind::Schema, where + ": unknown granularity '" + level + "'");
      p.level = *g;
      if (auto c = l->find("class_id"); c != l->end() && c->is_string()) p.class_id = c->get<std::string>();
      p.confidence = field<double>(*l, "confidence", where);
      p.tie = field<bool>(*l, "tie", where);
      p.in_graph = field<bool>(*l, "in_graph", where);
      d.evidence.ls = p;
    }
    if (ev.contains("error")) d.evidence.error = field<std::string>(ev, "error", where);
  }
  return d;
}

std::string decisions_jsonl(const std::vector<Decision>& decisions) {
  std::string out;
  for (const auto& d : decisions) out += decision_to_json(d).dump() + "\n";
  return out;
}

std::vector<Decision> parse_decisions(std::string_view text, std::string_view source) {
  std::vector<Decision> out;
  std::size_t line_no = 0, pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(pos, end - pos);
    ++line_no;
    pos = end + 1;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) {
      if (end == text.size()) break;
      continue;
    }
    const std::string where = std::string(source) + ":" + std::to_string(line_no);
    auto j = json::parse(line, nullptr, false);
    if (j.is_discarded()) raise(ErrorKind::Schema, where + ": malformed JSON");
    out.push_back(decision_from_json(j, where));
    if (end == text.size()) break;
  }
  return out;
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) raise(ErrorKind::Io, "cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) raise(ErrorKind::Io, "write failed for " + path.string());
}

void write_decisions(const std::filesystem::path& path, const std::vector<Decision>& decisions) {
  write_text_file(path, decisions_jsonl(decisions));
}

std::vector<Decision> read_decisions(const std::filesystem::path& path) {
  return parse_decisions(csv::read_text(path), path.string());
}

}  // namespace lead
