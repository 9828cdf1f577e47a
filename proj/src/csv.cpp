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

#include "lead/csv.hpp"

#include <fstream>
#include <sstream>

#include "lead/errors.hpp"

namespace lead::csv {

std::vector<Row> parse(std::string_view text, std::string_view source) {
  std::vector<Row> rows;
  std::size_t i = 0;
  if (text.substr(0, 3) == "\xEF\xBB\xBF") i = 3;

  std::size_t line = 1;
  while (i < text.size()) {
    Row row;
    row.line = line;
    std::string field;
    bool in_quotes = false;
    bool row_done = false;
    while (!row_done) {
      if (i >= text.size()) {
        if (in_quotes)
          raise(ErrorKind::Schema, std::string(source) + ":" + std::to_string(row.line) +
                                       ": unterminated quoted field");
        row.fields.push_back(std::move(field));
        row_done = true;
        break;
      }
      char c = text[i];
      if (in_quotes) {
        if (c == '"') {
          if (i + 1 < text.size() && text[i + 1] == '"') {
            field.push_back('"');
            i += 2;
          } else {
            in_quotes = false;
            ++i;
          }
        } else {
          if (c == '\n') ++line;
          field.push_back(c);
          ++i;
        }
        continue;
      }
      switch (c) {
        case '"':
          in_quotes = true;
          ++i;
          break;
        case ',':
          row.fields.push_back(std::move(field));
          field.clear();
          ++i;
          break;
        case '\r':
          ++i;
          break;
        case '\n':
          row.fields.push_back(std::move(field));
          ++i;
          ++line;
          row_done = true;
          break;
        default:
          field.push_back(c);
          ++i;
      }
    }
    // Skip blank lines.
    if (row.fields.size() == 1 && row.fields[0].empty()) continue;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorKind::Io, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<Row> read_file(const std::filesystem::path& path) {
  return parse(read_text(path), path.string());
}

Table::Table(std::vector<Row> rows, std::string source) : source_(std::move(source)) {
  if (rows.empty()) raise(ErrorKind::Schema, source_ + ": missing header row");
  header_ = std::move(rows.front().fields);
  for (auto& h : header_) {
    while (!h.empty() && (h.back() == ' ' || h.back() == '\t')) h.pop_back();
    while (!h.empty() && (h.front() == ' ' || h.front() == '\t')) h.erase(h.begin());
  }
  rows_.assign(std::make_move_iterator(rows.begin() + 1), std::make_move_iterator(rows.end()));
  for (const auto& r : rows_) {
    if (r.fields.size() != header_.size())
      raise(ErrorKind::Schema, source_ + ":" + std::to_string(r.line) + ": expected " +
                                   std::to_string(header_.size()) + " fields, found " +
                                   std::to_string(r.fields.size()));
  }
}

Table Table::from_file(const std::filesystem::path& path) {
  return Table(read_file(path), path.string());
}

std::optional<std::size_t> Table::column(std::string_view name) const {
  for (std::size_t i = 0; i < header_.size(); ++i)
    if (header_[i] == name) return i;
  return std::nullopt;
}

std::size_t Table::require(std::string_view name) const {
  if (auto c = column(name)) return *c;
  raise(ErrorKind::Schema, source_ + ": missing column '" + std::string(name) + "'");
}

std::string escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out += '"';
  return out;
}

std::string join_row(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out.push_back(',');
    out += escape(fields[i]);
  }
  return out;
}

}  // namespace lead::csv
