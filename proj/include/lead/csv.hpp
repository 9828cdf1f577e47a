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
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lead::csv {

struct Row {
  std::size_t line = 0;  // 1-based physical line where the row starts
  std::vector<std::string> fields;
};

// RFC-4180 reader: comma separated, double-quote quoting with "" escapes,
// CRLF or LF line endings. A UTF-8 BOM at the start is skipped.
std::vector<Row> parse(std::string_view text, std::string_view source = "<memory>");
std::vector<Row> read_file(const std::filesystem::path& path);

// Header-driven access. Column names are matched exactly.
class Table {
 public:
  Table(std::vector<Row> rows, std::string source);

  static Table from_file(const std::filesystem::path& path);

  const std::vector<std::string>& header() const { return header_; }
  const std::vector<Row>& rows() const { return rows_; }
  const std::string& source() const { return source_; }

  std::optional<std::size_t> column(std::string_view name) const;
  // Throws SchemaError naming the missing column.
  std::size_t require(std::string_view name) const;

 private:
  std::vector<std::string> header_;
  std::vector<Row> rows_;
  std::string source_;
};

std::string escape(std::string_view field);
std::string join_row(const std::vector<std::string>& fields);

std::string read_text(const std::filesystem::path& path);

}  // namespace lead::csv
