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
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "lead/model.hpp"

namespace lead {

// {record_id, auid, verdict, method, score?, explanation?, evidence?}
nlohmann::ordered_json decision_to_json(const Decision& d);
Decision decision_from_json(const nlohmann::json& j, const std::string& where);

// One object per line, in the given order.
std::string decisions_jsonl(const std::vector<Decision>& decisions);
std::vector<Decision> parse_decisions(std::string_view text, std::string_view source);

void write_text_file(const std::filesystem::path& path, std::string_view text);
void write_decisions(const std::filesystem::path& path, const std::vector<Decision>& decisions);
std::vector<Decision> read_decisions(const std::filesystem::path& path);

}  // namespace lead
