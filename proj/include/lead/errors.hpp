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

#include <stdexcept>
#include <string>
#include <string_view>

namespace lead {

enum class ErrorKind {
  InvalidReference,
  InvalidRFCode,
  MissingAD,
  Io,
  Schema,
  DuplicateRecordId,
  DuplicateAuid,
  DanglingReference,
  Shape,
  TooLarge,
  NodeNotFound,
  NoJsonFound,
  MissingField,
  InvalidMatchValue,
  Endpoint,
  Prerequisite,
  Eval,
  Param,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the engine carries a kind so callers (the CLI in
// particular) can map it to an exit status without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  // True for errors originating in the LLM transport layer.
  bool is_endpoint() const noexcept { return kind_ == ErrorKind::Endpoint; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void raise(ErrorKind kind, const std::string& what);

}  // namespace lead
