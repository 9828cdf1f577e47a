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

#include "lead/errors.hpp"

namespace lead {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidReference: return "InvalidReference";
    case ErrorKind::InvalidRFCode: return "InvalidRFCode";
    case ErrorKind::MissingAD: return "MissingAD";
    case ErrorKind::Io: return "IoError";
    case ErrorKind::Schema: return "SchemaError";
    case ErrorKind::DuplicateRecordId: return "DuplicateRecordId";
    case ErrorKind::DuplicateAuid: return "DuplicateAuid";
    case ErrorKind::DanglingReference: return "DanglingReference";
    case ErrorKind::Shape: return "ShapeError";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::NodeNotFound: return "NodeNotFound";
    case ErrorKind::NoJsonFound: return "NoJsonFound";
    case ErrorKind::MissingField: return "MissingField";
    case ErrorKind::InvalidMatchValue: return "InvalidMatchValue";
    case ErrorKind::Endpoint: return "EndpointError";
    case ErrorKind::Prerequisite: return "PrerequisiteError";
    case ErrorKind::Eval: return "EvalError";
    case ErrorKind::Param: return "ParamError";
  }
  return "Error";
}

void raise(ErrorKind kind, const std::string& what) {
  throw Error(kind, std::string(to_string(kind)) + ": " + what);
}

}  // namespace lead
