// Copyright 2026 The SEKI Engine Authors.
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

#include "seki/errors.hpp"

namespace seki {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnknownOperator:
      return "UnknownOperator";
    case ErrorCode::kArityMismatch:
      return "ArityMismatch";
    case ErrorCode::kInvalidInputIndex:
      return "InvalidInputIndex";
    case ErrorCode::kMalformedEncoding:
      return "MalformedEncoding";
    case ErrorCode::kNoArchitectureFound:
      return "NoArchitectureFound";
    case ErrorCode::kNotEnumerable:
      return "NotEnumerable";
    case ErrorCode::kSpaceMismatch:
      return "SpaceMismatch";
    case ErrorCode::kEmptyStrategy:
      return "EmptyStrategy";
    case ErrorCode::kEmptyExemplarList:
      return "EmptyExemplarList";
    case ErrorCode::kMissingEvaluator:
      return "MissingEvaluator";
    case ErrorCode::kTimeout:
      return "Timeout";
    case ErrorCode::kEndpointError:
      return "EndpointError";
    case ErrorCode::kRetriesExhausted:
      return "RetriesExhausted";
    case ErrorCode::kArchitectureNotInTable:
      return "ArchitectureNotInTable";
    case ErrorCode::kFileError:
      return "FileError";
    case ErrorCode::kSchemaError:
      return "SchemaError";
    case ErrorCode::kInvalidArchKey:
      return "InvalidArchKey";
    case ErrorCode::kEmptyPool:
      return "EmptyPool";
    case ErrorCode::kEmptyRepository:
      return "EmptyRepository";
    case ErrorCode::kConfigError:
      return "ConfigError";
    case ErrorCode::kTraceUnreadable:
      return "TraceUnreadable";
  }
  return "Unknown";
}

}  // namespace seki
