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

#ifndef SEKI_ERRORS_HPP_
#define SEKI_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace seki {

enum class ErrorCode {
  kUnknownOperator,
  kArityMismatch,
  kInvalidInputIndex,
  kMalformedEncoding,
  kNoArchitectureFound,
  kNotEnumerable,
  kSpaceMismatch,
  kEmptyStrategy,
  kEmptyExemplarList,
  kMissingEvaluator,
  kTimeout,
  kEndpointError,
  kRetriesExhausted,
  kArchitectureNotInTable,
  kFileError,
  kSchemaError,
  kInvalidArchKey,
  kEmptyPool,
  kEmptyRepository,
  kConfigError,
  kTraceUnreadable,
};

const char* ErrorCodeName(ErrorCode code);

// All engine errors carry a machine-readable code plus a human message.
class SekiError : public std::runtime_error {
 public:
  SekiError(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace seki

#endif  // SEKI_ERRORS_HPP_
