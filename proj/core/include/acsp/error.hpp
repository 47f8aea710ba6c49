// Copyright 2026 The ACSP Authors. All Rights Reserved.
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

#ifndef ACSP_ERROR_HPP_
#define ACSP_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace acsp {

enum class ErrorCode {
  kBadMagic,
  kVersionMismatch,
  kTruncatedFile,
  kNonFiniteValue,
  kMalformedFile,
  kMalformedPlan,
  kIoError,
  kInvalidDataset,
  kShapeMismatch,
  kNotPrunableLayer,
  kDivergence,
  kClassTooSmall,
  kBadK,
  kBadRange,
  kUnderdetermined,
  kTooFewPoints,
  kBadParams,
  kParseError,
};

/// Stable name used in machine-parseable error lines, e.g. "BadMagic".
std::string_view ErrorCodeName(ErrorCode code);

/// All library failures are reported as acsp::Error carrying a code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace acsp

#endif  // ACSP_ERROR_HPP_
