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

#include "acsp/error.hpp"

namespace acsp {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kBadMagic: return "BadMagic";
    case ErrorCode::kVersionMismatch: return "VersionMismatch";
    case ErrorCode::kTruncatedFile: return "TruncatedFile";
    case ErrorCode::kNonFiniteValue: return "NonFiniteValue";
    case ErrorCode::kMalformedFile: return "MalformedFile";
    case ErrorCode::kMalformedPlan: return "MalformedPlan";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kInvalidDataset: return "InvalidDataset";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kNotPrunableLayer: return "NotPrunableLayer";
    case ErrorCode::kDivergence: return "Divergence";
    case ErrorCode::kClassTooSmall: return "ClassTooSmall";
    case ErrorCode::kBadK: return "BadK";
    case ErrorCode::kBadRange: return "BadRange";
    case ErrorCode::kUnderdetermined: return "Underdetermined";
    case ErrorCode::kTooFewPoints: return "TooFewPoints";
    case ErrorCode::kBadParams: return "BadParams";
    case ErrorCode::kParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace acsp
