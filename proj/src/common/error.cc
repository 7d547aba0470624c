// Copyright (c) 2026 The hanphon Authors
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

#include "hanphon/common/error.h"

namespace hanphon {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kTruncatedSequence: return "TruncatedSequence";
    case ErrorCode::kTrailingTokens: return "TrailingTokens";
    case ErrorCode::kInvalidPrefix: return "InvalidPrefix";
    case ErrorCode::kCyclicDecomposition: return "CyclicDecomposition";
    case ErrorCode::kUnparsableSyllable: return "UnparsableSyllable";
    case ErrorCode::kEmptyCorpus: return "EmptyCorpus";
    case ErrorCode::kMalformedLine: return "MalformedLine";
    case ErrorCode::kTooFewEntries: return "TooFewEntries";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kNonFiniteValue: return "NonFiniteValue";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kMissingFeature: return "MissingFeature";
    case ErrorCode::kDivergedLoss: return "DivergedLoss";
    case ErrorCode::kEmptyData: return "EmptyData";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kUnknownLogograph: return "UnknownLogograph";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kIo: return "Io";
    case ErrorCode::kFormat: return "Format";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
      code_(code) {}

}  // namespace hanphon
