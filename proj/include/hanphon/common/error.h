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

#ifndef HANPHON_COMMON_ERROR_H_
#define HANPHON_COMMON_ERROR_H_

#include <stdexcept>
#include <string>

namespace hanphon {

enum class ErrorCode {
  kEmptyInput,
  kTruncatedSequence,
  kTrailingTokens,
  kInvalidPrefix,
  kCyclicDecomposition,
  kUnparsableSyllable,
  kEmptyCorpus,
  kMalformedLine,
  kTooFewEntries,
  kShapeMismatch,
  kNonFiniteValue,
  kIndexOutOfRange,
  kMissingFeature,
  kDivergedLoss,
  kEmptyData,
  kLengthMismatch,
  kUnknownLogograph,
  kInvalidConfig,
  kIo,
  kFormat,
};

const char* ErrorCodeName(ErrorCode code);

// All library failures are reported through this exception; `code()` lets
// callers (the CLI in particular) map failures to exit statuses.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hanphon

#endif  // HANPHON_COMMON_ERROR_H_
