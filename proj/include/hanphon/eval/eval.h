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

#ifndef HANPHON_EVAL_EVAL_H_
#define HANPHON_EVAL_EVAL_H_

#include <cstdint>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "hanphon/phonology/phonology.h"

namespace hanphon::eval {

// Percentages are stored unrounded; rounding happens only when rendering.
struct EvalReport {
  static constexpr int kSchemaVersion = 1;

  double ser = 0.0;
  double ter = 0.0;
  double onset_err = 0.0;
  double nucleus_err = 0.0;
  double coda_err = 0.0;

  size_t syllables = 0;
  size_t tokens = 0;  // 3 * syllables
  size_t string_errors = 0;
  size_t onset_errors = 0;
  size_t nucleus_errors = 0;
  size_t coda_errors = 0;
  // References without a nucleus (unparsable) are left out of every count.
  size_t excluded_references = 0;

  std::string model_id;
  std::string data_manifest_hash;
  uint64_t seed = 0;

  nlohmann::ordered_json ToJson() const;
  static EvalReport FromJson(const nlohmann::json& j);
};

// Symbol-exact comparison per position; NULL is an ordinary symbol.
// Errors: kLengthMismatch.
EvalReport Score(const std::vector<phonology::SyllableParts>& predictions,
                 const std::vector<phonology::SyllableParts>& references);

// Throws Error(kFormat) when the set-theoretic bounds
// max(position errors) <= SER <= 3 * TER do not hold.
void CheckBounds(const EvalReport& report);

struct ComparisonTable {
  std::string text;
  nlohmann::ordered_json json;
};

// One row per report with columns Method, SER, TER, On., Nu., Cd.; the best
// (lowest) value in each column is marked, ties included.
ComparisonTable Compare(const std::vector<EvalReport>& reports);

}  // namespace hanphon::eval

#endif  // HANPHON_EVAL_EVAL_H_
