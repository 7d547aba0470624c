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

#include "hanphon/eval/eval.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>

#include "hanphon/common/error.h"

namespace hanphon::eval {

using phonology::SyllableParts;

namespace {

double Pct(size_t num, size_t den) {
  return den == 0 ? 0.0 : 100.0 * static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

EvalReport Score(const std::vector<SyllableParts>& predictions,
                 const std::vector<SyllableParts>& references) {
  if (predictions.size() != references.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                std::to_string(predictions.size()) + " predictions vs " +
                    std::to_string(references.size()) + " references");
  }
  EvalReport r;
  for (size_t i = 0; i < references.size(); ++i) {
    const SyllableParts& ref = references[i];
    if (ref.nucleus.empty()) {
      ++r.excluded_references;
      continue;
    }
    const SyllableParts& pred = predictions[i];
    const bool on = pred.onset != ref.onset;
    const bool nu = pred.nucleus != ref.nucleus;
    const bool cd = pred.coda != ref.coda;
    r.onset_errors += on;
    r.nucleus_errors += nu;
    r.coda_errors += cd;
    r.string_errors += (on || nu || cd);
    ++r.syllables;
  }
  r.tokens = 3 * r.syllables;
  r.ser = Pct(r.string_errors, r.syllables);
  r.ter = Pct(r.onset_errors + r.nucleus_errors + r.coda_errors, r.tokens);
  r.onset_err = Pct(r.onset_errors, r.syllables);
  r.nucleus_err = Pct(r.nucleus_errors, r.syllables);
  r.coda_err = Pct(r.coda_errors, r.syllables);
  CheckBounds(r);
  return r;
}

void CheckBounds(const EvalReport& r) {
  // Integer form of the bounds avoids rounding noise.
  const size_t worst = std::max({r.onset_errors, r.nucleus_errors, r.coda_errors});
  const size_t token_errors = r.onset_errors + r.nucleus_errors + r.coda_errors;
  if (r.string_errors < worst || r.string_errors > token_errors ||
      r.tokens != 3 * r.syllables) {
    throw Error(ErrorCode::kFormat, "evaluation report violates SER/TER bounds");
  }
}

nlohmann::ordered_json EvalReport::ToJson() const {
  nlohmann::ordered_json j;
  j["schema"] = "hanphon.eval_report";
  j["version"] = kSchemaVersion;
  j["model_id"] = model_id;
  j["data_manifest_sha256"] = data_manifest_hash;
  j["seed"] = seed;
  j["metrics"] = {{"ser", ser},
                  {"ter", ter},
                  {"onset_err", onset_err},
                  {"nucleus_err", nucleus_err},
                  {"coda_err", coda_err}};
  j["counts"] = {{"syllables", syllables},
                 {"tokens", tokens},
                 {"string_errors", string_errors},
                 {"onset_errors", onset_errors},
                 {"nucleus_errors", nucleus_errors},
                 {"coda_errors", coda_errors},
                 {"excluded_references", excluded_references}};
  return j;
}

EvalReport EvalReport::FromJson(const nlohmann::json& j) {
  if (j.value("schema", "") != "hanphon.eval_report" ||
      j.value("version", 0) != kSchemaVersion) {
    throw Error(ErrorCode::kFormat, "unsupported evaluation report schema");
  }
  EvalReport r;
  r.model_id = j.at("model_id").get<std::string>();
  r.data_manifest_hash = j.at("data_manifest_sha256").get<std::string>();
  r.seed = j.at("seed").get<uint64_t>();
  const auto& m = j.at("metrics");
  r.ser = m.at("ser").get<double>();
  r.ter = m.at("ter").get<double>();
  r.onset_err = m.at("onset_err").get<double>();
  r.nucleus_err = m.at("nucleus_err").get<double>();
  r.coda_err = m.at("coda_err").get<double>();
  const auto& c = j.at("counts");
  r.syllables = c.at("syllables").get<size_t>();
  r.tokens = c.at("tokens").get<size_t>();
  r.string_errors = c.at("string_errors").get<size_t>();
  r.onset_errors = c.at("onset_errors").get<size_t>();
  r.nucleus_errors = c.at("nucleus_errors").get<size_t>();
  r.coda_errors = c.at("coda_errors").get<size_t>();
  r.excluded_references = c.at("excluded_references").get<size_t>();
  CheckBounds(r);
  return r;
}

ComparisonTable Compare(const std::vector<EvalReport>& reports) {
  static constexpr const char* kColumns[] = {"SER", "TER", "On.", "Nu.", "Cd."};
  auto values = [](const EvalReport& r) {
    return std::array<double, 5>{r.ser, r.ter, r.onset_err, r.nucleus_err, r.coda_err};
  };
  // Best values are compared at the one-decimal precision that is printed.
  auto rounded = [](double v) { return std::round(v * 10.0) / 10.0; };
  std::array<double, 5> best;
  best.fill(1e300);
  for (const auto& r : reports) {
    const auto v = values(r);
    for (size_t c = 0; c < 5; ++c) best[c] = std::min(best[c], rounded(v[c]));
  }

  size_t name_width = 6;
  for (const auto& r : reports) name_width = std::max(name_width, r.model_id.size());

  ComparisonTable table;
  char buf[64];
  std::string& t = table.text;
  t += "Method" + std::string(name_width - 6, ' ');
  for (const char* col : kColumns) {
    std::snprintf(buf, sizeof(buf), "  %7s", col);
    t += buf;
  }
  t += "\n";
  table.json["schema"] = "hanphon.comparison";
  table.json["version"] = 1;
  table.json["columns"] = {"SER", "TER", "On.", "Nu.", "Cd."};
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    const auto v = values(r);
    t += r.model_id + std::string(name_width - r.model_id.size(), ' ');
    nlohmann::ordered_json row;
    row["method"] = r.model_id;
    nlohmann::ordered_json vals = nlohmann::ordered_json::array();
    nlohmann::ordered_json flags = nlohmann::ordered_json::array();
    for (size_t c = 0; c < 5; ++c) {
      const bool is_best = rounded(v[c]) == best[c];
      std::snprintf(buf, sizeof(buf), "  %6.1f%s", v[c], is_best ? "*" : " ");
      t += buf;
      vals.push_back(v[c]);
      flags.push_back(is_best);
    }
    t += "\n";
    row["values"] = std::move(vals);
    row["best"] = std::move(flags);
    rows.push_back(std::move(row));
  }
  table.json["rows"] = std::move(rows);
  t += "(* best in column)\n";
  return table;
}

}  // namespace hanphon::eval
