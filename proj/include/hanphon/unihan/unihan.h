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

#ifndef HANPHON_UNIHAN_UNIHAN_H_
#define HANPHON_UNIHAN_UNIHAN_H_

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "hanphon/ids/ids.h"
#include "hanphon/phonology/phonology.h"

namespace hanphon::unihan {

enum class ReadingField { kCantonese, kMandarin, kKorean, kHangul, kVietnamese };

const char* FieldName(ReadingField field);  // "kCantonese", ...

struct RawReadingRecord {
  char32_t codepoint = 0;
  ReadingField field = ReadingField::kCantonese;
  std::string value;  // space-separated readings, verbatim

  bool operator==(const RawReadingRecord&) const = default;
};

struct MalformedLine {
  size_t line_number = 0;
  std::string text;
};

struct UnihanParseResult {
  std::vector<RawReadingRecord> records;
  std::vector<MalformedLine> malformed;
  size_t skipped_fields = 0;  // well-formed lines for fields we do not use
};

// Parses Unihan_Readings.txt style text: `U+XXXX<TAB>kField<TAB>value`,
// '#' comments. Malformed lines are reported and skipped.
UnihanParseResult ParseUnihan(std::string_view text);
UnihanParseResult ParseUnihanFile(const std::string& path);

// Yale romanization (Unihan kKorean style, lowercase) of precomposed Hangul
// syllables. Throws Error(kFormat) for non-syllable input.
std::string HangulToYale(std::string_view hangul);

enum class Granularity {
  kSource,  // decomposition as listed in the IDS database
  kFull,    // recursively expanded until components have no decomposition
  // Expanded only until a component is common: one that occurs somewhere in
  // the full expansion of at least `min_radical_entries` training entries.
  kFrequent,
};

const char* GranularityName(Granularity g);  // "source", "full", "frequent"
Granularity ParseGranularity(std::string_view name);

struct AssembleOptions {
  // Assemble() leaves kFrequent entries at source granularity; the terminal
  // set depends on the training split and is applied by BuildDataset().
  Granularity granularity = Granularity::kFrequent;
  // kKorean (Yale, as listed) or kHangul (converted to Yale).
  ReadingField korean_field = ReadingField::kKorean;
};

struct AssembleReport {
  size_t logographs_with_readings = 0;
  size_t kept = 0;
  size_t dropped_no_cantonese = 0;
  size_t dropped_no_ids = 0;
  size_t dropped_bad_ids = 0;
  size_t dropped_unparsable_target = 0;
  size_t alternate_target_readings = 0;
  size_t unparsable_cognate_readings = 0;
};

struct AssembleResult {
  std::vector<phonology::LexiconEntry> entries;  // sorted by codepoint
  AssembleReport report;
};

// Joins readings with decompositions. An entry is kept iff its first
// Cantonese reading segments and it has a parsable IDS. BoR vectors are left
// empty; they depend on the training-split radical inventory.
AssembleResult Assemble(const std::vector<RawReadingRecord>& records,
                        const ids::IdsDatabase& ids_db,
                        const phonology::SegmentationTables& tables,
                        const AssembleOptions& options = {});

struct DatasetSplit {
  std::vector<phonology::LexiconEntry> train;
  std::vector<phonology::LexiconEntry> dev;
  std::vector<phonology::LexiconEntry> test;
  uint64_t seed = 0;
};

inline constexpr size_t kDevSize = 1000;
inline constexpr size_t kMinSplitEntries = 1250;

// Deterministic Fisher-Yates shuffle under `seed`; the first round(0.2 N)
// shuffled entries form the test set, the next 1000 the dev set, the rest
// train. Errors: kTooFewEntries.
DatasetSplit Split(std::vector<phonology::LexiconEntry> entries, uint64_t seed);

struct CoverageReport {
  size_t total = 0;
  size_t all_three = 0;
  size_t none = 0;
  double all_three_pct() const { return total ? 100.0 * all_three / total : 0.0; }
  double none_pct() const { return total ? 100.0 * none / total : 0.0; }
};

CoverageReport Coverage(const std::vector<phonology::LexiconEntry>& entries);

}  // namespace hanphon::unihan

#endif  // HANPHON_UNIHAN_UNIHAN_H_
