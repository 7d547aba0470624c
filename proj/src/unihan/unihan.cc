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

#include "hanphon/unihan/unihan.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "hanphon/common/error.h"
#include "hanphon/common/random.h"
#include "hanphon/common/utf8.h"

namespace hanphon::unihan {

using phonology::Language;
using phonology::LexiconEntry;
using phonology::SyllableParts;

const char* FieldName(ReadingField field) {
  switch (field) {
    case ReadingField::kCantonese: return "kCantonese";
    case ReadingField::kMandarin: return "kMandarin";
    case ReadingField::kKorean: return "kKorean";
    case ReadingField::kHangul: return "kHangul";
    case ReadingField::kVietnamese: return "kVietnamese";
  }
  return "?";
}

namespace {

constexpr ReadingField kAllFields[] = {
    ReadingField::kCantonese, ReadingField::kMandarin, ReadingField::kKorean,
    ReadingField::kHangul, ReadingField::kVietnamese};

std::vector<std::string> SplitWords(std::string_view value) {
  std::vector<std::string> out;
  std::istringstream in{std::string(value)};
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

}  // namespace

UnihanParseResult ParseUnihan(std::string_view text) {
  UnihanParseResult result;
  size_t line_no = 0;
  size_t start = 0;
  while (start < text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line[0] == '#') continue;

    const size_t tab1 = line.find('\t');
    const size_t tab2 =
        tab1 == std::string_view::npos ? tab1 : line.find('\t', tab1 + 1);
    if (tab2 == std::string_view::npos || tab2 + 1 >= line.size()) {
      result.malformed.push_back({line_no, std::string(line)});
      continue;
    }
    char32_t cp = 0;
    try {
      cp = ParseCodepointLabel(line.substr(0, tab1));
    } catch (const Error&) {
      result.malformed.push_back({line_no, std::string(line)});
      continue;
    }
    const std::string_view field = line.substr(tab1 + 1, tab2 - tab1 - 1);
    const auto known = std::find_if(std::begin(kAllFields), std::end(kAllFields),
                                    [&](ReadingField f) { return field == FieldName(f); });
    if (known == std::end(kAllFields)) {
      ++result.skipped_fields;
      continue;
    }
    result.records.push_back({cp, *known, std::string(line.substr(tab2 + 1))});
  }
  return result;
}

UnihanParseResult ParseUnihanFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open Unihan file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  UnihanParseResult result = ParseUnihan(buf.str());
  for (const auto& bad : result.malformed) {
    std::cerr << "warning: " << path << ":" << bad.line_number
              << ": malformed Unihan line skipped\n";
  }
  return result;
}

std::string HangulToYale(std::string_view hangul) {
  static constexpr const char* kInitial[19] = {
      "k", "kk", "n", "t", "tt", "l", "m", "p", "pp", "s",
      "ss", "", "c", "cc", "ch", "kh", "th", "ph", "h"};
  static constexpr const char* kMedial[21] = {
      "a", "ay", "ya", "yay", "e", "ey", "ye", "yey", "o", "wa", "way",
      "oy", "yo", "wu", "we", "wey", "wi", "yu", "u", "uy", "i"};
  static constexpr const char* kFinal[28] = {
      "", "k", "kk", "ks", "n", "nc", "nh", "t", "l", "lk", "lm", "lp", "ls", "lth",
      "lph", "lh", "m", "p", "ps", "s", "ss", "ng", "c", "ch", "kh", "th", "ph", "h"};
  std::string out;
  for (char32_t cp : DecodeUtf8(hangul)) {
    if (cp < 0xAC00 || cp > 0xD7A3) {
      throw Error(ErrorCode::kFormat,
                  CodepointLabel(cp) + " is not a precomposed Hangul syllable");
    }
    const unsigned s = cp - 0xAC00;
    out += kInitial[s / (21 * 28)];
    out += kMedial[(s / 28) % 21];
    out += kFinal[s % 28];
  }
  return out;
}

const char* GranularityName(Granularity g) {
  switch (g) {
    case Granularity::kSource: return "source";
    case Granularity::kFull: return "full";
    case Granularity::kFrequent: return "frequent";
  }
  return "?";
}

Granularity ParseGranularity(std::string_view name) {
  if (name == "source") return Granularity::kSource;
  if (name == "full") return Granularity::kFull;
  if (name == "frequent") return Granularity::kFrequent;
  throw Error(ErrorCode::kInvalidConfig,
              "granularity must be source|full|frequent, got '" + std::string(name) + "'");
}

AssembleResult Assemble(const std::vector<RawReadingRecord>& records,
                        const ids::IdsDatabase& ids_db,
                        const phonology::SegmentationTables& tables,
                        const AssembleOptions& options) {
  // codepoint -> field -> readings; std::map keeps output order independent
  // of record order.
  std::map<char32_t, std::map<ReadingField, std::vector<std::string>>> by_char;
  for (const auto& rec : records) {
    auto& readings = by_char[rec.codepoint][rec.field];
    for (auto& w : SplitWords(rec.value)) readings.push_back(std::move(w));
  }

  AssembleResult result;
  AssembleReport& report = result.report;
  report.logographs_with_readings = by_char.size();
  const std::set<char32_t> no_terminals;

  for (const auto& [cp, fields] : by_char) {
    auto cant = fields.find(ReadingField::kCantonese);
    if (cant == fields.end() || cant->second.empty()) {
      ++report.dropped_no_cantonese;
      continue;
    }
    const ids::GeoDSequence* listed = ids_db.Find(cp);
    if (listed == nullptr) {
      if (ids_db.raw().count(cp)) {
        ++report.dropped_bad_ids;
      } else {
        ++report.dropped_no_ids;
      }
      continue;
    }

    LexiconEntry entry;
    entry.logograph = cp;
    try {
      // Full expansion also screens out cyclic decompositions, so every
      // granularity keeps the same entries.
      const ids::IdsTree full =
          ids::ExpandToGranularity(ids::Reconstruct(*listed), ids_db.table(), no_terminals);
      entry.geod = options.granularity == Granularity::kFull ? ids::Flatten(full) : *listed;
    } catch (const Error&) {
      ++report.dropped_bad_ids;
      continue;
    }

    try {
      entry.target =
          phonology::Segment(tables, Language::kCantonese, cant->second.front());
    } catch (const Error&) {
      ++report.dropped_unparsable_target;
      continue;
    }
    report.alternate_target_readings += cant->second.size() - 1;

    auto attach = [&](ReadingField field, Language lang) {
      auto it = fields.find(field);
      if (it == fields.end()) return;
      auto& out = entry.cognates[phonology::SourceIndex(lang)];
      for (const auto& reading : it->second) {
        try {
          std::string syllable = field == ReadingField::kHangul
                                     ? HangulToYale(reading)
                                     : reading;
          SyllableParts parts = phonology::Segment(tables, lang, syllable);
          if (std::find(out.begin(), out.end(), parts) == out.end()) {
            out.push_back(std::move(parts));
          }
        } catch (const Error&) {
          ++report.unparsable_cognate_readings;
        }
      }
    };
    attach(ReadingField::kMandarin, Language::kMandarin);
    attach(options.korean_field, Language::kKorean);
    attach(ReadingField::kVietnamese, Language::kVietnamese);

    result.entries.push_back(std::move(entry));
  }
  report.kept = result.entries.size();
  return result;
}

DatasetSplit Split(std::vector<LexiconEntry> entries, uint64_t seed) {
  if (entries.size() < kMinSplitEntries) {
    throw Error(ErrorCode::kTooFewEntries,
                "need at least " + std::to_string(kMinSplitEntries) +
                    " entries to split, got " + std::to_string(entries.size()));
  }
  std::sort(entries.begin(), entries.end(),
            [](const LexiconEntry& a, const LexiconEntry& b) {
              return a.logograph < b.logograph;
            });
  Rng rng(seed);
  rng.Shuffle(entries);

  const size_t n = entries.size();
  const size_t n_test = static_cast<size_t>(std::llround(0.2 * static_cast<double>(n)));
  DatasetSplit split;
  split.seed = seed;
  auto begin = std::make_move_iterator(entries.begin());
  split.test.assign(begin, begin + n_test);
  split.dev.assign(begin + n_test, begin + n_test + kDevSize);
  split.train.assign(begin + n_test + kDevSize, std::make_move_iterator(entries.end()));
  return split;
}

CoverageReport Coverage(const std::vector<LexiconEntry>& entries) {
  CoverageReport report;
  report.total = entries.size();
  for (const auto& e : entries) {
    const auto present = std::count_if(e.cognates.begin(), e.cognates.end(),
                                       [](const auto& v) { return !v.empty(); });
    if (present == 3) ++report.all_three;
    if (present == 0) ++report.none;
  }
  return report;
}

}  // namespace hanphon::unihan
