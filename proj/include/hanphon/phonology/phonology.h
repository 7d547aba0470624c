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

#ifndef HANPHON_PHONOLOGY_PHONOLOGY_H_
#define HANPHON_PHONOLOGY_PHONOLOGY_H_

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "hanphon/ids/ids.h"

namespace hanphon::phonology {

enum class Language { kCantonese = 0, kMandarin = 1, kKorean = 2, kVietnamese = 3 };
enum class Position { kOnset = 0, kNucleus = 1, kCoda = 2 };

inline constexpr std::array<Language, 4> kAllLanguages = {
    Language::kCantonese, Language::kMandarin, Language::kKorean,
    Language::kVietnamese};
// Cognate languages in indicator-vector order.
inline constexpr std::array<Language, 3> kSourceLanguages = {
    Language::kMandarin, Language::kKorean, Language::kVietnamese};
inline constexpr std::array<Position, 3> kAllPositions = {
    Position::kOnset, Position::kNucleus, Position::kCoda};

const char* LanguageName(Language lang);  // "cantonese", ...
const char* PositionName(Position pos);   // "onset", ...
Language ParseLanguage(std::string_view name);
Position ParsePosition(std::string_view name);
// Index of a source language in kSourceLanguages; throws for Cantonese.
size_t SourceIndex(Language lang);

// Textual stand-in for an absent phoneme in reports and vocab files.
inline constexpr std::string_view kNullLabel = "NULL";

// Onset/nucleus/coda triple. An empty string is the NULL phoneme.
struct SyllableParts {
  std::string onset;
  std::string nucleus;
  std::string coda;
  Language language = Language::kCantonese;

  const std::string& at(Position pos) const;
  std::string& at(Position pos);
  // "(s, i, p)" with NULL spelled out.
  std::string ToString() const;

  bool operator==(const SyllableParts&) const = default;
};

std::string SymbolLabel(std::string_view symbol);

// Lowercases, strips trailing tone digits, and for Vietnamese removes the
// five tone diacritics while keeping vowel-quality marks.
std::string NormalizeReading(Language lang, std::string_view reading);

// Legal onsets and codas (and optionally nuclei) per language, loaded from a
// TSV of `language<TAB>position<TAB>symbol` rows.
class SegmentationTables {
 public:
  static SegmentationTables Load(const std::string& path);
  static SegmentationTables FromText(std::string_view text);

  const std::set<std::string>& symbols(Language lang, Position pos) const;
  bool HasNucleusTable(Language lang) const {
    return !symbols(lang, Position::kNucleus).empty();
  }

 private:
  std::array<std::array<std::set<std::string>, 3>, 4> table_;
};

// Longest-onset, then longest-coda split of a normalized syllable; the
// nucleus is the remainder and must be non-empty (and listed, when the
// language has a nucleus table). Errors: kUnparsableSyllable.
SyllableParts Segment(const SegmentationTables& tables, Language lang,
                      std::string_view syllable);

struct LexiconEntry {
  char32_t logograph = 0;
  ids::GeoDSequence geod;
  ids::BoRVector bor;
  SyllableParts target;
  // Indexed by SourceIndex(): Mandarin, Korean, Vietnamese.
  std::array<std::vector<SyllableParts>, 3> cognates;

  bool HasCognates() const;
};

// Per (language, position) sorted symbol lists; NULL ("") sorts first.
class PhonemeVocab {
 public:
  static constexpr int kVersion = 1;

  PhonemeVocab() = default;

  const std::vector<std::string>& symbols(Language lang, Position pos) const {
    return symbols_[static_cast<int>(lang)][static_cast<int>(pos)];
  }
  size_t size(Language lang, Position pos) const {
    return symbols(lang, pos).size();
  }
  std::optional<size_t> IndexOf(Language lang, Position pos,
                                std::string_view symbol) const;
  bool empty() const;

  std::string ToJson() const;
  static PhonemeVocab FromJson(std::string_view json);
  // Stable content digest (hex) used to tie checkpoints to a vocabulary.
  std::string Fingerprint() const;

  void Insert(Language lang, Position pos, const std::string& symbol);
  void Finalize();

 private:
  std::array<std::array<std::vector<std::string>, 3>, 4> symbols_;
  std::array<std::array<std::map<std::string, size_t, std::less<>>, 3>, 4>
      index_;
};

// Errors: kEmptyCorpus.
PhonemeVocab BuildVocab(const std::vector<LexiconEntry>& train_entries);

// Layout of the cognate indicator: (language, position, symbol) slots when
// positional, otherwise one slot per distinct (language, symbol).
class IndicatorLayout {
 public:
  IndicatorLayout(const PhonemeVocab& vocab, bool positional = true);

  size_t size() const { return size_; }
  bool positional() const { return positional_; }
  std::optional<size_t> Slot(Language lang, Position pos,
                             std::string_view symbol) const;

 private:
  bool positional_;
  size_t size_ = 0;
  std::map<std::string, size_t, std::less<>> slots_;
};

struct CognateIndicator {
  std::vector<uint8_t> bits;

  size_t PopCount() const;
};

CognateIndicator Indicator(const LexiconEntry& entry,
                           const IndicatorLayout& layout);

}  // namespace hanphon::phonology

#endif  // HANPHON_PHONOLOGY_PHONOLOGY_H_
