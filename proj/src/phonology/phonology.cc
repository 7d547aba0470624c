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

#include "hanphon/phonology/phonology.h"

#include <algorithm>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <unordered_map>

#include "hanphon/common/error.h"
#include "hanphon/common/hash.h"
#include "hanphon/common/utf8.h"

namespace hanphon::phonology {

namespace {

// Precomposed Vietnamese vowels carrying a tone mark (grave, acute, tilde,
// hook above, dot below) mapped to the same vowel without the tone.
constexpr std::pair<char32_t, char32_t> kVietnameseToneless[] = {
    {0x00C0, 0x0041}, {0x00C1, 0x0041}, {0x00C3, 0x0041}, {0x00C8, 0x0045},
    {0x00C9, 0x0045}, {0x00CC, 0x0049}, {0x00CD, 0x0049}, {0x00D2, 0x004F},
    {0x00D3, 0x004F}, {0x00D5, 0x004F}, {0x00D9, 0x0055}, {0x00DA, 0x0055},
    {0x00DD, 0x0059}, {0x00E0, 0x0061}, {0x00E1, 0x0061}, {0x00E3, 0x0061},
    {0x00E8, 0x0065}, {0x00E9, 0x0065}, {0x00EC, 0x0069}, {0x00ED, 0x0069},
    {0x00F2, 0x006F}, {0x00F3, 0x006F}, {0x00F5, 0x006F}, {0x00F9, 0x0075},
    {0x00FA, 0x0075}, {0x00FD, 0x0079}, {0x0128, 0x0049}, {0x0129, 0x0069},
    {0x0168, 0x0055}, {0x0169, 0x0075}, {0x1E4C, 0x004F}, {0x1E4D, 0x006F},
    {0x1E78, 0x0055}, {0x1E79, 0x0075}, {0x1EA0, 0x0041}, {0x1EA1, 0x0061},
    {0x1EA2, 0x0041}, {0x1EA3, 0x0061}, {0x1EA4, 0x00C2}, {0x1EA5, 0x00E2},
    {0x1EA6, 0x00C2}, {0x1EA7, 0x00E2}, {0x1EA8, 0x00C2}, {0x1EA9, 0x00E2},
    {0x1EAA, 0x00C2}, {0x1EAB, 0x00E2}, {0x1EAC, 0x00C2}, {0x1EAD, 0x00E2},
    {0x1EAE, 0x0102}, {0x1EAF, 0x0103}, {0x1EB0, 0x0102}, {0x1EB1, 0x0103},
    {0x1EB2, 0x0102}, {0x1EB3, 0x0103}, {0x1EB4, 0x0102}, {0x1EB5, 0x0103},
    {0x1EB6, 0x0102}, {0x1EB7, 0x0103}, {0x1EB8, 0x0045}, {0x1EB9, 0x0065},
    {0x1EBA, 0x0045}, {0x1EBB, 0x0065}, {0x1EBC, 0x0045}, {0x1EBD, 0x0065},
    {0x1EBE, 0x00CA}, {0x1EBF, 0x00EA}, {0x1EC0, 0x00CA}, {0x1EC1, 0x00EA},
    {0x1EC2, 0x00CA}, {0x1EC3, 0x00EA}, {0x1EC4, 0x00CA}, {0x1EC5, 0x00EA},
    {0x1EC6, 0x00CA}, {0x1EC7, 0x00EA}, {0x1EC8, 0x0049}, {0x1EC9, 0x0069},
    {0x1ECA, 0x0049}, {0x1ECB, 0x0069}, {0x1ECC, 0x004F}, {0x1ECD, 0x006F},
    {0x1ECE, 0x004F}, {0x1ECF, 0x006F}, {0x1ED0, 0x00D4}, {0x1ED1, 0x00F4},
    {0x1ED2, 0x00D4}, {0x1ED3, 0x00F4}, {0x1ED4, 0x00D4}, {0x1ED5, 0x00F4},
    {0x1ED6, 0x00D4}, {0x1ED7, 0x00F4}, {0x1ED8, 0x00D4}, {0x1ED9, 0x00F4},
    {0x1EDA, 0x01A0}, {0x1EDB, 0x01A1}, {0x1EDC, 0x01A0}, {0x1EDD, 0x01A1},
    {0x1EDE, 0x01A0}, {0x1EDF, 0x01A1}, {0x1EE0, 0x01A0}, {0x1EE1, 0x01A1},
    {0x1EE2, 0x01A0}, {0x1EE3, 0x01A1}, {0x1EE4, 0x0055}, {0x1EE5, 0x0075},
    {0x1EE6, 0x0055}, {0x1EE7, 0x0075}, {0x1EE8, 0x01AF}, {0x1EE9, 0x01B0},
    {0x1EEA, 0x01AF}, {0x1EEB, 0x01B0}, {0x1EEC, 0x01AF}, {0x1EED, 0x01B0},
    {0x1EEE, 0x01AF}, {0x1EEF, 0x01B0}, {0x1EF0, 0x01AF}, {0x1EF1, 0x01B0},
    {0x1EF2, 0x0059}, {0x1EF3, 0x0079}, {0x1EF4, 0x0059}, {0x1EF5, 0x0079},
    {0x1EF6, 0x0059}, {0x1EF7, 0x0079}, {0x1EF8, 0x0059}, {0x1EF9, 0x0079},
};

char32_t StripVietnameseTone(char32_t cp) {
  static const auto* table = [] {
    auto* m = new std::unordered_map<char32_t, char32_t>();
    for (const auto& [toned, base] : kVietnameseToneless) m->emplace(toned, base);
    return m;
  }();
  auto it = table->find(cp);
  return it == table->end() ? cp : it->second;
}

char32_t ToLower(char32_t cp) {
  if (cp >= U'A' && cp <= U'Z') return cp + (U'a' - U'A');
  switch (cp) {
    case 0x00C2: return 0x00E2;  // Â
    case 0x00CA: return 0x00EA;  // Ê
    case 0x00D4: return 0x00F4;  // Ô
    case 0x00DC: return 0x00FC;  // Ü
    case 0x0102: return 0x0103;  // Ă
    case 0x0110: return 0x0111;  // Đ
    case 0x01A0: return 0x01A1;  // Ơ
    case 0x01AF: return 0x01B0;  // Ư
    default: return cp;
  }
}

}  // namespace

const char* LanguageName(Language lang) {
  switch (lang) {
    case Language::kCantonese: return "cantonese";
    case Language::kMandarin: return "mandarin";
    case Language::kKorean: return "korean";
    case Language::kVietnamese: return "vietnamese";
  }
  return "?";
}

const char* PositionName(Position pos) {
  switch (pos) {
    case Position::kOnset: return "onset";
    case Position::kNucleus: return "nucleus";
    case Position::kCoda: return "coda";
  }
  return "?";
}

Language ParseLanguage(std::string_view name) {
  for (Language lang : kAllLanguages) {
    if (name == LanguageName(lang)) return lang;
  }
  throw Error(ErrorCode::kFormat, "unknown language '" + std::string(name) + "'");
}

Position ParsePosition(std::string_view name) {
  for (Position pos : kAllPositions) {
    if (name == PositionName(pos)) return pos;
  }
  throw Error(ErrorCode::kFormat, "unknown position '" + std::string(name) + "'");
}

size_t SourceIndex(Language lang) {
  switch (lang) {
    case Language::kMandarin: return 0;
    case Language::kKorean: return 1;
    case Language::kVietnamese: return 2;
    default:
      throw Error(ErrorCode::kIndexOutOfRange, "cantonese is the target language");
  }
}

const std::string& SyllableParts::at(Position pos) const {
  switch (pos) {
    case Position::kOnset: return onset;
    case Position::kNucleus: return nucleus;
    case Position::kCoda: return coda;
  }
  return coda;
}

std::string& SyllableParts::at(Position pos) {
  return const_cast<std::string&>(std::as_const(*this).at(pos));
}

std::string SymbolLabel(std::string_view symbol) {
  return symbol.empty() ? std::string(kNullLabel) : std::string(symbol);
}

std::string SyllableParts::ToString() const {
  return "(" + SymbolLabel(onset) + ", " + SymbolLabel(nucleus) + ", " +
         SymbolLabel(coda) + ")";
}

std::string NormalizeReading(Language lang, std::string_view reading) {
  std::u32string cps = DecodeUtf8(reading);
  while (!cps.empty() && cps.back() >= U'0' && cps.back() <= U'9') cps.pop_back();
  for (char32_t& cp : cps) {
    if (lang == Language::kVietnamese) cp = StripVietnameseTone(cp);
    cp = ToLower(cp);
  }
  return EncodeUtf8(cps);
}

SegmentationTables SegmentationTables::FromText(std::string_view text) {
  SegmentationTables tables;
  std::istringstream in{std::string(text)};
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, '\t')) fields.push_back(field);
    if (fields.size() != 3 || fields[2].empty()) {
      throw Error(ErrorCode::kMalformedLine,
                  "segmentation table line " + std::to_string(line_no));
    }
    const Language lang = ParseLanguage(fields[0]);
    const Position pos = ParsePosition(fields[1]);
    tables.table_[static_cast<int>(lang)][static_cast<int>(pos)].insert(fields[2]);
  }
  return tables;
}

SegmentationTables SegmentationTables::Load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open segmentation table " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return FromText(buf.str());
}

const std::set<std::string>& SegmentationTables::symbols(Language lang,
                                                         Position pos) const {
  return table_[static_cast<int>(lang)][static_cast<int>(pos)];
}

namespace {

// Candidates from `table` that are prefixes (or suffixes) of `s`, longest
// first, followed by the empty candidate.
std::vector<std::string_view> Matches(const std::set<std::string>& table,
                                      std::string_view s, bool prefix) {
  std::vector<std::string_view> out;
  for (const auto& sym : table) {
    if (sym.size() > s.size()) continue;
    if (prefix ? s.substr(0, sym.size()) == sym
               : s.substr(s.size() - sym.size()) == sym) {
      out.push_back(sym);
    }
  }
  std::stable_sort(out.begin(), out.end(), [](auto a, auto b) {
    return a.size() > b.size();
  });
  out.push_back(std::string_view());
  return out;
}

}  // namespace

SyllableParts Segment(const SegmentationTables& tables, Language lang,
                      std::string_view syllable) {
  const std::string s = NormalizeReading(lang, syllable);
  const auto& nuclei = tables.symbols(lang, Position::kNucleus);
  const bool check_nucleus = !nuclei.empty();
  for (std::string_view onset :
       Matches(tables.symbols(lang, Position::kOnset), s, true)) {
    const std::string_view rest = std::string_view(s).substr(onset.size());
    for (std::string_view coda :
         Matches(tables.symbols(lang, Position::kCoda), rest, false)) {
      const std::string_view nucleus = rest.substr(0, rest.size() - coda.size());
      if (nucleus.empty()) continue;
      if (check_nucleus && !nuclei.count(std::string(nucleus))) continue;
      return SyllableParts{std::string(onset), std::string(nucleus),
                           std::string(coda), lang};
    }
  }
  throw Error(ErrorCode::kUnparsableSyllable,
              std::string(LanguageName(lang)) + " syllable '" +
                  std::string(syllable) + "'");
}

bool LexiconEntry::HasCognates() const {
  return std::any_of(cognates.begin(), cognates.end(),
                     [](const auto& v) { return !v.empty(); });
}

std::optional<size_t> PhonemeVocab::IndexOf(Language lang, Position pos,
                                            std::string_view symbol) const {
  const auto& idx = index_[static_cast<int>(lang)][static_cast<int>(pos)];
  auto it = idx.find(symbol);
  if (it == idx.end()) return std::nullopt;
  return it->second;
}

bool PhonemeVocab::empty() const {
  for (const auto& per_lang : symbols_) {
    for (const auto& v : per_lang) {
      if (!v.empty()) return false;
    }
  }
  return true;
}

void PhonemeVocab::Insert(Language lang, Position pos, const std::string& symbol) {
  symbols_[static_cast<int>(lang)][static_cast<int>(pos)].push_back(symbol);
}

void PhonemeVocab::Finalize() {
  for (int l = 0; l < 4; ++l) {
    for (int p = 0; p < 3; ++p) {
      auto& v = symbols_[l][p];
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
      index_[l][p].clear();
      for (size_t i = 0; i < v.size(); ++i) index_[l][p].emplace(v[i], i);
    }
  }
}

std::string PhonemeVocab::ToJson() const {
  nlohmann::ordered_json j;
  j["format"] = "hanphon.phoneme_vocab";
  j["version"] = kVersion;
  nlohmann::ordered_json langs = nlohmann::ordered_json::object();
  for (Language lang : kAllLanguages) {
    nlohmann::ordered_json positions = nlohmann::ordered_json::object();
    for (Position pos : kAllPositions) {
      nlohmann::ordered_json mapping = nlohmann::ordered_json::object();
      const auto& syms = symbols(lang, pos);
      for (size_t i = 0; i < syms.size(); ++i) mapping[SymbolLabel(syms[i])] = i;
      positions[PositionName(pos)] = std::move(mapping);
    }
    langs[LanguageName(lang)] = std::move(positions);
  }
  j["symbols"] = std::move(langs);
  return j.dump(2);
}

PhonemeVocab PhonemeVocab::FromJson(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kFormat, std::string("phoneme vocab: ") + e.what());
  }
  if (j.value("format", "") != "hanphon.phoneme_vocab" ||
      j.value("version", 0) != kVersion) {
    throw Error(ErrorCode::kFormat, "unsupported phoneme vocab format/version");
  }
  PhonemeVocab vocab;
  for (const auto& [lang_name, positions] : j.at("symbols").items()) {
    const Language lang = ParseLanguage(lang_name);
    for (const auto& [pos_name, mapping] : positions.items()) {
      const Position pos = ParsePosition(pos_name);
      std::vector<std::string> syms(mapping.size());
      for (const auto& [label, index] : mapping.items()) {
        const size_t i = index.get<size_t>();
        if (i >= syms.size()) throw Error(ErrorCode::kFormat, "vocab index out of range");
        syms[i] = label == kNullLabel ? std::string() : label;
      }
      for (auto& s : syms) vocab.Insert(lang, pos, s);
    }
  }
  vocab.Finalize();
  return vocab;
}

std::string PhonemeVocab::Fingerprint() const { return Sha256Hex(ToJson()); }

PhonemeVocab BuildVocab(const std::vector<LexiconEntry>& train_entries) {
  if (train_entries.empty()) {
    throw Error(ErrorCode::kEmptyCorpus, "cannot build a vocabulary from no entries");
  }
  PhonemeVocab vocab;
  auto add = [&vocab](const SyllableParts& parts) {
    for (Position pos : kAllPositions) vocab.Insert(parts.language, pos, parts.at(pos));
  };
  for (const auto& entry : train_entries) {
    add(entry.target);
    for (const auto& per_lang : entry.cognates) {
      for (const auto& parts : per_lang) add(parts);
    }
  }
  vocab.Finalize();
  return vocab;
}

namespace {

std::string SlotKey(Language lang, Position pos, std::string_view symbol,
                    bool positional) {
  std::string key = LanguageName(lang);
  key += '|';
  if (positional) {
    key += PositionName(pos);
    key += '|';
  }
  key += symbol;
  return key;
}

}  // namespace

IndicatorLayout::IndicatorLayout(const PhonemeVocab& vocab, bool positional)
    : positional_(positional) {
  for (Language lang : kSourceLanguages) {
    for (Position pos : kAllPositions) {
      for (const auto& sym : vocab.symbols(lang, pos)) {
        if (slots_.emplace(SlotKey(lang, pos, sym, positional), size_).second) {
          ++size_;
        }
      }
    }
  }
}

std::optional<size_t> IndicatorLayout::Slot(Language lang, Position pos,
                                            std::string_view symbol) const {
  auto it = slots_.find(SlotKey(lang, pos, symbol, positional_));
  if (it == slots_.end()) return std::nullopt;
  return it->second;
}

size_t CognateIndicator::PopCount() const {
  return static_cast<size_t>(std::count(bits.begin(), bits.end(), uint8_t{1}));
}

CognateIndicator Indicator(const LexiconEntry& entry,
                           const IndicatorLayout& layout) {
  CognateIndicator ind;
  ind.bits.assign(layout.size(), 0);
  for (Language lang : kSourceLanguages) {
    for (const auto& parts : entry.cognates[SourceIndex(lang)]) {
      for (Position pos : kAllPositions) {
        if (auto slot = layout.Slot(lang, pos, parts.at(pos))) ind.bits[*slot] = 1;
      }
    }
  }
  return ind;
}

}  // namespace hanphon::phonology
