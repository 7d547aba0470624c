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

#include "hanphon/unihan/dataset.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "hanphon/common/error.h"
#include "hanphon/common/hash.h"
#include "hanphon/common/utf8.h"

namespace hanphon::unihan {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;
using phonology::Language;
using phonology::LexiconEntry;
using phonology::Position;
using phonology::SyllableParts;

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void WriteFile(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path);
}

std::string Dataset::ManifestHash() const { return Sha256Hex(manifest.dump(2)); }

namespace {

ordered_json PartsToJson(const SyllableParts& p) {
  ordered_json j;
  for (Position pos : phonology::kAllPositions) {
    const auto& s = p.at(pos);
    j[phonology::PositionName(pos)] = s.empty() ? ordered_json(nullptr) : ordered_json(s);
  }
  return j;
}

SyllableParts PartsFromJson(const json& j, Language lang) {
  SyllableParts p;
  p.language = lang;
  for (Position pos : phonology::kAllPositions) {
    const auto& v = j.at(phonology::PositionName(pos));
    p.at(pos) = v.is_null() ? std::string() : v.get<std::string>();
  }
  return p;
}

}  // namespace

ordered_json EntryToJson(const LexiconEntry& entry) {
  ordered_json j;
  j["codepoint"] = CodepointLabel(entry.logograph);
  j["char"] = EncodeUtf8(entry.logograph);
  ordered_json geod = ordered_json::array();
  for (char32_t t : entry.geod) geod.push_back(EncodeUtf8(t));
  j["geod"] = std::move(geod);
  ordered_json bor = ordered_json::array();
  for (size_t i = 0; i < entry.bor.counts.size(); ++i) {
    if (entry.bor.counts[i]) bor.push_back({i, entry.bor.counts[i]});
  }
  j["bor"] = {{"size", entry.bor.counts.size()}, {"counts", std::move(bor)},
              {"unk", entry.bor.unk}};
  j["target"] = PartsToJson(entry.target);
  ordered_json cognates = ordered_json::object();
  for (Language lang : phonology::kSourceLanguages) {
    ordered_json list = ordered_json::array();
    for (const auto& p : entry.cognates[phonology::SourceIndex(lang)]) {
      list.push_back(PartsToJson(p));
    }
    cognates[phonology::LanguageName(lang)] = std::move(list);
  }
  j["cognates"] = std::move(cognates);
  return j;
}

LexiconEntry EntryFromJson(const json& j) {
  LexiconEntry e;
  e.logograph = ParseCodepointLabel(j.at("codepoint").get<std::string>());
  for (const auto& t : j.at("geod")) {
    const std::u32string cps = DecodeUtf8(t.get<std::string>());
    if (cps.size() != 1) throw Error(ErrorCode::kFormat, "GeoD token must be one codepoint");
    e.geod.push_back(cps[0]);
  }
  const auto& bor = j.at("bor");
  e.bor.counts.assign(bor.at("size").get<size_t>(), 0);
  for (const auto& pair : bor.at("counts")) {
    const size_t idx = pair.at(0).get<size_t>();
    if (idx >= e.bor.counts.size()) throw Error(ErrorCode::kFormat, "BoR index out of range");
    e.bor.counts[idx] = pair.at(1).get<int>();
  }
  e.bor.unk = bor.at("unk").get<int>();
  e.target = PartsFromJson(j.at("target"), Language::kCantonese);
  for (Language lang : phonology::kSourceLanguages) {
    for (const auto& p : j.at("cognates").at(phonology::LanguageName(lang))) {
      e.cognates[phonology::SourceIndex(lang)].push_back(PartsFromJson(p, lang));
    }
  }
  return e;
}

std::string InventoryToJson(const ids::RadicalInventory& inventory, size_t min_entries,
                            Granularity granularity, const std::set<char32_t>& terminals) {
  ordered_json j;
  j["format"] = "hanphon.radical_inventory";
  j["version"] = 1;
  j["granularity"] = GranularityName(granularity);
  j["min_entries"] = min_entries;
  ordered_json radicals = ordered_json::array();
  for (char32_t cp : inventory.radicals()) radicals.push_back(EncodeUtf8(cp));
  j["radicals"] = std::move(radicals);
  if (granularity == Granularity::kFrequent) {
    ordered_json t = ordered_json::array();
    for (char32_t cp : terminals) t.push_back(EncodeUtf8(cp));
    j["terminals"] = std::move(t);
  }
  return j.dump(1);
}

ids::RadicalInventory InventoryFromJson(std::string_view text) {
  json j = json::parse(text);
  if (j.value("format", "") != "hanphon.radical_inventory") {
    throw Error(ErrorCode::kFormat, "not a radical inventory file");
  }
  std::vector<char32_t> radicals;
  for (const auto& r : j.at("radicals")) {
    radicals.push_back(DecodeUtf8(r.get<std::string>()).at(0));
  }
  return ids::RadicalInventory(std::move(radicals));
}

std::set<char32_t> TerminalsFromJson(std::string_view text) {
  json j = json::parse(text);
  if (j.value("format", "") != "hanphon.radical_inventory") {
    throw Error(ErrorCode::kFormat, "not a radical inventory file");
  }
  std::set<char32_t> out;
  if (j.contains("terminals")) {
    for (const auto& r : j.at("terminals")) out.insert(DecodeUtf8(r.get<std::string>()).at(0));
  }
  return out;
}

void ApplyIngestConfig(const nlohmann::json& j, IngestOptions& options) {
  if (!j.is_object()) throw Error(ErrorCode::kInvalidConfig, "ingest config must be a JSON object");
  auto text = [&](const std::string& key) {
    if (!j.at(key).is_string()) throw Error(ErrorCode::kInvalidConfig, "'" + key + "' must be a string");
    return j.at(key).get<std::string>();
  };
  for (const auto& [key, value] : j.items()) {
    if (key == "granularity") {
      options.assemble.granularity = ParseGranularity(text(key));
    } else if (key == "korean_field") {
      const std::string f = text(key);
      if (f == "kKorean") options.assemble.korean_field = ReadingField::kKorean;
      else if (f == "kHangul") options.assemble.korean_field = ReadingField::kHangul;
      else throw Error(ErrorCode::kInvalidConfig, "'korean_field' must be kKorean or kHangul");
    } else if (key == "min_radical_entries") {
      if (!value.is_number_unsigned() || value.get<size_t>() == 0) {
        throw Error(ErrorCode::kInvalidConfig, "'min_radical_entries' must be a positive integer");
      }
      options.min_radical_entries = value.get<size_t>();
    } else if (key == "unihan_sha256") {
      options.unihan_sha256 = text(key);
    } else if (key == "ids_sha256") {
      options.ids_sha256 = text(key);
    } else {
      throw Error(ErrorCode::kInvalidConfig, "unknown key '" + key + "'");
    }
  }
}

Dataset BuildDataset(const IngestOptions& options) {
  const std::string tables_path =
      (fs::path(options.tables_dir) / kSegmentationTableFile).string();
  const std::string unihan_sha = Sha256File(options.unihan_path);
  const std::string ids_sha = Sha256File(options.ids_path);
  if (options.unihan_sha256 && *options.unihan_sha256 != unihan_sha) {
    throw Error(ErrorCode::kInvalidConfig,
                "Unihan snapshot hash mismatch: expected " + *options.unihan_sha256 +
                    ", got " + unihan_sha);
  }
  if (options.ids_sha256 && *options.ids_sha256 != ids_sha) {
    throw Error(ErrorCode::kInvalidConfig, "IDS snapshot hash mismatch: expected " +
                                               *options.ids_sha256 + ", got " + ids_sha);
  }

  const UnihanParseResult parsed = ParseUnihanFile(options.unihan_path);
  const ids::IdsDatabase ids_db = ids::IdsDatabase::Load(options.ids_path);
  const auto tables = phonology::SegmentationTables::Load(tables_path);
  AssembleResult assembled = Assemble(parsed.records, ids_db, tables, options.assemble);

  Dataset ds;
  ds.split = Split(std::move(assembled.entries), options.seed);

  if (options.assemble.granularity == Granularity::kFrequent) {
    std::vector<ids::GeoDSequence> listed;
    listed.reserve(ds.split.train.size());
    for (const auto& e : ds.split.train) listed.push_back(e.geod);
    ds.terminals = ids::FrequentComponents(listed, ids_db.table(), options.min_radical_entries);
    const std::set<char32_t>& terminals = ds.terminals;
    for (auto* part : {&ds.split.train, &ds.split.dev, &ds.split.test}) {
      for (auto& e : *part) {
        e.geod = ids::Flatten(
            ids::ExpandToGranularity(ids::Reconstruct(e.geod), ids_db.table(), terminals));
      }
    }
  }

  std::vector<ids::GeoDSequence> train_geod;
  train_geod.reserve(ds.split.train.size());
  for (const auto& e : ds.split.train) train_geod.push_back(e.geod);
  ds.inventory = ids::RadicalInventory::FromCorpus(train_geod, options.min_radical_entries);
  for (auto* part : {&ds.split.train, &ds.split.dev, &ds.split.test}) {
    for (auto& e : *part) e.bor = ids::ToBor(e.geod, ds.inventory);
  }
  ds.vocab = phonology::BuildVocab(ds.split.train);

  ordered_json& m = ds.manifest;
  m["format"] = "hanphon.dataset";
  m["version"] = 1;
  m["inputs"] = {
      {"unihan", {{"file", fs::path(options.unihan_path).filename().string()},
                  {"sha256", unihan_sha}}},
      {"ids", {{"file", fs::path(options.ids_path).filename().string()},
               {"sha256", ids_sha}}},
      {"segmentation", {{"file", kSegmentationTableFile},
                        {"sha256", Sha256File(tables_path)}}}};
  m["seed"] = options.seed;
  m["options"] = {{"granularity", GranularityName(options.assemble.granularity)},
                  {"min_radical_entries", options.min_radical_entries},
                  {"korean_field", FieldName(options.assemble.korean_field)}};
  const AssembleReport& r = assembled.report;
  m["unihan"] = {{"records", parsed.records.size()},
                 {"malformed_lines", parsed.malformed.size()},
                 {"skipped_field_lines", parsed.skipped_fields}};
  m["assemble"] = {{"logographs_with_readings", r.logographs_with_readings},
                   {"kept", r.kept},
                   {"dropped_no_cantonese", r.dropped_no_cantonese},
                   {"dropped_no_ids", r.dropped_no_ids},
                   {"dropped_bad_ids", r.dropped_bad_ids},
                   {"dropped_unparsable_target", r.dropped_unparsable_target},
                   {"alternate_target_readings", r.alternate_target_readings},
                   {"unparsable_cognate_readings", r.unparsable_cognate_readings}};
  m["counts"] = {{"train", ds.split.train.size()},
                 {"dev", ds.split.dev.size()},
                 {"test", ds.split.test.size()}};
  const CoverageReport cov = Coverage(ds.split.test);
  m["test_coverage"] = {{"all_three_pct", cov.all_three_pct()},
                        {"none_pct", cov.none_pct()}};
  m["inventory_size"] = ds.inventory.size();
  ordered_json sizes = ordered_json::object();
  for (Language lang : phonology::kAllLanguages) {
    ordered_json per = ordered_json::object();
    for (Position pos : phonology::kAllPositions) {
      per[phonology::PositionName(pos)] = ds.vocab.size(lang, pos);
    }
    sizes[phonology::LanguageName(lang)] = std::move(per);
  }
  m["vocab_sizes"] = std::move(sizes);
  m["vocab_sha256"] = ds.vocab.Fingerprint();
  return ds;
}

namespace {

std::string EntriesToJsonl(const std::vector<LexiconEntry>& entries) {
  std::string out;
  for (const auto& e : entries) {
    out += EntryToJson(e).dump();
    out.push_back('\n');
  }
  return out;
}

std::vector<LexiconEntry> EntriesFromJsonl(const std::string& path) {
  std::vector<LexiconEntry> entries;
  std::istringstream in(ReadFile(path));
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      entries.push_back(EntryFromJson(json::parse(line)));
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kFormat,
                  path + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return entries;
}

}  // namespace

void WriteDataset(const Dataset& dataset, const std::string& dir) {
  fs::create_directories(dir);
  const fs::path d(dir);
  ordered_json manifest = dataset.manifest;
  ordered_json files = ordered_json::object();
  auto emit = [&](const char* name, const std::string& content) {
    WriteFile((d / name).string(), content);
    files[name] = Sha256Hex(content);
  };
  emit("train.jsonl", EntriesToJsonl(dataset.split.train));
  emit("dev.jsonl", EntriesToJsonl(dataset.split.dev));
  emit("test.jsonl", EntriesToJsonl(dataset.split.test));
  emit("vocab.json", dataset.vocab.ToJson());
  emit("inventory.json",
       InventoryToJson(dataset.inventory,
                       manifest.at("options").at("min_radical_entries").get<size_t>(),
                       ParseGranularity(
                           manifest.at("options").at("granularity").get<std::string>()),
                       dataset.terminals));
  manifest["files"] = std::move(files);
  WriteFile((d / "manifest.json").string(), manifest.dump(2) + "\n");
}

Dataset LoadDataset(const std::string& dir) {
  const fs::path d(dir);
  Dataset ds;
  try {
    ds.manifest = ordered_json::parse(ReadFile((d / "manifest.json").string()));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kFormat, "manifest.json: " + std::string(e.what()));
  }
  ds.manifest.erase("files");
  ds.split.seed = ds.manifest.at("seed").get<uint64_t>();
  ds.split.train = EntriesFromJsonl((d / "train.jsonl").string());
  ds.split.dev = EntriesFromJsonl((d / "dev.jsonl").string());
  ds.split.test = EntriesFromJsonl((d / "test.jsonl").string());
  ds.vocab = phonology::PhonemeVocab::FromJson(ReadFile((d / "vocab.json").string()));
  const std::string inventory = ReadFile((d / "inventory.json").string());
  ds.inventory = InventoryFromJson(inventory);
  ds.terminals = TerminalsFromJson(inventory);
  return ds;
}

}  // namespace hanphon::unihan
