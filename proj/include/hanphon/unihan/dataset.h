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

#ifndef HANPHON_UNIHAN_DATASET_H_
#define HANPHON_UNIHAN_DATASET_H_

#include <cstdint>
#include <nlohmann/json.hpp>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hanphon/ids/ids.h"
#include "hanphon/phonology/phonology.h"
#include "hanphon/unihan/unihan.h"

namespace hanphon::unihan {

struct IngestOptions {
  std::string unihan_path;
  std::string ids_path;
  std::string tables_dir;  // must contain segmentation.tsv
  uint64_t seed = 42;
  AssembleOptions assemble;
  // Radicals seen in fewer training entries than this map to UNK.
  size_t min_radical_entries = 3;
  // Optional SHA-256 pins; a mismatch aborts ingestion.
  std::optional<std::string> unihan_sha256;
  std::optional<std::string> ids_sha256;
};

struct Dataset {
  DatasetSplit split;
  ids::RadicalInventory inventory;
  // Components kept whole by the frequent granularity; empty otherwise.
  std::set<char32_t> terminals;
  phonology::PhonemeVocab vocab;
  nlohmann::ordered_json manifest;

  // SHA-256 of the serialized manifest; identifies the data in reports.
  std::string ManifestHash() const;
};

inline constexpr const char* kSegmentationTableFile = "segmentation.tsv";

// Reads the optional keys of an ingest config object: granularity,
// korean_field, min_radical_entries, unihan_sha256, ids_sha256.
// Errors: kInvalidConfig.
void ApplyIngestConfig(const nlohmann::json& j, IngestOptions& options);

// parse -> assemble -> split -> inventory/BoR (train split) -> vocab.
Dataset BuildDataset(const IngestOptions& options);

// Writes train/dev/test.jsonl, vocab.json, inventory.json and manifest.json.
void WriteDataset(const Dataset& dataset, const std::string& dir);
Dataset LoadDataset(const std::string& dir);

nlohmann::ordered_json EntryToJson(const phonology::LexiconEntry& entry);
phonology::LexiconEntry EntryFromJson(const nlohmann::json& j);

std::string InventoryToJson(const ids::RadicalInventory& inventory, size_t min_entries,
                            Granularity granularity,
                            const std::set<char32_t>& terminals = {});
ids::RadicalInventory InventoryFromJson(std::string_view text);
std::set<char32_t> TerminalsFromJson(std::string_view text);

// Read/write whole files; throw Error(kIo).
std::string ReadFile(const std::string& path);
void WriteFile(const std::string& path, std::string_view content);

}  // namespace hanphon::unihan

#endif  // HANPHON_UNIHAN_DATASET_H_
