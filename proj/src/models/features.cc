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

#include "hanphon/models/features.h"

#include "hanphon/common/error.h"
#include "hanphon/common/hash.h"
#include "hanphon/common/utf8.h"

namespace hanphon::models {

using phonology::Position;

FeatureSpace::FeatureSpace(ids::RadicalInventory inventory,
                           phonology::PhonemeVocab vocab, bool positional_indicator)
    : inventory_(std::move(inventory)),
      vocab_(std::move(vocab)),
      layout_(vocab_, positional_indicator) {}

FeatureDims FeatureSpace::dims() const {
  FeatureDims d;
  d.token_vocab = kOperatorTokens + static_cast<int>(inventory_.size()) + 1;
  d.bor_dim = static_cast<int>(inventory_.size()) + 1;
  d.indicator_dim = static_cast<int>(layout_.size());
  for (Position pos : phonology::kAllPositions) {
    d.classes[static_cast<int>(pos)] =
        static_cast<int>(vocab_.size(phonology::Language::kCantonese, pos));
  }
  return d;
}

int FeatureSpace::TokenId(char32_t cp) const {
  if (ids::IdsOperator::IsOperator(cp)) return static_cast<int>(cp - 0x2FF0);
  return kOperatorTokens + static_cast<int>(inventory_.IndexOf(cp));
}

Example FeatureSpace::Encode(const phonology::LexiconEntry& entry) const {
  Example ex;
  ex.reference = entry.target;
  ex.has_geod = !entry.geod.empty();
  ex.tokens.reserve(entry.geod.size());
  for (char32_t cp : entry.geod) ex.tokens.push_back(TokenId(cp));

  ids::BoRVector bor = entry.bor;
  if (bor.counts.empty() && bor.unk == 0 && ex.has_geod) {
    bor = ids::ToBor(entry.geod, inventory_);
  }
  if (!bor.counts.empty() && bor.counts.size() != inventory_.size()) {
    throw Error(ErrorCode::kShapeMismatch,
                "BoR of " + CodepointLabel(entry.logograph) + " has " +
                    std::to_string(bor.counts.size()) + " slots, inventory has " +
                    std::to_string(inventory_.size()));
  }
  ex.has_bor = !bor.counts.empty();
  for (size_t i = 0; i < bor.counts.size(); ++i) {
    if (bor.counts[i] != 0) ex.bor.emplace_back(static_cast<int>(i), bor.counts[i]);
  }
  if (bor.unk != 0) ex.bor.emplace_back(static_cast<int>(inventory_.size()), bor.unk);

  const phonology::CognateIndicator ind = phonology::Indicator(entry, layout_);
  for (size_t i = 0; i < ind.bits.size(); ++i) {
    if (ind.bits[i]) ex.indicator.push_back(static_cast<int>(i));
  }

  for (Position pos : phonology::kAllPositions) {
    auto idx = vocab_.IndexOf(phonology::Language::kCantonese, pos, entry.target.at(pos));
    ex.labels[static_cast<int>(pos)] = idx ? static_cast<int>(*idx) : -1;
  }
  return ex;
}

std::vector<Example> FeatureSpace::EncodeAll(
    const std::vector<phonology::LexiconEntry>& entries) const {
  std::vector<Example> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(Encode(e));
  return out;
}

phonology::SyllableParts FeatureSpace::Decode(const std::array<int, 3>& classes) const {
  phonology::SyllableParts parts;
  for (Position pos : phonology::kAllPositions) {
    const auto& syms = vocab_.symbols(phonology::Language::kCantonese, pos);
    const int c = classes[static_cast<int>(pos)];
    if (c < 0 || c >= static_cast<int>(syms.size())) {
      throw Error(ErrorCode::kIndexOutOfRange,
                  std::string(phonology::PositionName(pos)) + " class " + std::to_string(c));
    }
    parts.at(pos) = syms[static_cast<size_t>(c)];
  }
  return parts;
}

std::string FeatureSpace::Fingerprint() const {
  std::string blob = vocab_.Fingerprint();
  blob += layout_.positional() ? "|positional|" : "|pooled|";
  for (char32_t cp : inventory_.radicals()) blob += CodepointLabel(cp) + ",";
  return Sha256Hex(blob);
}

nn::Tensor2 BorMatrix(const std::vector<const Example*>& batch, int dim) {
  nn::Tensor2 x = nn::Tensor2::Zero(static_cast<Eigen::Index>(batch.size()), dim);
  for (size_t r = 0; r < batch.size(); ++r) {
    if (!batch[r]->has_bor) throw Error(ErrorCode::kMissingFeature, "entry has no BoR");
    for (const auto& [slot, count] : batch[r]->bor) {
      x(static_cast<Eigen::Index>(r), slot) = count;
    }
  }
  return x;
}

nn::Tensor2 IndicatorMatrix(const std::vector<const Example*>& batch, int dim) {
  nn::Tensor2 x = nn::Tensor2::Zero(static_cast<Eigen::Index>(batch.size()), dim);
  for (size_t r = 0; r < batch.size(); ++r) {
    for (int slot : batch[r]->indicator) x(static_cast<Eigen::Index>(r), slot) = 1.0;
  }
  return x;
}

}  // namespace hanphon::models
