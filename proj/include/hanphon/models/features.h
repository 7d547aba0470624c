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

#ifndef HANPHON_MODELS_FEATURES_H_
#define HANPHON_MODELS_FEATURES_H_

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "hanphon/ids/ids.h"
#include "hanphon/nn/tensor.h"
#include "hanphon/phonology/phonology.h"

namespace hanphon::models {

// GeoD token ids: the twelve description operators, then inventory radicals,
// then UNK.
inline constexpr int kOperatorTokens = 12;

using Labels = std::array<int, 3>;

struct Example {
  std::vector<int> tokens;
  std::vector<std::pair<int, double>> bor;  // sparse (slot, count); UNK is the last slot
  std::vector<int> indicator;               // set slots
  std::array<int, 3> labels = {-1, -1, -1}; // indexed by Position; -1 = unseen symbol
  phonology::SyllableParts reference;
  bool has_geod = false;
  bool has_bor = false;
};

struct FeatureDims {
  int token_vocab = 0;
  int bor_dim = 0;
  int indicator_dim = 0;
  std::array<int, 3> classes = {0, 0, 0};
};

class FeatureSpace {
 public:
  FeatureSpace(ids::RadicalInventory inventory, phonology::PhonemeVocab vocab,
               bool positional_indicator = true);

  const ids::RadicalInventory& inventory() const { return inventory_; }
  const phonology::PhonemeVocab& vocab() const { return vocab_; }
  const phonology::IndicatorLayout& layout() const { return layout_; }
  FeatureDims dims() const;

  int TokenId(char32_t cp) const;
  // Errors: kShapeMismatch when a stored BoR does not fit the inventory.
  Example Encode(const phonology::LexiconEntry& entry) const;
  std::vector<Example> EncodeAll(const std::vector<phonology::LexiconEntry>& entries) const;
  phonology::SyllableParts Decode(const std::array<int, 3>& classes) const;

  // Digest of inventory, vocabulary and indicator layout.
  std::string Fingerprint() const;

 private:
  ids::RadicalInventory inventory_;
  phonology::PhonemeVocab vocab_;
  phonology::IndicatorLayout layout_;
};

// Dense batch matrices, one row per example.
nn::Tensor2 BorMatrix(const std::vector<const Example*>& batch, int dim);
nn::Tensor2 IndicatorMatrix(const std::vector<const Example*>& batch, int dim);

}  // namespace hanphon::models

#endif  // HANPHON_MODELS_FEATURES_H_
