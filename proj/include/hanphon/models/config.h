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

#ifndef HANPHON_MODELS_CONFIG_H_
#define HANPHON_MODELS_CONFIG_H_

#include <cstdint>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "hanphon/nn/optim.h"

namespace hanphon::models {

enum class ModelKind { kDecisionTree, kMlp, kLstm, kMultimodal };
enum class HeadMode { kIndependent, kSequential };

const char* ModelKindName(ModelKind kind);  // "dt", "mlp", "lstm", "multimodal"
const char* HeadModeName(HeadMode mode);    // "independent", "sequential"

struct TrainConfig {
  ModelKind model = ModelKind::kMlp;
  // Concatenate the cognate indicator to the BoR input (dt and mlp only;
  // multimodal always uses it, lstm never does).
  bool use_cognates = false;
  bool indicator_positional = true;
  HeadMode head = HeadMode::kSequential;
  double aux_weight = 0.3;

  std::vector<int> hidden_sizes = {750, 500, 250};
  std::vector<double> hidden_dropout = {0.5, 0.5, 0.2};
  double l2 = 1e-4;

  int embedding_dim = 64;
  int lstm_layers = 2;
  int lstm_hidden = 256;
  double input_dropout = 0.2;
  double recurrent_dropout = 0.5;

  nn::AdamConfig adam;
  int batch_size = 64;
  int max_epochs = 100;
  int patience = 10;
  uint64_t seed = 1;
  // Use only the first N training entries (0 = all).
  size_t train_subset = 0;
  // Turns every dropout rate to zero.
  bool disable_dropout = false;

  // Decision tree.
  std::optional<int> dt_max_depth;
  int dt_min_samples_leaf = 5;
  // One tree predicting all three positions instead of a tree per position.
  bool dt_joint = false;

  // Short identifier used in reports, e.g. "MLP (BoR)".
  std::string DisplayName() const;

  // Errors: kInvalidConfig with the offending key.
  static TrainConfig FromJson(const nlohmann::json& j);
  nlohmann::ordered_json ToJson() const;
  void Validate() const;
};

}  // namespace hanphon::models

#endif  // HANPHON_MODELS_CONFIG_H_
