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

#include "hanphon/models/config.h"

#include <set>

#include "hanphon/common/error.h"

namespace hanphon::models {

const char* ModelKindName(ModelKind kind) {
  switch (kind) {
    case ModelKind::kDecisionTree: return "dt";
    case ModelKind::kMlp: return "mlp";
    case ModelKind::kLstm: return "lstm";
    case ModelKind::kMultimodal: return "multimodal";
  }
  return "?";
}

const char* HeadModeName(HeadMode mode) {
  return mode == HeadMode::kSequential ? "sequential" : "independent";
}

std::string TrainConfig::DisplayName() const {
  std::string name;
  switch (model) {
    case ModelKind::kDecisionTree: name = use_cognates ? "DT (BoR, ph)" : "DT (BoR)"; break;
    case ModelKind::kMlp: name = use_cognates ? "MLP (BoR, ph)" : "MLP (BoR)"; break;
    case ModelKind::kLstm: name = "LSTM (GeoD)"; break;
    case ModelKind::kMultimodal: name = "LSTM (GeoD, ph)"; break;
  }
  if (model != ModelKind::kDecisionTree && head == HeadMode::kIndependent) {
    name += " [independent]";
  }
  return name;
}

namespace {

[[noreturn]] void Bad(const std::string& key, const std::string& why) {
  throw Error(ErrorCode::kInvalidConfig, "'" + key + "': " + why);
}

template <typename T>
void Read(const nlohmann::json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    Bad(key, e.what());
  }
}

}  // namespace

TrainConfig TrainConfig::FromJson(const nlohmann::json& j) {
  static const std::set<std::string> kKnown = {
      "model", "use_cognates", "indicator_positional", "head", "aux_weight",
      "hidden_sizes", "hidden_dropout", "l2", "embedding_dim", "lstm_layers",
      "lstm_hidden", "input_dropout", "recurrent_dropout", "optimizer",
      "batch_size", "max_epochs", "patience", "seed", "train_subset",
      "disable_dropout", "dt"};
  if (!j.is_object()) throw Error(ErrorCode::kInvalidConfig, "config must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (!kKnown.count(key)) Bad(key, "unknown key");
  }
  TrainConfig c;
  std::string model = "mlp";
  Read(j, "model", model);
  if (model == "dt") c.model = ModelKind::kDecisionTree;
  else if (model == "mlp") c.model = ModelKind::kMlp;
  else if (model == "lstm") c.model = ModelKind::kLstm;
  else if (model == "multimodal") c.model = ModelKind::kMultimodal;
  else Bad("model", "expected dt|mlp|lstm|multimodal");
  std::string head = "sequential";
  Read(j, "head", head);
  if (head == "sequential") c.head = HeadMode::kSequential;
  else if (head == "independent") c.head = HeadMode::kIndependent;
  else Bad("head", "expected sequential|independent");
  Read(j, "use_cognates", c.use_cognates);
  Read(j, "indicator_positional", c.indicator_positional);
  Read(j, "aux_weight", c.aux_weight);
  Read(j, "hidden_sizes", c.hidden_sizes);
  Read(j, "hidden_dropout", c.hidden_dropout);
  Read(j, "l2", c.l2);
  Read(j, "embedding_dim", c.embedding_dim);
  Read(j, "lstm_layers", c.lstm_layers);
  Read(j, "lstm_hidden", c.lstm_hidden);
  Read(j, "input_dropout", c.input_dropout);
  Read(j, "recurrent_dropout", c.recurrent_dropout);
  if (j.contains("optimizer")) {
    const auto& o = j.at("optimizer");
    for (const auto& [key, _] : o.items()) {
      if (key != "lr" && key != "beta1" && key != "beta2" && key != "epsilon") {
        Bad("optimizer." + key, "unknown key");
      }
    }
    Read(o, "lr", c.adam.lr);
    Read(o, "beta1", c.adam.beta1);
    Read(o, "beta2", c.adam.beta2);
    Read(o, "epsilon", c.adam.epsilon);
  }
  Read(j, "batch_size", c.batch_size);
  Read(j, "max_epochs", c.max_epochs);
  Read(j, "patience", c.patience);
  Read(j, "seed", c.seed);
  Read(j, "train_subset", c.train_subset);
  Read(j, "disable_dropout", c.disable_dropout);
  if (j.contains("dt")) {
    const auto& d = j.at("dt");
    for (const auto& [key, _] : d.items()) {
      if (key != "max_depth" && key != "min_samples_leaf" && key != "structure") {
        Bad("dt." + key, "unknown key");
      }
    }
    if (d.contains("max_depth") && !d.at("max_depth").is_null()) {
      int depth = 0;
      Read(d, "max_depth", depth);
      c.dt_max_depth = depth;
    }
    Read(d, "min_samples_leaf", c.dt_min_samples_leaf);
    if (d.contains("structure")) {
      std::string structure;
      Read(d, "structure", structure);
      if (structure != "per_position" && structure != "joint") {
        Bad("dt.structure", "must be per_position or joint");
      }
      c.dt_joint = structure == "joint";
    }
  }
  c.Validate();
  return c;
}

void TrainConfig::Validate() const {
  auto rate_ok = [](double r) { return r >= 0.0 && r < 1.0; };
  if (model == ModelKind::kLstm && use_cognates) {
    Bad("use_cognates", "the unimodal lstm takes no cognate input; use model=multimodal");
  }
  if (hidden_sizes.empty()) Bad("hidden_sizes", "must not be empty");
  for (int h : hidden_sizes) {
    if (h <= 0) Bad("hidden_sizes", "sizes must be positive");
  }
  if (hidden_dropout.size() != hidden_sizes.size()) {
    Bad("hidden_dropout", "needs one rate per hidden layer");
  }
  for (double r : hidden_dropout) {
    if (!rate_ok(r)) Bad("hidden_dropout", "rates must be in [0, 1)");
  }
  if (!rate_ok(input_dropout)) Bad("input_dropout", "must be in [0, 1)");
  if (!rate_ok(recurrent_dropout)) Bad("recurrent_dropout", "must be in [0, 1)");
  if (l2 < 0.0) Bad("l2", "must be >= 0");
  if (aux_weight < 0.0) Bad("aux_weight", "must be >= 0");
  if (embedding_dim <= 0) Bad("embedding_dim", "must be positive");
  if (lstm_layers <= 0) Bad("lstm_layers", "must be positive");
  if (lstm_hidden <= 0) Bad("lstm_hidden", "must be positive");
  if (adam.lr <= 0.0) Bad("optimizer.lr", "must be positive");
  if (adam.beta1 < 0.0 || adam.beta1 >= 1.0) Bad("optimizer.beta1", "must be in [0, 1)");
  if (adam.beta2 < 0.0 || adam.beta2 >= 1.0) Bad("optimizer.beta2", "must be in [0, 1)");
  if (adam.epsilon <= 0.0) Bad("optimizer.epsilon", "must be positive");
  if (batch_size <= 0) Bad("batch_size", "must be positive");
  if (max_epochs <= 0) Bad("max_epochs", "must be positive");
  if (patience <= 0) Bad("patience", "must be positive");
  if (dt_min_samples_leaf < 1) Bad("dt.min_samples_leaf", "must be >= 1");
  if (dt_max_depth && *dt_max_depth < 0) Bad("dt.max_depth", "must be >= 0");
}

nlohmann::ordered_json TrainConfig::ToJson() const {
  nlohmann::ordered_json j;
  j["model"] = ModelKindName(model);
  j["use_cognates"] = use_cognates;
  j["indicator_positional"] = indicator_positional;
  j["head"] = HeadModeName(head);
  j["aux_weight"] = aux_weight;
  j["hidden_sizes"] = hidden_sizes;
  j["hidden_dropout"] = hidden_dropout;
  j["l2"] = l2;
  j["embedding_dim"] = embedding_dim;
  j["lstm_layers"] = lstm_layers;
  j["lstm_hidden"] = lstm_hidden;
  j["input_dropout"] = input_dropout;
  j["recurrent_dropout"] = recurrent_dropout;
  j["optimizer"] = {{"lr", adam.lr}, {"beta1", adam.beta1}, {"beta2", adam.beta2},
                    {"epsilon", adam.epsilon}};
  j["batch_size"] = batch_size;
  j["max_epochs"] = max_epochs;
  j["patience"] = patience;
  j["seed"] = seed;
  j["train_subset"] = train_subset;
  j["disable_dropout"] = disable_dropout;
  j["dt"] = {{"max_depth", dt_max_depth ? nlohmann::ordered_json(*dt_max_depth)
                                        : nlohmann::ordered_json(nullptr)},
             {"min_samples_leaf", dt_min_samples_leaf},
             {"structure", dt_joint ? "joint" : "per_position"}};
  return j;
}

}  // namespace hanphon::models
