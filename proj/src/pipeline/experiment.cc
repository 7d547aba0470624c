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

#include "hanphon/pipeline/experiment.h"

#include <filesystem>

#include "hanphon/common/error.h"

namespace hanphon::pipeline {

namespace fs = std::filesystem;
using models::ModelKind;

namespace {

bool TreeUsesIndicator(const models::TrainConfig& c) { return c.use_cognates; }

}  // namespace

Predictor::Predictor(models::TrainConfig config,
                     std::shared_ptr<const models::FeatureSpace> space)
    : config_(std::move(config)), space_(std::move(space)) {
  config_.Validate();
  if (!is_tree()) {
    neural_.emplace(config_, space_->dims());
    neural_->Init(config_.seed);
  }
}

models::TrainResult Predictor::Fit(const std::vector<models::Example>& train,
                                   const std::vector<models::Example>& dev,
                                   const models::TrainHooks& hooks) {
  if (!is_tree()) return models::Train(*neural_, *space_, train, dev, hooks);

  const dt::FeatureMatrix x = dt::DtFeatures(train, space_->dims(), TreeUsesIndicator(config_));
  std::vector<models::Labels> y;
  y.reserve(train.size());
  for (const auto& ex : train) y.push_back(ex.labels);
  dt::DtConfig dc;
  dc.max_depth = config_.dt_max_depth;
  dc.min_samples_leaf = config_.dt_min_samples_leaf;
  dc.structure = config_.dt_joint ? dt::TreeStructure::kJoint : dt::TreeStructure::kPerPosition;
  trees_ = dt::PositionTrees::Fit(x, y, space_->dims().classes, dc);

  models::TrainResult result;
  models::EpochRecord rec;
  rec.epoch = 1;
  rec.improved = true;
  if (!dev.empty()) {
    const eval::EvalReport r = models::Evaluate(Predict(dev), dev);
    rec.dev_ser = r.ser;
    rec.dev_ter = r.ter;
  }
  result.log.push_back(rec);
  result.best_epoch = 1;
  result.best_dev_ser = rec.dev_ser;
  result.best_dev_ter = rec.dev_ter;
  if (hooks.on_epoch) hooks.on_epoch(rec);
  return result;
}

std::vector<phonology::SyllableParts> Predictor::Predict(
    const std::vector<models::Example>& examples) const {
  if (!is_tree()) return models::Predict(*neural_, *space_, examples);
  if (!trees_) throw Error(ErrorCode::kInvalidConfig, "decision trees are not fitted");
  const dt::FeatureMatrix x =
      dt::DtFeatures(examples, space_->dims(), TreeUsesIndicator(config_));
  std::vector<phonology::SyllableParts> out;
  out.reserve(examples.size());
  for (const auto& l : trees_->PredictAll(x)) out.push_back(space_->Decode(l));
  return out;
}

std::string Predictor::Save(const std::string& dir, int epoch) {
  if (!is_tree()) {
    const std::string path = (fs::path(dir) / "model.ckpt").string();
    models::SaveModel(path, *neural_, *space_, epoch);
    return path;
  }
  nlohmann::ordered_json j = trees_->ToJson();
  j["feature_sha256"] = space_->Fingerprint();
  const std::string path = (fs::path(dir) / "model.dt.json").string();
  unihan::WriteFile(path, j.dump() + "\n");
  return path;
}

Predictor Predictor::Load(const std::string& dir, const models::TrainConfig& config,
                          std::shared_ptr<const models::FeatureSpace> space) {
  Predictor p(config, space);
  if (!p.is_tree()) {
    p.neural_.emplace(models::LoadModel((fs::path(dir) / "model.ckpt").string(), *space));
    return p;
  }
  const auto j = nlohmann::json::parse(
      unihan::ReadFile((fs::path(dir) / "model.dt.json").string()), nullptr, false);
  if (j.is_discarded()) throw Error(ErrorCode::kFormat, dir + ": unreadable model.dt.json");
  if (j.value("feature_sha256", "") != space->Fingerprint()) {
    throw Error(ErrorCode::kInvalidConfig,
                dir + ": trees were fitted on a different vocabulary or inventory");
  }
  p.trees_ = dt::PositionTrees::FromJson(j);
  return p;
}

std::shared_ptr<const models::FeatureSpace> MakeFeatureSpace(
    const unihan::Dataset& dataset, const models::TrainConfig& config) {
  return std::make_shared<const models::FeatureSpace>(dataset.inventory, dataset.vocab,
                                                      config.indicator_positional);
}

std::vector<phonology::LexiconEntry> TrainingEntries(const unihan::Dataset& dataset,
                                                     const models::TrainConfig& config) {
  const auto& train = dataset.split.train;
  if (config.train_subset == 0 || config.train_subset >= train.size()) return train;
  return {train.begin(), train.begin() + static_cast<std::ptrdiff_t>(config.train_subset)};
}

eval::EvalReport EvaluateEntries(const Predictor& predictor,
                                 const std::vector<phonology::LexiconEntry>& entries,
                                 const std::string& data_manifest_hash) {
  const auto examples = predictor.space().EncodeAll(entries);
  eval::EvalReport r = models::Evaluate(predictor.Predict(examples), examples);
  r.model_id = predictor.config().DisplayName();
  r.data_manifest_hash = data_manifest_hash;
  r.seed = predictor.config().seed;
  return r;
}

const std::vector<phonology::LexiconEntry>& SplitEntries(const unihan::Dataset& dataset,
                                                         const std::string& split) {
  if (split == "train") return dataset.split.train;
  if (split == "dev") return dataset.split.dev;
  if (split == "test") return dataset.split.test;
  throw Error(ErrorCode::kInvalidConfig, "unknown split '" + split + "' (train|dev|test)");
}

}  // namespace hanphon::pipeline
