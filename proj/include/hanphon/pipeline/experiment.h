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

#ifndef HANPHON_PIPELINE_EXPERIMENT_H_
#define HANPHON_PIPELINE_EXPERIMENT_H_

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hanphon/dt/tree.h"
#include "hanphon/eval/eval.h"
#include "hanphon/models/trainer.h"
#include "hanphon/unihan/dataset.h"

namespace hanphon::pipeline {

// A trained pronunciation model of any kind bound to its feature space.
class Predictor {
 public:
  Predictor(models::TrainConfig config, std::shared_ptr<const models::FeatureSpace> space);

  const models::TrainConfig& config() const { return config_; }
  const models::FeatureSpace& space() const { return *space_; }
  bool is_tree() const { return config_.model == models::ModelKind::kDecisionTree; }

  // Fits the model on `train`, early-stopping on `dev` for neural models.
  models::TrainResult Fit(const std::vector<models::Example>& train,
                          const std::vector<models::Example>& dev,
                          const models::TrainHooks& hooks = {});

  std::vector<phonology::SyllableParts> Predict(
      const std::vector<models::Example>& examples) const;

  // Writes model.ckpt (neural) or model.dt.json (trees) into `dir`.
  std::string Save(const std::string& dir, int epoch);
  static Predictor Load(const std::string& dir, const models::TrainConfig& config,
                        std::shared_ptr<const models::FeatureSpace> space);

  models::PronunciationModel* neural() { return neural_ ? &*neural_ : nullptr; }
  const dt::PositionTrees* trees() const { return trees_ ? &*trees_ : nullptr; }

 private:
  models::TrainConfig config_;
  std::shared_ptr<const models::FeatureSpace> space_;
  std::optional<models::PronunciationModel> neural_;
  std::optional<dt::PositionTrees> trees_;
};

std::shared_ptr<const models::FeatureSpace> MakeFeatureSpace(
    const unihan::Dataset& dataset, const models::TrainConfig& config);

// Training rows after the optional `train_subset` cut.
std::vector<phonology::LexiconEntry> TrainingEntries(const unihan::Dataset& dataset,
                                                     const models::TrainConfig& config);

// Scores predictions on `entries` and stamps report metadata.
eval::EvalReport EvaluateEntries(const Predictor& predictor,
                                 const std::vector<phonology::LexiconEntry>& entries,
                                 const std::string& data_manifest_hash);

const std::vector<phonology::LexiconEntry>& SplitEntries(const unihan::Dataset& dataset,
                                                         const std::string& split);

}  // namespace hanphon::pipeline

#endif  // HANPHON_PIPELINE_EXPERIMENT_H_
