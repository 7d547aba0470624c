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

#ifndef HANPHON_MODELS_TRAINER_H_
#define HANPHON_MODELS_TRAINER_H_

#include <functional>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "hanphon/eval/eval.h"
#include "hanphon/models/network.h"

namespace hanphon::models {

struct EpochRecord {
  int epoch = 0;
  double train_loss = 0.0;      // mean total loss over batches
  double train_main_loss = 0.0;
  double train_aux_loss = 0.0;
  double dev_ser = 0.0;
  double dev_ter = 0.0;
  bool improved = false;

  nlohmann::ordered_json ToJson() const;
};

struct TrainResult {
  std::vector<EpochRecord> log;
  int best_epoch = 0;
  double best_dev_ter = 0.0;
  double best_dev_ser = 0.0;
};

struct TrainHooks {
  // Called after every epoch; useful for streaming the JSONL log.
  std::function<void(const EpochRecord&)> on_epoch;
  // Ends training after the current epoch when it returns true.
  std::function<bool(const EpochRecord&)> stop;
};

// Mini-batch Adam with early stopping on dev TER. Sequence models are
// trained on batches of equal-length sequences. The parameters of the best
// dev epoch are restored before returning. An empty dev set disables early
// stopping. The model must already be initialized; dropout draws from a
// generator seeded with config().seed + 1. Errors: kDivergedLoss, kEmptyData.
TrainResult Train(PronunciationModel& model, const FeatureSpace& space,
                  const std::vector<Example>& train,
                  const std::vector<Example>& dev, const TrainHooks& hooks = {});

// Batches of example indices in a fixed order: grouped by token-sequence
// length when `by_length` is set, otherwise consecutive chunks.
std::vector<std::vector<size_t>> PredictionBatches(const std::vector<Example>& examples,
                                                   bool by_length, size_t batch_size);

// Argmax class triple per example (eval mode). Deterministic; batches may run
// on several threads.
std::vector<Labels> PredictClasses(const PronunciationModel& model,
                                   const std::vector<Example>& examples,
                                   int threads = 0);

std::vector<phonology::SyllableParts> Predict(const PronunciationModel& model,
                                              const FeatureSpace& space,
                                              const std::vector<Example>& examples,
                                              int threads = 0);

// Score against Example::reference.
eval::EvalReport Evaluate(const std::vector<phonology::SyllableParts>& predictions,
                          const std::vector<Example>& examples);

nlohmann::ordered_json CheckpointHeader(const PronunciationModel& model,
                                        const FeatureSpace& space, int epoch);
void SaveModel(const std::string& path, PronunciationModel& model,
               const FeatureSpace& space, int epoch);
// Rebuilds the model from the checkpoint header and verifies that it was
// trained against `space`. Errors: kFormat, kInvalidConfig.
PronunciationModel LoadModel(const std::string& path, const FeatureSpace& space);

}  // namespace hanphon::models

#endif  // HANPHON_MODELS_TRAINER_H_
