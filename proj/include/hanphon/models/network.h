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

#ifndef HANPHON_MODELS_NETWORK_H_
#define HANPHON_MODELS_NETWORK_H_

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hanphon/common/random.h"
#include "hanphon/models/config.h"
#include "hanphon/models/features.h"
#include "hanphon/nn/layers.h"

namespace hanphon::models {

// Per-position tensors indexed by Position (onset, nucleus, coda).
using PositionTensors = std::array<nn::Tensor2, 3>;

// Three softmax classifiers. In sequential mode the coda sees the trunk
// features, the nucleus sees features + coda distribution, and the onset
// sees features + coda + nucleus distributions.
class OutputHead {
 public:
  OutputHead() = default;
  OutputHead(std::string name, HeadMode mode, int in, std::array<int, 3> classes);

  void Init(Rng& rng);
  HeadMode mode() const { return mode_; }
  int in() const { return in_; }

  struct Cache {
    PositionTensors inputs;
    PositionTensors logits;
    PositionTensors probs;
  };

  PositionTensors Forward(const nn::Tensor2& h, Cache* cache) const;
  // Summed cross-entropy over rows and positions; labels of -1 are skipped.
  static double Loss(const Cache& cache, const std::vector<Labels>& labels);
  // Gradient of scale * Loss w.r.t. h; accumulates parameter gradients.
  nn::Tensor2 Backward(const Cache& cache, const std::vector<Labels>& labels,
                       double scale);

  nn::DenseLayer& dense(phonology::Position pos) { return layers_[static_cast<int>(pos)]; }
  const nn::DenseLayer& dense(phonology::Position pos) const {
    return layers_[static_cast<int>(pos)];
  }
  void AppendParams(nn::ParamList& out);

 private:
  HeadMode mode_ = HeadMode::kSequential;
  int in_ = 0;
  std::array<int, 3> classes_ = {0, 0, 0};
  std::array<nn::DenseLayer, 3> layers_;
};

// Dense ReLU stack with inverted dropout after each activation.
class MlpTrunk {
 public:
  MlpTrunk() = default;
  MlpTrunk(const std::string& name, int in, const std::vector<int>& sizes,
           const std::vector<double>& dropout, double l2);

  void Init(Rng& rng);
  int out() const { return layers_.empty() ? in_ : layers_.back().out(); }

  struct Cache {
    std::vector<nn::Tensor2> inputs;
    std::vector<nn::Tensor2> pre;
    std::vector<nn::Tensor2> masks;
  };

  // rng == nullptr runs in eval mode (no dropout).
  nn::Tensor2 Forward(const nn::Tensor2& x, Rng* rng, Cache* cache) const;
  nn::Tensor2 Backward(const Cache& cache, const nn::Tensor2& dy);
  double Penalty() const;
  void AppendParams(nn::ParamList& out);
  const std::vector<nn::DenseLayer>& layers() const { return layers_; }

 private:
  int in_ = 0;
  std::vector<nn::DenseLayer> layers_;
  std::vector<double> dropout_;
};

// Token embedding followed by stacked LSTM layers; returns the final
// timestep's hidden state of the top layer.
class LstmEncoder {
 public:
  LstmEncoder() = default;
  LstmEncoder(const std::string& name, int vocab, int embedding_dim, int layers,
              int hidden, double input_dropout, double recurrent_dropout);

  void Init(Rng& rng);
  int out() const { return layers_.empty() ? 0 : layers_.back().hidden(); }

  struct Cache {
    std::vector<std::vector<int>> ids;  // per timestep, one id per row
    std::vector<nn::LstmLayer::SequenceCache> layers;
  };

  // All sequences in the batch must have the same length.
  nn::Tensor2 Forward(const std::vector<const std::vector<int>*>& sequences,
                      Rng* rng, Cache* cache) const;
  void Backward(const Cache& cache, const nn::Tensor2& dh_last);
  void AppendParams(nn::ParamList& out);
  const std::vector<nn::LstmLayer>& layers() const { return layers_; }
  const nn::Embedding& embedding() const { return embedding_; }

 private:
  nn::Embedding embedding_;
  std::vector<nn::LstmLayer> layers_;
  double input_dropout_ = 0.0;
  double recurrent_dropout_ = 0.0;
};

struct LossParts {
  double main = 0.0;     // mean cross-entropy per example (summed over positions)
  double aux = 0.0;      // same for the auxiliary head
  double penalty = 0.0;  // L2 terms
  double total = 0.0;    // main + aux_weight * aux + penalty
};

struct ModelOutput {
  PositionTensors main;
  std::optional<PositionTensors> aux;
};

// MLP over BoR (optionally with the cognate indicator), LSTM over GeoD, or
// the multimodal LSTM + indicator + MLP trunk with an auxiliary head.
class PronunciationModel {
 public:
  PronunciationModel(const TrainConfig& config, const FeatureDims& dims);

  void Init(uint64_t seed);
  const TrainConfig& config() const { return config_; }
  const FeatureDims& dims() const { return dims_; }
  bool uses_sequences() const { return lstm_.has_value(); }
  nn::ParamList Params();
  size_t ParameterCount();

  struct Cache {
    nn::Tensor2 input;  // trunk input (MLP) or encoder output (LSTM)
    std::optional<LstmEncoder::Cache> encoder;
    std::optional<MlpTrunk::Cache> trunk;
    OutputHead::Cache head;
    std::optional<OutputHead::Cache> aux;
  };

  // rng == nullptr runs in eval mode. LSTM models require equal token-sequence
  // lengths within a batch. Errors: kMissingFeature.
  ModelOutput Forward(const std::vector<const Example*>& batch, Rng* rng,
                      Cache* cache) const;

  // Forward, loss, and (when backward is set) gradient accumulation.
  LossParts Loss(const std::vector<const Example*>& batch, Rng* rng, bool backward);

  OutputHead& head() { return head_; }
  std::optional<OutputHead>& aux_head() { return aux_; }
  std::optional<MlpTrunk>& trunk() { return trunk_; }
  std::optional<LstmEncoder>& encoder() { return lstm_; }

 private:
  TrainConfig config_;
  FeatureDims dims_;
  bool with_indicator_ = false;
  std::optional<LstmEncoder> lstm_;
  std::optional<MlpTrunk> trunk_;
  OutputHead head_;
  std::optional<OutputHead> aux_;
};

// Argmax with lowest-index tie-breaking.
int ArgMax(const nn::Tensor2& probs, Eigen::Index row);

}  // namespace hanphon::models

#endif  // HANPHON_MODELS_NETWORK_H_
