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

#include "hanphon/models/network.h"

#include <cmath>

#include "hanphon/common/error.h"
#include "hanphon/nn/optim.h"

namespace hanphon::models {

using nn::Tensor2;
using phonology::Position;

namespace {

constexpr int kOn = static_cast<int>(Position::kOnset);
constexpr int kNu = static_cast<int>(Position::kNucleus);
constexpr int kCd = static_cast<int>(Position::kCoda);

Tensor2 Concat(const Tensor2& a, const Tensor2& b) {
  Tensor2 out(a.rows(), a.cols() + b.cols());
  out.leftCols(a.cols()) = a;
  out.rightCols(b.cols()) = b;
  return out;
}

// Cross-entropy gradient w.r.t. logits (softmax - onehot), rows with label -1
// zeroed, times scale.
Tensor2 XentGrad(const Tensor2& probs, const std::vector<Labels>& labels, int pos,
                 double scale) {
  Tensor2 d = probs;
  for (Eigen::Index r = 0; r < d.rows(); ++r) {
    const int y = labels[static_cast<size_t>(r)][static_cast<size_t>(pos)];
    if (y < 0) {
      d.row(r).setZero();
    } else {
      d(r, y) -= 1.0;
    }
  }
  return d * scale;
}

}  // namespace

// ---------------------------------------------------------------------------

OutputHead::OutputHead(std::string name, HeadMode mode, int in,
                       std::array<int, 3> classes)
    : mode_(mode), in_(in), classes_(classes) {
  const bool seq = mode == HeadMode::kSequential;
  layers_[kCd] = nn::DenseLayer(name + ".coda", in, classes[kCd]);
  layers_[kNu] = nn::DenseLayer(name + ".nucleus", seq ? in + classes[kCd] : in,
                                classes[kNu]);
  layers_[kOn] = nn::DenseLayer(name + ".onset",
                                seq ? in + classes[kCd] + classes[kNu] : in,
                                classes[kOn]);
}

void OutputHead::Init(Rng& rng) {
  for (int p : {kCd, kNu, kOn}) layers_[p].Init(rng);
}

PositionTensors OutputHead::Forward(const Tensor2& h, Cache* cache) const {
  if (h.cols() != in_) {
    throw Error(ErrorCode::kShapeMismatch, "output head expects " + std::to_string(in_) +
                                               " features, got " + std::to_string(h.cols()));
  }
  PositionTensors inputs, logits, probs;
  inputs[kCd] = h;
  logits[kCd] = layers_[kCd].Forward(h);
  probs[kCd] = nn::Softmax(logits[kCd]);
  inputs[kNu] = mode_ == HeadMode::kSequential ? Concat(h, probs[kCd]) : h;
  logits[kNu] = layers_[kNu].Forward(inputs[kNu]);
  probs[kNu] = nn::Softmax(logits[kNu]);
  inputs[kOn] = mode_ == HeadMode::kSequential ? Concat(inputs[kNu], probs[kNu]) : h;
  logits[kOn] = layers_[kOn].Forward(inputs[kOn]);
  probs[kOn] = nn::Softmax(logits[kOn]);
  if (cache) {
    cache->inputs = std::move(inputs);
    cache->logits = std::move(logits);
    cache->probs = probs;
  }
  return probs;
}

double OutputHead::Loss(const Cache& cache, const std::vector<Labels>& labels) {
  double loss = 0.0;
  for (int p = 0; p < 3; ++p) {
    const Tensor2& z = cache.logits[static_cast<size_t>(p)];
    for (Eigen::Index r = 0; r < z.rows(); ++r) {
      const int y = labels[static_cast<size_t>(r)][static_cast<size_t>(p)];
      if (y < 0) continue;
      const double m = z.row(r).maxCoeff();
      const double lse = m + std::log((z.row(r).array() - m).exp().sum());
      loss += lse - z(r, y);
    }
  }
  return loss;
}

Tensor2 OutputHead::Backward(const Cache& cache, const std::vector<Labels>& labels,
                             double scale) {
  const auto& probs = cache.probs;
  if (mode_ == HeadMode::kIndependent) {
    Tensor2 dh = layers_[kCd].Backward(cache.inputs[kCd], XentGrad(probs[kCd], labels, kCd, scale));
    dh += layers_[kNu].Backward(cache.inputs[kNu], XentGrad(probs[kNu], labels, kNu, scale));
    dh += layers_[kOn].Backward(cache.inputs[kOn], XentGrad(probs[kOn], labels, kOn, scale));
    return dh;
  }
  const int cc = classes_[kCd];
  const int cn = classes_[kNu];

  Tensor2 d_on_in =
      layers_[kOn].Backward(cache.inputs[kOn], XentGrad(probs[kOn], labels, kOn, scale));
  Tensor2 dh = d_on_in.leftCols(in_);
  Tensor2 dp_c = d_on_in.middleCols(in_, cc);
  const Tensor2 dp_n = d_on_in.rightCols(cn);

  Tensor2 dz_n = XentGrad(probs[kNu], labels, kNu, scale) + nn::SoftmaxBackward(probs[kNu], dp_n);
  Tensor2 d_nu_in = layers_[kNu].Backward(cache.inputs[kNu], dz_n);
  dh += d_nu_in.leftCols(in_);
  dp_c += d_nu_in.rightCols(cc);

  Tensor2 dz_c = XentGrad(probs[kCd], labels, kCd, scale) + nn::SoftmaxBackward(probs[kCd], dp_c);
  dh += layers_[kCd].Backward(cache.inputs[kCd], dz_c);
  return dh;
}

void OutputHead::AppendParams(nn::ParamList& out) {
  for (int p : {kCd, kNu, kOn}) layers_[p].AppendParams(out);
}

// ---------------------------------------------------------------------------

MlpTrunk::MlpTrunk(const std::string& name, int in, const std::vector<int>& sizes,
                   const std::vector<double>& dropout, double l2)
    : in_(in), dropout_(dropout) {
  int prev = in;
  for (size_t k = 0; k < sizes.size(); ++k) {
    layers_.emplace_back(name + ".fc" + std::to_string(k + 1), prev, sizes[k], l2);
    prev = sizes[k];
  }
}

void MlpTrunk::Init(Rng& rng) {
  for (auto& l : layers_) l.Init(rng);
}

Tensor2 MlpTrunk::Forward(const Tensor2& x, Rng* rng, Cache* cache) const {
  if (cache) {
    cache->inputs.clear();
    cache->pre.clear();
    cache->masks.clear();
  }
  Tensor2 a = x;
  for (size_t k = 0; k < layers_.size(); ++k) {
    Tensor2 z = layers_[k].Forward(a);
    Tensor2 next = nn::Relu(z);
    Tensor2 mask;
    if (rng && dropout_[k] > 0.0) {
      mask = nn::DropoutMask(next.rows(), next.cols(), dropout_[k], *rng);
      next = next.cwiseProduct(mask);
    }
    if (cache) {
      cache->inputs.push_back(std::move(a));
      cache->pre.push_back(std::move(z));
      cache->masks.push_back(std::move(mask));
    }
    a = std::move(next);
  }
  return a;
}

Tensor2 MlpTrunk::Backward(const Cache& cache, const Tensor2& dy) {
  Tensor2 d = dy;
  for (size_t k = layers_.size(); k-- > 0;) {
    if (cache.masks[k].size() != 0) d = d.cwiseProduct(cache.masks[k]);
    d = nn::ReluBackward(cache.pre[k], d);
    d = layers_[k].Backward(cache.inputs[k], d);
  }
  return d;
}

double MlpTrunk::Penalty() const {
  double p = 0.0;
  for (const auto& l : layers_) p += l.Penalty();
  return p;
}

void MlpTrunk::AppendParams(nn::ParamList& out) {
  for (auto& l : layers_) l.AppendParams(out);
}

// ---------------------------------------------------------------------------

LstmEncoder::LstmEncoder(const std::string& name, int vocab, int embedding_dim,
                         int layers, int hidden, double input_dropout,
                         double recurrent_dropout)
    : embedding_(name + ".embedding", vocab, embedding_dim),
      input_dropout_(input_dropout),
      recurrent_dropout_(recurrent_dropout) {
  int prev = embedding_dim;
  for (int k = 0; k < layers; ++k) {
    layers_.emplace_back(name + ".lstm" + std::to_string(k + 1), prev, hidden);
    prev = hidden;
  }
}

void LstmEncoder::Init(Rng& rng) {
  embedding_.Init(rng);
  for (auto& l : layers_) l.Init(rng);
}

Tensor2 LstmEncoder::Forward(const std::vector<const std::vector<int>*>& sequences,
                             Rng* rng, Cache* cache) const {
  if (sequences.empty()) throw Error(ErrorCode::kEmptyData, "empty batch");
  const size_t steps = sequences[0]->size();
  const auto n = static_cast<Eigen::Index>(sequences.size());
  if (steps == 0) throw Error(ErrorCode::kMissingFeature, "entry has no GeoD tokens");
  for (const auto* s : sequences) {
    if (s->size() != steps) {
      throw Error(ErrorCode::kShapeMismatch, "sequences in a batch differ in length");
    }
  }
  std::vector<std::vector<int>> ids(steps, std::vector<int>(sequences.size()));
  for (size_t t = 0; t < steps; ++t) {
    for (size_t r = 0; r < sequences.size(); ++r) ids[t][r] = (*sequences[r])[t];
  }
  std::vector<Tensor2> xs(steps);
  for (size_t t = 0; t < steps; ++t) xs[t] = embedding_.Forward(ids[t]);

  if (cache) cache->layers.assign(layers_.size(), {});
  for (size_t k = 0; k < layers_.size(); ++k) {
    Tensor2 in_mask, rec_mask;
    if (rng && input_dropout_ > 0.0) {
      in_mask = nn::DropoutMask(n, layers_[k].in(), input_dropout_, *rng);
    }
    if (rng && recurrent_dropout_ > 0.0) {
      rec_mask = nn::DropoutMask(n, layers_[k].hidden(), recurrent_dropout_, *rng);
    }
    xs = layers_[k].Forward(xs, in_mask.size() ? &in_mask : nullptr,
                            rec_mask.size() ? &rec_mask : nullptr,
                            cache ? &cache->layers[k] : nullptr);
  }
  if (cache) cache->ids = std::move(ids);
  return xs.back();
}

void LstmEncoder::Backward(const Cache& cache, const Tensor2& dh_last) {
  const size_t steps = cache.ids.size();
  std::vector<Tensor2> dhs(steps);
  dhs[steps - 1] = dh_last;
  for (size_t k = layers_.size(); k-- > 0;) {
    dhs = layers_[k].Backward(cache.layers[k], dhs);
  }
  for (size_t t = 0; t < steps; ++t) embedding_.Backward(cache.ids[t], dhs[t]);
}

void LstmEncoder::AppendParams(nn::ParamList& out) {
  embedding_.AppendParams(out);
  for (auto& l : layers_) l.AppendParams(out);
}

// ---------------------------------------------------------------------------

PronunciationModel::PronunciationModel(const TrainConfig& config, const FeatureDims& dims)
    : config_(config), dims_(dims) {
  config_.Validate();
  if (config_.disable_dropout) {
    for (double& r : config_.hidden_dropout) r = 0.0;
    config_.input_dropout = 0.0;
    config_.recurrent_dropout = 0.0;
  }
  const auto& c = config_;
  switch (c.model) {
    case ModelKind::kMlp: {
      with_indicator_ = c.use_cognates;
      const int in = dims.bor_dim + (with_indicator_ ? dims.indicator_dim : 0);
      trunk_.emplace("mlp", in, c.hidden_sizes, c.hidden_dropout, c.l2);
      head_ = OutputHead("head", c.head, trunk_->out(), dims.classes);
      break;
    }
    case ModelKind::kLstm:
      lstm_.emplace("encoder", dims.token_vocab, c.embedding_dim, c.lstm_layers,
                    c.lstm_hidden, c.input_dropout, c.recurrent_dropout);
      head_ = OutputHead("head", c.head, lstm_->out(), dims.classes);
      break;
    case ModelKind::kMultimodal:
      with_indicator_ = true;
      lstm_.emplace("encoder", dims.token_vocab, c.embedding_dim, c.lstm_layers,
                    c.lstm_hidden, c.input_dropout, c.recurrent_dropout);
      trunk_.emplace("mlp", lstm_->out() + dims.indicator_dim, c.hidden_sizes,
                     c.hidden_dropout, c.l2);
      head_ = OutputHead("head", c.head, trunk_->out(), dims.classes);
      aux_.emplace("aux", c.head, lstm_->out(), dims.classes);
      break;
    case ModelKind::kDecisionTree:
      throw Error(ErrorCode::kInvalidConfig, "decision trees are not neural models");
  }
}

void PronunciationModel::Init(uint64_t seed) {
  Rng rng(seed);
  if (lstm_) lstm_->Init(rng);
  if (trunk_) trunk_->Init(rng);
  head_.Init(rng);
  if (aux_) aux_->Init(rng);
}

nn::ParamList PronunciationModel::Params() {
  nn::ParamList out;
  if (lstm_) lstm_->AppendParams(out);
  if (trunk_) trunk_->AppendParams(out);
  head_.AppendParams(out);
  if (aux_) aux_->AppendParams(out);
  return out;
}

size_t PronunciationModel::ParameterCount() { return nn::CountScalars(Params()); }

ModelOutput PronunciationModel::Forward(const std::vector<const Example*>& batch,
                                        Rng* rng, Cache* cache) const {
  if (batch.empty()) throw Error(ErrorCode::kEmptyData, "empty batch");
  Cache local;
  Cache& c = cache ? *cache : local;
  ModelOutput out;
  Tensor2 h;
  if (lstm_) {
    std::vector<const std::vector<int>*> seqs;
    seqs.reserve(batch.size());
    for (const Example* ex : batch) {
      if (!ex->has_geod) throw Error(ErrorCode::kMissingFeature, "entry has no GeoD");
      seqs.push_back(&ex->tokens);
    }
    c.encoder.emplace();
    h = lstm_->Forward(seqs, rng, &*c.encoder);
  } else {
    h = BorMatrix(batch, dims_.bor_dim);
  }
  if (aux_) {
    c.aux.emplace();
    out.aux = aux_->Forward(h, &*c.aux);
  }
  if (with_indicator_) h = Concat(h, IndicatorMatrix(batch, dims_.indicator_dim));
  c.input = h;
  if (trunk_) {
    c.trunk.emplace();
    h = trunk_->Forward(h, rng, &*c.trunk);
  }
  out.main = head_.Forward(h, &c.head);
  return out;
}

LossParts PronunciationModel::Loss(const std::vector<const Example*>& batch, Rng* rng,
                                   bool backward) {
  Cache cache;
  Forward(batch, rng, &cache);
  std::vector<Labels> labels;
  labels.reserve(batch.size());
  for (const Example* ex : batch) labels.push_back(ex->labels);
  const double n = static_cast<double>(batch.size());

  LossParts parts;
  parts.main = OutputHead::Loss(cache.head, labels) / n;
  if (cache.aux) parts.aux = OutputHead::Loss(*cache.aux, labels) / n;
  if (trunk_) parts.penalty = trunk_->Penalty();
  const double w = aux_ ? config_.aux_weight : 0.0;
  parts.total = parts.main + w * parts.aux + parts.penalty;
  if (!std::isfinite(parts.total)) {
    throw Error(ErrorCode::kDivergedLoss, "loss is not finite");
  }
  if (!backward) return parts;

  nn::ZeroGrads(Params());
  Tensor2 dh = head_.Backward(cache.head, labels, 1.0 / n);
  if (trunk_) dh = trunk_->Backward(*cache.trunk, dh);
  if (lstm_) {
    Tensor2 d_enc = dh.leftCols(lstm_->out());
    if (aux_) d_enc += aux_->Backward(*cache.aux, labels, w / n);
    lstm_->Backward(*cache.encoder, d_enc);
  }
  return parts;
}

int ArgMax(const Tensor2& probs, Eigen::Index row) {
  int best = 0;
  for (Eigen::Index j = 1; j < probs.cols(); ++j) {
    if (probs(row, j) > probs(row, best)) best = static_cast<int>(j);
  }
  return best;
}

}  // namespace hanphon::models
