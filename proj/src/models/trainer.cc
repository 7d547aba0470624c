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

#include "hanphon/models/trainer.h"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <thread>

#include "hanphon/common/error.h"
#include "hanphon/nn/checkpoint.h"
#include "hanphon/nn/optim.h"

namespace hanphon::models {

using nn::Tensor2;

nlohmann::ordered_json EpochRecord::ToJson() const {
  nlohmann::ordered_json j;
  j["epoch"] = epoch;
  j["train_loss"] = train_loss;
  j["train_main_loss"] = train_main_loss;
  j["train_aux_loss"] = train_aux_loss;
  j["dev_ser"] = dev_ser;
  j["dev_ter"] = dev_ter;
  j["improved"] = improved;
  return j;
}

namespace {

std::vector<std::vector<size_t>> TrainingBatches(const std::vector<Example>& data,
                                                 std::vector<size_t>& order,
                                                 bool by_length, size_t batch_size,
                                                 Rng& rng) {
  rng.Shuffle(order);
  std::vector<std::vector<size_t>> batches;
  if (!by_length) {
    for (size_t i = 0; i < order.size(); i += batch_size) {
      batches.emplace_back(order.begin() + static_cast<std::ptrdiff_t>(i),
                           order.begin() + static_cast<std::ptrdiff_t>(
                                               std::min(order.size(), i + batch_size)));
    }
    return batches;
  }
  std::map<size_t, std::vector<size_t>> groups;
  for (size_t i : order) groups[data[i].tokens.size()].push_back(i);
  for (auto& [len, members] : groups) {
    for (size_t i = 0; i < members.size(); i += batch_size) {
      batches.emplace_back(members.begin() + static_cast<std::ptrdiff_t>(i),
                           members.begin() + static_cast<std::ptrdiff_t>(
                                                 std::min(members.size(), i + batch_size)));
    }
  }
  rng.Shuffle(batches);
  return batches;
}

std::vector<const Example*> Gather(const std::vector<Example>& data,
                                   const std::vector<size_t>& idx) {
  std::vector<const Example*> out;
  out.reserve(idx.size());
  for (size_t i : idx) out.push_back(&data[i]);
  return out;
}

}  // namespace

TrainResult Train(PronunciationModel& model, const FeatureSpace& space,
                  const std::vector<Example>& train, const std::vector<Example>& dev,
                  const TrainHooks& hooks) {
  if (train.empty()) throw Error(ErrorCode::kEmptyData, "no training examples");
  const TrainConfig& cfg = model.config();
  const nn::ParamList params = model.Params();
  nn::AdamState adam(params, cfg.adam);
  Rng rng(cfg.seed + 1);

  std::vector<size_t> order(train.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;

  TrainResult result;
  std::vector<Tensor2> best;
  bool have_best = false;
  int since_best = 0;
  for (int epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
    auto batches = TrainingBatches(train, order, model.uses_sequences(),
                                   static_cast<size_t>(cfg.batch_size), rng);
    EpochRecord rec;
    rec.epoch = epoch;
    for (const auto& b : batches) {
      const LossParts parts = model.Loss(Gather(train, b), &rng, true);
      adam.Step(params);
      rec.train_loss += parts.total;
      rec.train_main_loss += parts.main;
      rec.train_aux_loss += parts.aux;
    }
    const double nb = static_cast<double>(batches.size());
    rec.train_loss /= nb;
    rec.train_main_loss /= nb;
    rec.train_aux_loss /= nb;

    if (!dev.empty()) {
      const eval::EvalReport r = Evaluate(Predict(model, space, dev, 1), dev);
      rec.dev_ser = r.ser;
      rec.dev_ter = r.ter;
      rec.improved = !have_best || r.ter < result.best_dev_ter;
    } else {
      rec.improved = true;
    }
    if (rec.improved) {
      have_best = true;
      since_best = 0;
      result.best_epoch = epoch;
      result.best_dev_ter = rec.dev_ter;
      result.best_dev_ser = rec.dev_ser;
      best.clear();
      for (const auto* p : params) best.push_back(p->value);
    } else {
      ++since_best;
    }
    result.log.push_back(rec);
    if (hooks.on_epoch) hooks.on_epoch(rec);
    if (since_best >= cfg.patience) break;
    if (hooks.stop && hooks.stop(rec)) break;
  }
  for (size_t k = 0; k < params.size(); ++k) params[k]->value = best[k];
  return result;
}

std::vector<std::vector<size_t>> PredictionBatches(const std::vector<Example>& examples,
                                                   bool by_length, size_t batch_size) {
  std::vector<std::vector<size_t>> batches;
  if (!by_length) {
    for (size_t i = 0; i < examples.size(); i += batch_size) {
      std::vector<size_t> b;
      for (size_t j = i; j < std::min(examples.size(), i + batch_size); ++j) b.push_back(j);
      batches.push_back(std::move(b));
    }
    return batches;
  }
  std::map<size_t, std::vector<size_t>> groups;
  for (size_t i = 0; i < examples.size(); ++i) groups[examples[i].tokens.size()].push_back(i);
  for (auto& [len, members] : groups) {
    for (size_t i = 0; i < members.size(); i += batch_size) {
      batches.emplace_back(members.begin() + static_cast<std::ptrdiff_t>(i),
                           members.begin() + static_cast<std::ptrdiff_t>(
                                                 std::min(members.size(), i + batch_size)));
    }
  }
  return batches;
}

std::vector<Labels> PredictClasses(const PronunciationModel& model,
                                   const std::vector<Example>& examples, int threads) {
  std::vector<Labels> out(examples.size());
  const auto batches = PredictionBatches(examples, model.uses_sequences(), 256);
  std::atomic<size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (size_t k = next++; k < batches.size(); k = next++) {
      try {
        const ModelOutput o = model.Forward(Gather(examples, batches[k]), nullptr, nullptr);
        for (size_t r = 0; r < batches[k].size(); ++r) {
          Labels& l = out[batches[k][r]];
          for (int p = 0; p < 3; ++p) {
            l[static_cast<size_t>(p)] = ArgMax(o.main[static_cast<size_t>(p)],
                                               static_cast<Eigen::Index>(r));
          }
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next = batches.size();
      }
    }
  };
  size_t n = threads > 0 ? static_cast<size_t>(threads)
                         : std::max(1u, std::thread::hardware_concurrency());
  n = std::min(n, std::max<size_t>(1, batches.size()));
  if (n <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (size_t t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

std::vector<phonology::SyllableParts> Predict(const PronunciationModel& model,
                                              const FeatureSpace& space,
                                              const std::vector<Example>& examples,
                                              int threads) {
  std::vector<phonology::SyllableParts> out;
  out.reserve(examples.size());
  for (const Labels& l : PredictClasses(model, examples, threads)) {
    out.push_back(space.Decode(l));
  }
  return out;
}

eval::EvalReport Evaluate(const std::vector<phonology::SyllableParts>& predictions,
                          const std::vector<Example>& examples) {
  std::vector<phonology::SyllableParts> refs;
  refs.reserve(examples.size());
  for (const auto& ex : examples) refs.push_back(ex.reference);
  return eval::Score(predictions, refs);
}

nlohmann::ordered_json CheckpointHeader(const PronunciationModel& model,
                                        const FeatureSpace& space, int epoch) {
  const FeatureDims d = model.dims();
  nlohmann::ordered_json h;
  h["format"] = "hanphon.model";
  h["architecture"] = model.config().DisplayName();
  h["config"] = model.config().ToJson();
  h["dims"] = {{"token_vocab", d.token_vocab},
               {"bor_dim", d.bor_dim},
               {"indicator_dim", d.indicator_dim},
               {"classes", d.classes}};
  h["vocab_sha256"] = space.vocab().Fingerprint();
  h["feature_sha256"] = space.Fingerprint();
  h["seed"] = model.config().seed;
  h["epoch"] = epoch;
  return h;
}

void SaveModel(const std::string& path, PronunciationModel& model,
               const FeatureSpace& space, int epoch) {
  nn::SaveCheckpoint(path, CheckpointHeader(model, space, epoch), model.Params());
}

PronunciationModel LoadModel(const std::string& path, const FeatureSpace& space) {
  const nn::Checkpoint ckpt = nn::LoadCheckpoint(path);
  const auto& h = ckpt.header;
  if (h.value("format", "") != "hanphon.model") {
    throw Error(ErrorCode::kFormat, path + ": not a model checkpoint");
  }
  if (h.value("feature_sha256", "") != space.Fingerprint()) {
    throw Error(ErrorCode::kInvalidConfig,
                path + ": checkpoint was trained on a different vocabulary or inventory");
  }
  const TrainConfig cfg = TrainConfig::FromJson(nlohmann::json::parse(h.at("config").dump()));
  PronunciationModel model(cfg, space.dims());
  nn::RestoreParams(ckpt, model.Params());
  return model;
}

}  // namespace hanphon::models
