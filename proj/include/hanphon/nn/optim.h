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

#ifndef HANPHON_NN_OPTIM_H_
#define HANPHON_NN_OPTIM_H_

#include <cstdint>
#include <functional>
#include <vector>

#include "hanphon/nn/tensor.h"

namespace hanphon::nn {

// Row-wise numerically stable softmax.
Tensor2 Softmax(const Tensor2& logits);

struct XentResult {
  double loss = 0.0;  // summed over rows
  Tensor2 dlogits;    // softmax - onehot, per row
};

// Cross-entropy of each row against its target class.
// Errors: kIndexOutOfRange, kShapeMismatch.
XentResult SoftmaxXent(const Tensor2& logits, const std::vector<int>& targets);

// Backward through a row-wise softmax: p * (dp - <dp, p>).
Tensor2 SoftmaxBackward(const Tensor2& probs, const Tensor2& dprobs);

struct AdamConfig {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

// First/second moment estimates per parameter, keyed by position in the
// parameter list it was created for.
class AdamState {
 public:
  AdamState(const ParamList& params, AdamConfig config = {});

  // One bias-corrected update from the gradients currently stored in
  // `params`. Errors: kShapeMismatch.
  void Step(const ParamList& params);

  int64_t step_count() const { return t_; }
  const AdamConfig& config() const { return config_; }

 private:
  AdamConfig config_;
  int64_t t_ = 0;
  std::vector<Tensor2> m_;
  std::vector<Tensor2> v_;
};

struct GradCheckOptions {
  double step = 1e-5;
  // Coordinates to test; 0 means every coordinate of every parameter.
  size_t samples = 0;
  uint64_t seed = 7;
  // Denominator floor so vanishing gradients do not divide by ~0.
  double floor = 1e-7;
};

struct GradCheckReport {
  double max_rel_error = 0.0;
  size_t coordinates = 0;
  std::string worst_param;
  Eigen::Index worst_index = -1;
  double worst_analytic = 0.0;
  double worst_numeric = 0.0;
};

// `loss_fn(true)` must zero gradients, populate them, and return the loss;
// `loss_fn(false)` only returns the loss. The loss must be deterministic.
// Relative error is |a - n| / max(|a| + |n|, floor) with central differences.
GradCheckReport GradCheck(const std::function<double(bool)>& loss_fn,
                          const ParamList& params,
                          const GradCheckOptions& options = {});

}  // namespace hanphon::nn

#endif  // HANPHON_NN_OPTIM_H_
