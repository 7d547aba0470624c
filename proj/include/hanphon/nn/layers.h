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

#ifndef HANPHON_NN_LAYERS_H_
#define HANPHON_NN_LAYERS_H_

#include <string>
#include <vector>

#include "hanphon/common/random.h"
#include "hanphon/nn/tensor.h"

namespace hanphon::nn {

// Glorot-uniform in [-a, a], a = sqrt(6 / (fan_in + fan_out)).
void GlorotUniform(Tensor2& w, Rng& rng);
// Square blocks of `w` (rows x k*rows) filled with independent random
// orthogonal matrices.
void OrthogonalBlocks(Tensor2& w, Rng& rng);

// y = x W + b. W is in x out, b is 1 x out.
class DenseLayer {
 public:
  DenseLayer() = default;
  DenseLayer(std::string name, int in, int out, double l2 = 0.0);

  void Init(Rng& rng);
  int in() const { return static_cast<int>(w_.value.rows()); }
  int out() const { return static_cast<int>(w_.value.cols()); }
  double l2() const { return l2_; }

  Tensor2 Forward(const Tensor2& x) const;
  // Accumulates dW (including 2*l2*W) and db; returns dx.
  Tensor2 Backward(const Tensor2& x, const Tensor2& dy);
  // l2 * ||W||^2
  double Penalty() const { return l2_ * w_.value.squaredNorm(); }

  Parameter& weight() { return w_; }
  Parameter& bias() { return b_; }
  const Parameter& weight() const { return w_; }
  const Parameter& bias() const { return b_; }
  void AppendParams(ParamList& out) { out.push_back(&w_); out.push_back(&b_); }

 private:
  Parameter w_;
  Parameter b_;
  double l2_ = 0.0;
};

struct DenseGrads {
  Tensor2 dx;
  Tensor2 dw;
  Tensor2 db;
};

// Pure form of DenseLayer::Backward that leaves the layer untouched.
DenseGrads DenseBackward(const DenseLayer& layer, const Tensor2& x,
                         const Tensor2& dy);

Tensor2 Relu(const Tensor2& x);
// dy masked by x > 0.
Tensor2 ReluBackward(const Tensor2& x, const Tensor2& dy);

enum class DropoutMode {
  kStandard,   // fresh mask per example
  kInput,      // one mask per sequence over the input features, all timesteps
  kRecurrent,  // one mask per sequence over the hidden state, all timesteps
};

struct DropoutSpec {
  double rate = 0.0;
  DropoutMode mode = DropoutMode::kStandard;
};

// Inverted-dropout mask: entries are 0 or 1/(1-rate). rate == 0 gives ones.
Tensor2 DropoutMask(Eigen::Index rows, Eigen::Index cols, double rate, Rng& rng);

class Embedding {
 public:
  Embedding() = default;
  Embedding(std::string name, int vocab, int dim);

  void Init(Rng& rng);
  int vocab() const { return static_cast<int>(table_.value.rows()); }
  int dim() const { return static_cast<int>(table_.value.cols()); }

  // One row per id.
  Tensor2 Forward(const std::vector<int>& ids) const;
  void Backward(const std::vector<int>& ids, const Tensor2& dy);

  Parameter& table() { return table_; }
  void AppendParams(ParamList& out) { out.push_back(&table_); }

 private:
  Parameter table_;
};

// Gates are packed along columns in the order input, forget, candidate,
// output: W is in x 4H, U is H x 4H, b is 1 x 4H.
class LstmLayer {
 public:
  LstmLayer() = default;
  LstmLayer(std::string name, int in, int hidden);

  // Glorot-uniform W, orthogonal U, zero bias except forget gate = 1.
  void Init(Rng& rng);
  int in() const { return static_cast<int>(w_.value.rows()); }
  int hidden() const { return static_cast<int>(u_.value.rows()); }

  Parameter& w() { return w_; }
  Parameter& u() { return u_; }
  Parameter& b() { return b_; }
  const Parameter& w() const { return w_; }
  const Parameter& u() const { return u_; }
  const Parameter& b() const { return b_; }
  void AppendParams(ParamList& out) {
    out.push_back(&w_);
    out.push_back(&u_);
    out.push_back(&b_);
  }

  struct StepCache {
    Tensor2 x;       // masked input
    Tensor2 h_prev;  // masked previous hidden state
    Tensor2 c_prev;
    Tensor2 i, f, g, o;
    Tensor2 c;
    Tensor2 tanh_c;
  };

  struct SequenceCache {
    std::vector<StepCache> steps;
    Tensor2 input_mask;      // empty when no input dropout
    Tensor2 recurrent_mask;  // empty when no recurrent dropout
  };

  struct State {
    Tensor2 h;
    Tensor2 c;
  };

  // One timestep for a batch (rows).
  State Step(const Tensor2& x, const Tensor2& h_prev, const Tensor2& c_prev,
             StepCache* cache = nullptr) const;

  // Runs a batch of equal-length sequences from a zero state. `xs[t]` is
  // batch x in. Masks (optional) are batch x in and batch x hidden and are
  // reused at every timestep. Returns h_t for every t.
  std::vector<Tensor2> Forward(const std::vector<Tensor2>& xs,
                               const Tensor2* input_mask,
                               const Tensor2* recurrent_mask,
                               SequenceCache* cache) const;

  // Backpropagation through time. `dhs[t]` is the loss gradient w.r.t. the
  // output h_t (may be empty for timesteps without a direct loss). Returns
  // gradients w.r.t. xs and accumulates parameter gradients.
  std::vector<Tensor2> Backward(const SequenceCache& cache,
                                const std::vector<Tensor2>& dhs);

 private:
  Parameter w_;
  Parameter u_;
  Parameter b_;
};

}  // namespace hanphon::nn

#endif  // HANPHON_NN_LAYERS_H_
