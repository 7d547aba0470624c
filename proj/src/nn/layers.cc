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

#include "hanphon/nn/layers.h"

#include <cmath>

#include "hanphon/common/error.h"

namespace hanphon::nn {

void GlorotUniform(Tensor2& w, Rng& rng) {
  const double a = std::sqrt(6.0 / static_cast<double>(w.rows() + w.cols()));
  for (Eigen::Index i = 0; i < w.size(); ++i) w.data()[i] = rng.Uniform(-a, a);
}

void OrthogonalBlocks(Tensor2& w, Rng& rng) {
  const Eigen::Index n = w.rows();
  for (Eigen::Index block = 0; block + n <= w.cols(); block += n) {
    Eigen::MatrixXd g(n, n);
    for (Eigen::Index i = 0; i < g.size(); ++i) g.data()[i] = rng.Normal();
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
    // Sign fix so the distribution is uniform over the orthogonal group.
    const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < n; ++j) {
      if (r(j, j) < 0) q.col(j) *= -1.0;
    }
    w.block(0, block, n, n) = q;
  }
}

DenseLayer::DenseLayer(std::string name, int in, int out, double l2)
    : w_(name + ".W", in, out), b_(name + ".b", 1, out), l2_(l2) {}

void DenseLayer::Init(Rng& rng) {
  GlorotUniform(w_.value, rng);
  b_.value.setZero();
}

Tensor2 DenseLayer::Forward(const Tensor2& x) const {
  if (x.cols() != w_.value.rows()) {
    throw Error(ErrorCode::kShapeMismatch,
                w_.name + ": input has " + std::to_string(x.cols()) +
                    " columns, layer expects " + std::to_string(w_.value.rows()));
  }
  Tensor2 y = x * w_.value;
  y.rowwise() += b_.value.row(0);
  CheckFinite(y, w_.name.c_str());
  return y;
}

DenseGrads DenseBackward(const DenseLayer& layer, const Tensor2& x,
                         const Tensor2& dy) {
  CheckShape(x, x.rows(), layer.in(), "dense backward input");
  CheckShape(dy, x.rows(), layer.out(), "dense backward dy");
  DenseGrads g;
  g.dw = x.transpose() * dy;
  if (layer.l2() > 0.0) g.dw += 2.0 * layer.l2() * layer.weight().value;
  g.db = dy.colwise().sum();
  g.dx = dy * layer.weight().value.transpose();
  CheckFinite(g.dx, "dense backward");
  return g;
}

Tensor2 DenseLayer::Backward(const Tensor2& x, const Tensor2& dy) {
  CheckShape(x, x.rows(), in(), "dense backward input");
  CheckShape(dy, x.rows(), out(), "dense backward dy");
  w_.grad.noalias() += x.transpose() * dy;
  if (l2_ > 0.0) w_.grad += 2.0 * l2_ * w_.value;
  b_.grad += dy.colwise().sum();
  Tensor2 dx = dy * w_.value.transpose();
  CheckFinite(dx, "dense backward");
  return dx;
}

Tensor2 Relu(const Tensor2& x) { return x.cwiseMax(0.0); }

Tensor2 ReluBackward(const Tensor2& x, const Tensor2& dy) {
  return (x.array() > 0.0).select(dy, 0.0);
}

Tensor2 DropoutMask(Eigen::Index rows, Eigen::Index cols, double rate, Rng& rng) {
  if (rate < 0.0 || rate >= 1.0) {
    throw Error(ErrorCode::kInvalidConfig, "dropout rate must be in [0, 1)");
  }
  Tensor2 mask = Tensor2::Ones(rows, cols);
  if (rate == 0.0) return mask;
  const double keep_scale = 1.0 / (1.0 - rate);
  for (Eigen::Index i = 0; i < mask.size(); ++i) {
    mask.data()[i] = rng.Uniform() < rate ? 0.0 : keep_scale;
  }
  return mask;
}

Embedding::Embedding(std::string name, int vocab, int dim)
    : table_(std::move(name), vocab, dim) {}

void Embedding::Init(Rng& rng) {
  for (Eigen::Index i = 0; i < table_.value.size(); ++i) {
    table_.value.data()[i] = rng.Uniform(-0.05, 0.05);
  }
}

Tensor2 Embedding::Forward(const std::vector<int>& ids) const {
  Tensor2 out(static_cast<Eigen::Index>(ids.size()), table_.value.cols());
  for (size_t r = 0; r < ids.size(); ++r) {
    if (ids[r] < 0 || ids[r] >= table_.value.rows()) {
      throw Error(ErrorCode::kIndexOutOfRange,
                  table_.name + ": token id " + std::to_string(ids[r]));
    }
    out.row(static_cast<Eigen::Index>(r)) = table_.value.row(ids[r]);
  }
  return out;
}

void Embedding::Backward(const std::vector<int>& ids, const Tensor2& dy) {
  CheckShape(dy, static_cast<Eigen::Index>(ids.size()), table_.value.cols(),
             "embedding backward");
  for (size_t r = 0; r < ids.size(); ++r) {
    table_.grad.row(ids[r]) += dy.row(static_cast<Eigen::Index>(r));
  }
}

LstmLayer::LstmLayer(std::string name, int in, int hidden)
    : w_(name + ".W", in, 4 * hidden),
      u_(name + ".U", hidden, 4 * hidden),
      b_(name + ".b", 1, 4 * hidden) {}

void LstmLayer::Init(Rng& rng) {
  GlorotUniform(w_.value, rng);
  OrthogonalBlocks(u_.value, rng);
  b_.value.setZero();
  b_.value.block(0, hidden(), 1, hidden()).setOnes();
}

namespace {

Tensor2 Sigmoid(const Tensor2& z) {
  return (1.0 + (-z.array()).exp()).inverse().matrix();
}

}  // namespace

LstmLayer::State LstmLayer::Step(const Tensor2& x, const Tensor2& h_prev,
                                 const Tensor2& c_prev, StepCache* cache) const {
  const Eigen::Index n = x.rows();
  const Eigen::Index hs = hidden();
  CheckShape(x, n, in(), "lstm input");
  CheckShape(h_prev, n, hs, "lstm h_prev");
  CheckShape(c_prev, n, hs, "lstm c_prev");

  Tensor2 z = x * w_.value;
  z.noalias() += h_prev * u_.value;
  z.rowwise() += b_.value.row(0);

  Tensor2 i = Sigmoid(z.middleCols(0, hs));
  Tensor2 f = Sigmoid(z.middleCols(hs, hs));
  Tensor2 g = z.middleCols(2 * hs, hs).array().tanh().matrix();
  Tensor2 o = Sigmoid(z.middleCols(3 * hs, hs));

  State s;
  s.c = (f.array() * c_prev.array() + i.array() * g.array()).matrix();
  Tensor2 tanh_c = s.c.array().tanh().matrix();
  s.h = (o.array() * tanh_c.array()).matrix();
  CheckFinite(s.h, "lstm step");
  CheckFinite(s.c, "lstm step");
  if (cache) {
    cache->x = x;
    cache->h_prev = h_prev;
    cache->c_prev = c_prev;
    cache->i = std::move(i);
    cache->f = std::move(f);
    cache->g = std::move(g);
    cache->o = std::move(o);
    cache->c = s.c;
    cache->tanh_c = std::move(tanh_c);
  }
  return s;
}

std::vector<Tensor2> LstmLayer::Forward(const std::vector<Tensor2>& xs,
                                        const Tensor2* input_mask,
                                        const Tensor2* recurrent_mask,
                                        SequenceCache* cache) const {
  std::vector<Tensor2> hs;
  if (xs.empty()) return hs;
  const Eigen::Index n = xs[0].rows();
  Tensor2 h = Tensor2::Zero(n, hidden());
  Tensor2 c = Tensor2::Zero(n, hidden());
  if (cache) {
    cache->steps.assign(xs.size(), {});
    cache->input_mask = input_mask ? *input_mask : Tensor2();
    cache->recurrent_mask = recurrent_mask ? *recurrent_mask : Tensor2();
  }
  hs.reserve(xs.size());
  for (size_t t = 0; t < xs.size(); ++t) {
    Tensor2 x = input_mask ? Tensor2(xs[t].cwiseProduct(*input_mask)) : xs[t];
    Tensor2 h_in = recurrent_mask ? Tensor2(h.cwiseProduct(*recurrent_mask)) : h;
    State s = Step(x, h_in, c, cache ? &cache->steps[t] : nullptr);
    h = std::move(s.h);
    c = std::move(s.c);
    hs.push_back(h);
  }
  return hs;
}

std::vector<Tensor2> LstmLayer::Backward(const SequenceCache& cache,
                                         const std::vector<Tensor2>& dhs) {
  const size_t steps = cache.steps.size();
  if (dhs.size() != steps) {
    throw Error(ErrorCode::kShapeMismatch, "lstm backward: gradient count differs from steps");
  }
  std::vector<Tensor2> dxs(steps);
  if (steps == 0) return dxs;
  const Eigen::Index n = cache.steps[0].x.rows();
  const Eigen::Index hs = hidden();
  Tensor2 dh_next = Tensor2::Zero(n, hs);
  Tensor2 dc_next = Tensor2::Zero(n, hs);
  Tensor2 dz(n, 4 * hs);

  for (size_t k = steps; k-- > 0;) {
    const StepCache& s = cache.steps[k];
    Tensor2 dh = dh_next;
    if (dhs[k].size() != 0) dh += dhs[k];

    const auto o = s.o.array();
    const auto tc = s.tanh_c.array();
    Tensor2 dc = (dh.array() * o * (1.0 - tc.square())).matrix() + dc_next;

    dz.middleCols(0, hs) = (dc.array() * s.g.array() * s.i.array() * (1.0 - s.i.array())).matrix();
    dz.middleCols(hs, hs) =
        (dc.array() * s.c_prev.array() * s.f.array() * (1.0 - s.f.array())).matrix();
    dz.middleCols(2 * hs, hs) = (dc.array() * s.i.array() * (1.0 - s.g.array().square())).matrix();
    dz.middleCols(3 * hs, hs) = (dh.array() * tc * o * (1.0 - o)).matrix();

    w_.grad.noalias() += s.x.transpose() * dz;
    u_.grad.noalias() += s.h_prev.transpose() * dz;
    b_.grad += dz.colwise().sum();

    Tensor2 dx = dz * w_.value.transpose();
    if (cache.input_mask.size() != 0) dx = dx.cwiseProduct(cache.input_mask);
    dxs[k] = std::move(dx);

    dh_next = dz * u_.value.transpose();
    if (cache.recurrent_mask.size() != 0) dh_next = dh_next.cwiseProduct(cache.recurrent_mask);
    dc_next = (dc.array() * s.f.array()).matrix();
  }
  return dxs;
}

}  // namespace hanphon::nn
