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

#include "hanphon/nn/optim.h"

#include <cmath>

#include "hanphon/common/error.h"
#include "hanphon/common/random.h"

namespace hanphon::nn {

Tensor2 Softmax(const Tensor2& logits) {
  Tensor2 p(logits.rows(), logits.cols());
  for (Eigen::Index r = 0; r < logits.rows(); ++r) {
    const double mx = logits.row(r).maxCoeff();
    p.row(r) = (logits.row(r).array() - mx).exp().matrix();
    p.row(r) /= p.row(r).sum();
  }
  return p;
}

XentResult SoftmaxXent(const Tensor2& logits, const std::vector<int>& targets) {
  if (static_cast<Eigen::Index>(targets.size()) != logits.rows()) {
    throw Error(ErrorCode::kShapeMismatch, "softmax_xent: one target per row required");
  }
  XentResult out;
  out.dlogits.resize(logits.rows(), logits.cols());
  for (Eigen::Index r = 0; r < logits.rows(); ++r) {
    const int y = targets[static_cast<size_t>(r)];
    if (y < 0 || y >= logits.cols()) {
      throw Error(ErrorCode::kIndexOutOfRange,
                  "target " + std::to_string(y) + " with " +
                      std::to_string(logits.cols()) + " classes");
    }
    const double mx = logits.row(r).maxCoeff();
    const auto shifted = (logits.row(r).array() - mx);
    const double lse = std::log(shifted.exp().sum());
    out.loss += lse - shifted(y);
    out.dlogits.row(r) = (shifted - lse).exp().matrix();
    out.dlogits(r, y) -= 1.0;
  }
  return out;
}

Tensor2 SoftmaxBackward(const Tensor2& probs, const Tensor2& dprobs) {
  const Eigen::VectorXd dots = probs.cwiseProduct(dprobs).rowwise().sum();
  Tensor2 out = dprobs;
  out.colwise() -= dots;
  return out.cwiseProduct(probs);
}

AdamState::AdamState(const ParamList& params, AdamConfig config) : config_(config) {
  m_.reserve(params.size());
  v_.reserve(params.size());
  for (const Parameter* p : params) {
    m_.push_back(Tensor2::Zero(p->value.rows(), p->value.cols()));
    v_.push_back(Tensor2::Zero(p->value.rows(), p->value.cols()));
  }
}

void AdamState::Step(const ParamList& params) {
  if (params.size() != m_.size()) {
    throw Error(ErrorCode::kShapeMismatch, "adam: parameter list changed");
  }
  ++t_;
  const double b1 = config_.beta1;
  const double b2 = config_.beta2;
  const double c1 = 1.0 - std::pow(b1, static_cast<double>(t_));
  const double c2 = 1.0 - std::pow(b2, static_cast<double>(t_));
  for (size_t k = 0; k < params.size(); ++k) {
    Parameter& p = *params[k];
    CheckShape(p.grad, m_[k].rows(), m_[k].cols(), p.name.c_str());
    CheckFinite(p.grad, p.name.c_str());
    m_[k] = b1 * m_[k] + (1.0 - b1) * p.grad;
    v_[k] = b2 * v_[k] + (1.0 - b2) * p.grad.cwiseProduct(p.grad);
    p.value.array() -= config_.lr * (m_[k].array() / c1) /
                       ((v_[k].array() / c2).sqrt() + config_.epsilon);
  }
}

GradCheckReport GradCheck(const std::function<double(bool)>& loss_fn,
                          const ParamList& params,
                          const GradCheckOptions& options) {
  loss_fn(true);
  std::vector<Tensor2> analytic;
  analytic.reserve(params.size());
  for (const Parameter* p : params) analytic.push_back(p->grad);

  std::vector<std::pair<size_t, Eigen::Index>> coords;
  size_t total = 0;
  for (const Parameter* p : params) total += static_cast<size_t>(p->value.size());
  if (options.samples == 0 || options.samples >= total) {
    for (size_t k = 0; k < params.size(); ++k) {
      for (Eigen::Index i = 0; i < params[k]->value.size(); ++i) coords.emplace_back(k, i);
    }
  } else {
    Rng rng(options.seed);
    for (size_t s = 0; s < options.samples; ++s) {
      uint64_t flat = rng.Index(total);
      size_t k = 0;
      while (flat >= static_cast<uint64_t>(params[k]->value.size())) {
        flat -= static_cast<uint64_t>(params[k]->value.size());
        ++k;
      }
      coords.emplace_back(k, static_cast<Eigen::Index>(flat));
    }
  }

  GradCheckReport report;
  for (const auto& [k, i] : coords) {
    double& x = params[k]->value.data()[i];
    const double saved = x;
    x = saved + options.step;
    const double plus = loss_fn(false);
    x = saved - options.step;
    const double minus = loss_fn(false);
    x = saved;
    const double numeric = (plus - minus) / (2.0 * options.step);
    const double a = analytic[k].data()[i];
    const double rel = std::abs(a - numeric) /
                       std::max(std::abs(a) + std::abs(numeric), options.floor);
    ++report.coordinates;
    if (rel > report.max_rel_error || report.worst_index < 0) {
      report.max_rel_error = std::max(report.max_rel_error, rel);
      report.worst_param = params[k]->name;
      report.worst_index = i;
      report.worst_analytic = a;
      report.worst_numeric = numeric;
    }
  }
  return report;
}

}  // namespace hanphon::nn
