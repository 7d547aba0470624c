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


#include <gtest/gtest.h>

#include <cmath>
#include <functional>

#include "hanphon/common/error.h"
#include "hanphon/common/random.h"
#include "hanphon/nn/checkpoint.h"
#include "hanphon/nn/layers.h"
#include "hanphon/nn/optim.h"
#include "hanphon/nn/tensor.h"

namespace hanphon::nn {
namespace {

Tensor2 M(std::initializer_list<std::initializer_list<double>> rows) {
  Tensor2 t(static_cast<Eigen::Index>(rows.size()),
            static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index r = 0;
  for (const auto& row : rows) {
    Eigen::Index c = 0;
    for (double v : row) t(r, c++) = v;
    ++r;
  }
  return t;
}

Tensor2 RandomTensor(Eigen::Index rows, Eigen::Index cols, Rng& rng, double scale = 1.0) {
  Tensor2 t(rows, cols);
  for (Eigen::Index i = 0; i < t.size(); ++i) t.data()[i] = rng.Uniform(-scale, scale);
  return t;
}

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kFormat;
}

double Sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

TEST(TensorTest, FiniteAndShapeChecks) {
  Tensor2 t = Tensor2::Zero(2, 3);
  CheckFinite(t, "t");
  CheckShape(t, 2, 3, "t");
  EXPECT_EQ(CodeOf([&] { CheckShape(t, 3, 2, "t"); }), ErrorCode::kShapeMismatch);
  t(1, 2) = std::nan("");
  EXPECT_EQ(CodeOf([&] { CheckFinite(t, "t"); }), ErrorCode::kNonFiniteValue);
  t(1, 2) = INFINITY;
  EXPECT_EQ(CodeOf([&] { CheckFinite(t, "t"); }), ErrorCode::kNonFiniteValue);
}

TEST(DenseTest, ForwardExample) {
  DenseLayer layer("d", 2, 2);
  layer.weight().value = M({{1, 2}, {3, 4}});
  layer.bias().value = M({{0.5, -0.5}});
  const Tensor2 y = layer.Forward(M({{1, 2}, {0, 0}}));
  EXPECT_EQ(y, M({{7.5, 9.5}, {0.5, -0.5}}));
}

TEST(DenseTest, BackwardExampleWithPenalty) {
  DenseLayer layer("d", 2, 1, 0.1);
  layer.weight().value = M({{1}, {-2}});
  layer.bias().value = M({{0}});
  const Tensor2 x = M({{3, 4}, {1, 1}});
  const Tensor2 dx = layer.Backward(x, M({{1}, {2}}));
  EXPECT_EQ(dx, M({{1, -2}, {2, -4}}));
  // dW = x^T dy + 2 * l2 * W
  EXPECT_NEAR(layer.weight().grad(0, 0), 3 + 2 + 0.2, 1e-15);
  EXPECT_NEAR(layer.weight().grad(1, 0), 4 + 2 - 0.4, 1e-15);
  EXPECT_EQ(layer.bias().grad(0, 0), 3);
  EXPECT_NEAR(layer.Penalty(), 0.1 * 5, 1e-15);
  const DenseGrads pure = DenseBackward(layer, x, M({{1}, {2}}));
  EXPECT_EQ(pure.dx, dx);
  EXPECT_NEAR(pure.dw(0, 0), 5.2, 1e-15);
}

TEST(DenseTest, FiniteDifferences) {
  Rng rng(1);
  DenseLayer layer("d", 4, 3, 0.05);
  layer.Init(rng);
  layer.bias().value = RandomTensor(1, 3, rng);
  const Tensor2 x = RandomTensor(5, 4, rng);
  const Tensor2 w = RandomTensor(5, 3, rng);
  ParamList params;
  layer.AppendParams(params);
  auto loss = [&](bool backward) {
    const Tensor2 y = layer.Forward(x);
    const double l = y.cwiseProduct(Relu(y)).cwiseProduct(w).sum() + layer.Penalty();
    if (backward) {
      ZeroGrads(params);
      // d/dy of y * relu(y) * w is 2 y w for y > 0, else 0.
      const Tensor2 dy = (2.0 * y.cwiseProduct(w)).cwiseProduct(
          (y.array() > 0).cast<double>().matrix());
      layer.Backward(x, dy);
    }
    return l;
  };
  const GradCheckReport r = GradCheck(loss, params);
  EXPECT_EQ(r.coordinates, 15u);
  EXPECT_LT(r.max_rel_error, 1e-7);
}

TEST(ReluTest, ForwardBackward) {
  const Tensor2 x = M({{-1, 0, 2}});
  EXPECT_EQ(Relu(x), M({{0, 0, 2}}));
  EXPECT_EQ(ReluBackward(x, M({{5, 5, 5}})), M({{0, 0, 5}}));
}

TEST(InitTest, GlorotBoundAndOrthogonalBlocks) {
  Rng rng(2);
  Tensor2 w(30, 50);
  GlorotUniform(w, rng);
  const double a = std::sqrt(6.0 / 80.0);
  EXPECT_LE(w.cwiseAbs().maxCoeff(), a);
  EXPECT_GT(w.cwiseAbs().maxCoeff(), 0.9 * a);

  Tensor2 u(6, 24);
  OrthogonalBlocks(u, rng);
  for (int k = 0; k < 4; ++k) {
    const Tensor2 q = u.block(0, 6 * k, 6, 6);
    EXPECT_TRUE((q.transpose() * q).isApprox(Tensor2::Identity(6, 6), 1e-12)) << k;
  }
}

TEST(DropoutTest, MaskValuesAndRate) {
  Rng rng(3);
  EXPECT_EQ(DropoutMask(3, 4, 0.0, rng), Tensor2::Ones(3, 4));
  const double rate = 0.3;
  const Tensor2 m = DropoutMask(400, 250, rate, rng);
  size_t zeros = 0;
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const double v = m.data()[i];
    ASSERT_TRUE(v == 0.0 || std::abs(v - 1.0 / (1.0 - rate)) < 1e-15) << v;
    zeros += v == 0.0;
  }
  EXPECT_NEAR(static_cast<double>(zeros) / m.size(), rate, 0.01);
  EXPECT_NEAR(m.mean(), 1.0, 0.015);
}

TEST(EmbeddingTest, LookupAndScatter) {
  Embedding e("e", 4, 2);
  e.table().value = M({{0, 1}, {2, 3}, {4, 5}, {6, 7}});
  EXPECT_EQ(e.Forward({2, 0, 2}), M({{4, 5}, {0, 1}, {4, 5}}));
  e.Backward({2, 0, 2}, M({{1, 1}, {2, 2}, {3, 3}}));
  EXPECT_EQ(e.table().grad, M({{2, 2}, {0, 0}, {4, 4}, {0, 0}}));
}

// Scalar reference cell with the same gate layout.
struct RefLstm {
  const LstmLayer& l;
  void Step(const std::vector<double>& x, std::vector<double>& h, std::vector<double>& c) const {
    const int H = l.hidden();
    std::vector<double> z(4 * H);
    for (int j = 0; j < 4 * H; ++j) {
      double s = l.b().value(0, j);
      for (size_t k = 0; k < x.size(); ++k) s += x[k] * l.w().value(k, j);
      for (int k = 0; k < H; ++k) s += h[k] * l.u().value(k, j);
      z[j] = s;
    }
    for (int j = 0; j < H; ++j) {
      const double i = Sigmoid(z[j]), f = Sigmoid(z[H + j]), g = std::tanh(z[2 * H + j]),
                   o = Sigmoid(z[3 * H + j]);
      c[j] = f * c[j] + i * g;
      h[j] = o * std::tanh(c[j]);
    }
  }
};

TEST(LstmTest, ZeroWeightsClosedForm) {
  LstmLayer l("l", 1, 1);
  l.b().value(0, 2) = 1.0;  // candidate bias
  std::vector<Tensor2> xs(2, M({{0}}));
  const auto hs = l.Forward(xs, nullptr, nullptr, nullptr);
  const double c1 = 0.5 * std::tanh(1.0);
  const double c2 = 0.5 * c1 + 0.5 * std::tanh(1.0);
  EXPECT_NEAR(hs[0](0, 0), 0.5 * std::tanh(c1), 1e-15);
  EXPECT_NEAR(hs[1](0, 0), 0.5 * std::tanh(c2), 1e-15);
}

TEST(LstmTest, InitForgetBias) {
  Rng rng(4);
  LstmLayer l("l", 3, 5);
  l.Init(rng);
  for (int j = 0; j < 20; ++j) EXPECT_EQ(l.b().value(0, j), (j >= 5 && j < 10) ? 1.0 : 0.0);
}

TEST(LstmTest, MatchesScalarReference) {
  Rng rng(5);
  LstmLayer l("l", 3, 4);
  l.Init(rng);
  l.b().value = RandomTensor(1, 16, rng, 0.5);
  std::vector<Tensor2> xs;
  for (int t = 0; t < 6; ++t) xs.push_back(RandomTensor(2, 3, rng));
  const auto hs = l.Forward(xs, nullptr, nullptr, nullptr);
  RefLstm ref{l};
  for (int b = 0; b < 2; ++b) {
    std::vector<double> h(4, 0.0), c(4, 0.0);
    for (int t = 0; t < 6; ++t) {
      ref.Step({xs[t](b, 0), xs[t](b, 1), xs[t](b, 2)}, h, c);
      for (int j = 0; j < 4; ++j) EXPECT_NEAR(hs[t](b, j), h[j], 1e-14);
    }
  }
}

TEST(LstmTest, RecurrentMaskIsConstantAcrossTime) {
  Rng rng(6);
  LstmLayer l("l", 2, 3);
  l.Init(rng);
  std::vector<Tensor2> xs;
  for (int t = 0; t < 5; ++t) xs.push_back(RandomTensor(4, 2, rng));
  const Tensor2 in_mask = DropoutMask(4, 2, 0.5, rng);
  const Tensor2 rec_mask = DropoutMask(4, 3, 0.5, rng);
  LstmLayer::SequenceCache cache;
  const auto hs = l.Forward(xs, &in_mask, &rec_mask, &cache);
  ASSERT_EQ(cache.steps.size(), 5u);
  for (int t = 0; t < 5; ++t) {
    EXPECT_EQ(cache.steps[t].x, xs[t].cwiseProduct(in_mask));
    const Tensor2 prev = t == 0 ? Tensor2::Zero(4, 3) : hs[t - 1];
    EXPECT_EQ(cache.steps[t].h_prev, prev.cwiseProduct(rec_mask));
  }
}

TEST(LstmTest, BackpropThroughTimeGradCheck) {
  Rng rng(8);
  LstmLayer l("l", 3, 4);
  l.Init(rng);
  l.b().value = RandomTensor(1, 16, rng, 0.5);
  std::vector<Tensor2> xs, ws;
  for (int t = 0; t < 5; ++t) {
    xs.push_back(RandomTensor(2, 3, rng));
    ws.push_back(RandomTensor(2, 4, rng));
  }
  const Tensor2 in_mask = DropoutMask(2, 3, 0.3, rng);
  const Tensor2 rec_mask = DropoutMask(2, 4, 0.3, rng);
  ParamList params;
  l.AppendParams(params);
  std::vector<Tensor2> dxs;
  auto loss = [&](bool backward) {
    LstmLayer::SequenceCache cache;
    const auto hs = l.Forward(xs, &in_mask, &rec_mask, &cache);
    double s = 0;
    for (int t = 0; t < 5; ++t) s += hs[t].cwiseProduct(ws[t]).sum();
    if (backward) {
      ZeroGrads(params);
      std::vector<Tensor2> dhs(ws);
      dhs[2] = Tensor2();  // a step with no direct loss
      dxs = l.Backward(cache, dhs);
    }
    return s;
  };
  // Drop the t = 2 term from the loss to match the empty gradient.
  auto loss_without_2 = [&](bool backward) {
    const Tensor2 saved = ws[2];
    ws[2].setZero();
    const double v = loss(backward);
    ws[2] = saved;
    return v;
  };
  const GradCheckReport r = GradCheck(loss_without_2, params);
  EXPECT_EQ(r.coordinates, 3u * 16 + 4u * 16 + 16u);
  EXPECT_LT(r.max_rel_error, 1e-6) << r.worst_param << "[" << r.worst_index << "]";

  // Input gradients by central differences.
  loss_without_2(true);
  const double eps = 1e-6;
  for (int t = 0; t < 5; ++t) {
    for (Eigen::Index i = 0; i < xs[t].size(); ++i) {
      const double orig = xs[t].data()[i];
      xs[t].data()[i] = orig + eps;
      const double up = loss_without_2(false);
      xs[t].data()[i] = orig - eps;
      const double down = loss_without_2(false);
      xs[t].data()[i] = orig;
      EXPECT_NEAR(dxs[t].data()[i], (up - down) / (2 * eps), 1e-8);
    }
  }
}

TEST(SoftmaxTest, RowsSumToOneAndAreStable) {
  const Tensor2 p = Softmax(M({{0, 0}, {1000, 0}, {-1000, -1000}}));
  EXPECT_NEAR(p(0, 0), 0.5, 1e-15);
  EXPECT_NEAR(p(1, 0), 1.0, 1e-15);
  EXPECT_NEAR(p(2, 1), 0.5, 1e-15);
  for (int r = 0; r < 3; ++r) EXPECT_NEAR(p.row(r).sum(), 1.0, 1e-15);
}

TEST(SoftmaxTest, XentExample) {
  const XentResult r = SoftmaxXent(M({{0, 0}, {std::log(3.0), 0}}), {0, 1});
  EXPECT_NEAR(r.loss, std::log(2.0) + std::log(4.0), 1e-15);
  EXPECT_NEAR(r.dlogits(0, 0), -0.5, 1e-15);
  EXPECT_NEAR(r.dlogits(0, 1), 0.5, 1e-15);
  EXPECT_NEAR(r.dlogits(1, 0), 0.75, 1e-15);
  EXPECT_NEAR(r.dlogits(1, 1), -0.75, 1e-15);
  EXPECT_EQ(CodeOf([] { SoftmaxXent(M({{0, 0}}), {2}); }), ErrorCode::kIndexOutOfRange);
  EXPECT_EQ(CodeOf([] { SoftmaxXent(M({{0, 0}}), {0, 1}); }), ErrorCode::kShapeMismatch);
}

TEST(SoftmaxTest, BackwardMatchesFiniteDifferences) {
  Rng rng(9);
  Tensor2 z = RandomTensor(3, 5, rng, 2.0);
  const Tensor2 w = RandomTensor(3, 5, rng);
  const Tensor2 d = SoftmaxBackward(Softmax(z), w);
  const double eps = 1e-6;
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    const double orig = z.data()[i];
    z.data()[i] = orig + eps;
    const double up = Softmax(z).cwiseProduct(w).sum();
    z.data()[i] = orig - eps;
    const double down = Softmax(z).cwiseProduct(w).sum();
    z.data()[i] = orig;
    EXPECT_NEAR(d.data()[i], (up - down) / (2 * eps), 1e-9);
  }
}

TEST(AdamTest, FirstStepMovesByLearningRate) {
  Parameter p("p", 1, 3);
  p.value = M({{1, 1, 1}});
  p.grad = M({{0.5, -2, 1e-3}});
  AdamState adam({&p}, {0.01, 0.9, 0.999, 1e-8});
  adam.Step({&p});
  EXPECT_EQ(adam.step_count(), 1);
  // m_hat = g and v_hat = g^2, so the step is lr * g / (|g| + eps).
  for (int j = 0; j < 3; ++j) {
    const double g = p.grad(0, j);
    EXPECT_NEAR(p.value(0, j), 1 - 0.01 * g / (std::abs(g) + 1e-8), 1e-15);
  }
}

TEST(AdamTest, ThreeStepHandTrace) {
  Parameter p("p", 1, 1);
  p.value(0, 0) = 0.3;
  const AdamConfig cfg{0.1, 0.8, 0.9, 1e-6};
  AdamState adam({&p}, cfg);
  const double grads[] = {1.0, -0.5, 0.25};
  double theta = 0.3, m = 0, v = 0;
  for (int t = 1; t <= 3; ++t) {
    const double g = grads[t - 1];
    p.grad(0, 0) = g;
    adam.Step({&p});
    m = 0.8 * m + 0.2 * g;
    v = 0.9 * v + 0.1 * g * g;
    const double mh = m / (1 - std::pow(0.8, t));
    const double vh = v / (1 - std::pow(0.9, t));
    theta -= 0.1 * mh / (std::sqrt(vh) + 1e-6);
    EXPECT_NEAR(p.value(0, 0), theta, 1e-12) << "step " << t;
  }
}

TEST(AdamTest, ShapeMismatch) {
  Parameter p("p", 2, 2);
  AdamState adam({&p});
  Parameter q("q", 3, 2);
  EXPECT_EQ(CodeOf([&] { adam.Step({&q}); }), ErrorCode::kShapeMismatch);
}

TEST(GradCheckTest, DetectsWrongGradient) {
  Parameter p("p", 1, 2);
  p.value = M({{0.7, -1.3}});
  auto loss = [&](bool backward) {
    const double a = p.value(0, 0), b = p.value(0, 1);
    if (backward) {
      p.ZeroGrad();
      p.grad(0, 0) = 2 * a * b;
      p.grad(0, 1) = a * a * 1.1;  // deliberately 10% off
    }
    return a * a * b;
  };
  const GradCheckReport r = GradCheck(loss, {&p});
  EXPECT_GT(r.max_rel_error, 0.04);
  EXPECT_EQ(r.worst_param, "p");
  EXPECT_EQ(r.worst_index, 1);
}

TEST(CheckpointTest, RoundTripIsExact) {
  Rng rng(10);
  Parameter a("layer.w", 3, 4), b("layer.b", 1, 4);
  a.value = RandomTensor(3, 4, rng);
  b.value = RandomTensor(1, 4, rng);
  nlohmann::ordered_json header = {{"format", "test"}, {"n", 2}};
  const std::string bytes = EncodeCheckpoint(header, {&a, &b});
  const Checkpoint ck = DecodeCheckpoint(bytes);
  EXPECT_EQ(ck.header, header);
  EXPECT_EQ(ck.tensors.at("layer.w"), a.value);
  EXPECT_EQ(ck.tensors.at("layer.b"), b.value);

  Parameter a2("layer.w", 3, 4), b2("layer.b", 1, 4);
  RestoreParams(ck, {&a2, &b2});
  EXPECT_EQ(a2.value, a.value);
  EXPECT_EQ(b2.value, b.value);
  EXPECT_EQ(EncodeCheckpoint(header, {&a2, &b2}), bytes);

  Parameter wrong("layer.w", 4, 3);
  EXPECT_EQ(CodeOf([&] { RestoreParams(ck, {&wrong}); }), ErrorCode::kShapeMismatch);
  Parameter missing("other", 1, 1);
  EXPECT_EQ(CodeOf([&] { RestoreParams(ck, {&missing}); }), ErrorCode::kFormat);
  EXPECT_EQ(CodeOf([&] { DecodeCheckpoint(bytes.substr(0, bytes.size() - 3)); }),
            ErrorCode::kFormat);
  std::string bad = bytes;
  bad[0] = 'X';
  EXPECT_EQ(CodeOf([&] { DecodeCheckpoint(bad); }), ErrorCode::kFormat);
}

}  // namespace
}  // namespace hanphon::nn
