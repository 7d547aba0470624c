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

#ifndef HANPHON_NN_TENSOR_H_
#define HANPHON_NN_TENSOR_H_

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace hanphon::nn {

// Row-major float64 matrix; a batch is one example per row.
using Tensor2 = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Throws Error(kNonFiniteValue) naming `what` if any entry is NaN or Inf.
void CheckFinite(const Tensor2& t, const char* what);
// Throws Error(kShapeMismatch).
void CheckShape(const Tensor2& t, Eigen::Index rows, Eigen::Index cols,
                const char* what);

// A learnable tensor and its accumulated gradient.
struct Parameter {
  std::string name;
  Tensor2 value;
  Tensor2 grad;

  Parameter() = default;
  Parameter(std::string n, Eigen::Index rows, Eigen::Index cols)
      : name(std::move(n)),
        value(Tensor2::Zero(rows, cols)),
        grad(Tensor2::Zero(rows, cols)) {}

  void ZeroGrad() { grad.setZero(); }
};

using ParamList = std::vector<Parameter*>;

void ZeroGrads(const ParamList& params);
size_t CountScalars(const ParamList& params);

}  // namespace hanphon::nn

#endif  // HANPHON_NN_TENSOR_H_
