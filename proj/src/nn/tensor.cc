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

#include "hanphon/nn/tensor.h"

#include "hanphon/common/error.h"

namespace hanphon::nn {

void CheckFinite(const Tensor2& t, const char* what) {
  if (!t.allFinite()) {
    throw Error(ErrorCode::kNonFiniteValue, std::string("non-finite value in ") + what);
  }
}

void CheckShape(const Tensor2& t, Eigen::Index rows, Eigen::Index cols,
                const char* what) {
  if (t.rows() != rows || t.cols() != cols) {
    throw Error(ErrorCode::kShapeMismatch,
                std::string(what) + ": expected " + std::to_string(rows) + "x" +
                    std::to_string(cols) + ", got " + std::to_string(t.rows()) +
                    "x" + std::to_string(t.cols()));
  }
}

void ZeroGrads(const ParamList& params) {
  for (Parameter* p : params) p->ZeroGrad();
}

size_t CountScalars(const ParamList& params) {
  size_t n = 0;
  for (const Parameter* p : params) n += static_cast<size_t>(p->value.size());
  return n;
}

}  // namespace hanphon::nn
