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

#ifndef HANPHON_NN_CHECKPOINT_H_
#define HANPHON_NN_CHECKPOINT_H_

#include <map>
#include <nlohmann/json.hpp>
#include <string>

#include "hanphon/nn/tensor.h"

namespace hanphon::nn {

// Binary layout, all integers little-endian:
//   "HPCKPT\0\0"  u32 version  u64 header_len  header (UTF-8 JSON)
//   u32 tensor_count, then per tensor:
//   u32 name_len  name  u32 ndims(=2)  u64 rows  u64 cols  f64[rows*cols]
inline constexpr uint32_t kCheckpointVersion = 1;

struct Checkpoint {
  nlohmann::ordered_json header;
  std::map<std::string, Tensor2> tensors;
};

std::string EncodeCheckpoint(const nlohmann::ordered_json& header,
                             const ParamList& params);
Checkpoint DecodeCheckpoint(std::string_view bytes);

void SaveCheckpoint(const std::string& path, const nlohmann::ordered_json& header,
                    const ParamList& params);
Checkpoint LoadCheckpoint(const std::string& path);

// Copies tensors into `params` by name; every parameter must be present with
// matching shape. Errors: kFormat, kShapeMismatch.
void RestoreParams(const Checkpoint& ckpt, const ParamList& params);

}  // namespace hanphon::nn

#endif  // HANPHON_NN_CHECKPOINT_H_
