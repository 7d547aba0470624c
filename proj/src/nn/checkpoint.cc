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

#include "hanphon/nn/checkpoint.h"

#include <cstring>
#include <fstream>
#include <sstream>

#include "hanphon/common/error.h"

namespace hanphon::nn {

namespace {

constexpr char kMagic[8] = {'H', 'P', 'C', 'K', 'P', 'T', '\0', '\0'};

template <typename T>
void PutLe(std::string& out, T value) {
  uint64_t bits = 0;
  static_assert(sizeof(T) <= sizeof(bits));
  std::memcpy(&bits, &value, sizeof(T));
  for (size_t i = 0; i < sizeof(T); ++i) {
    out.push_back(static_cast<char>((bits >> (8 * i)) & 0xFF));
  }
}

class Reader {
 public:
  explicit Reader(std::string_view bytes) : bytes_(bytes) {}

  template <typename T>
  T Get() {
    Need(sizeof(T));
    uint64_t bits = 0;
    for (size_t i = 0; i < sizeof(T); ++i) {
      bits |= static_cast<uint64_t>(static_cast<uint8_t>(bytes_[pos_ + i])) << (8 * i);
    }
    pos_ += sizeof(T);
    T value;
    std::memcpy(&value, &bits, sizeof(T));
    return value;
  }

  std::string_view Take(size_t n) {
    Need(n);
    auto s = bytes_.substr(pos_, n);
    pos_ += n;
    return s;
  }

  bool done() const { return pos_ == bytes_.size(); }

 private:
  void Need(size_t n) const {
    if (bytes_.size() - pos_ < n) throw Error(ErrorCode::kFormat, "checkpoint truncated");
  }

  std::string_view bytes_;
  size_t pos_ = 0;
};

}  // namespace

std::string EncodeCheckpoint(const nlohmann::ordered_json& header,
                             const ParamList& params) {
  std::string out(kMagic, sizeof(kMagic));
  PutLe<uint32_t>(out, kCheckpointVersion);
  const std::string h = header.dump();
  PutLe<uint64_t>(out, h.size());
  out += h;
  PutLe<uint32_t>(out, static_cast<uint32_t>(params.size()));
  for (const Parameter* p : params) {
    PutLe<uint32_t>(out, static_cast<uint32_t>(p->name.size()));
    out += p->name;
    PutLe<uint32_t>(out, 2);
    PutLe<uint64_t>(out, static_cast<uint64_t>(p->value.rows()));
    PutLe<uint64_t>(out, static_cast<uint64_t>(p->value.cols()));
    for (Eigen::Index i = 0; i < p->value.size(); ++i) PutLe<double>(out, p->value.data()[i]);
  }
  return out;
}

Checkpoint DecodeCheckpoint(std::string_view bytes) {
  Reader in(bytes);
  if (in.Take(sizeof(kMagic)) != std::string_view(kMagic, sizeof(kMagic))) {
    throw Error(ErrorCode::kFormat, "not a hanphon checkpoint");
  }
  const auto version = in.Get<uint32_t>();
  if (version != kCheckpointVersion) {
    throw Error(ErrorCode::kFormat, "unsupported checkpoint version " + std::to_string(version));
  }
  Checkpoint ckpt;
  const auto header_len = in.Get<uint64_t>();
  try {
    ckpt.header = nlohmann::ordered_json::parse(in.Take(header_len));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kFormat, std::string("checkpoint header: ") + e.what());
  }
  const auto count = in.Get<uint32_t>();
  for (uint32_t k = 0; k < count; ++k) {
    std::string name(in.Take(in.Get<uint32_t>()));
    if (in.Get<uint32_t>() != 2) throw Error(ErrorCode::kFormat, "tensor " + name + " is not 2-D");
    const auto rows = in.Get<uint64_t>();
    const auto cols = in.Get<uint64_t>();
    Tensor2 t(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (Eigen::Index i = 0; i < t.size(); ++i) t.data()[i] = in.Get<double>();
    ckpt.tensors.emplace(std::move(name), std::move(t));
  }
  if (!in.done()) throw Error(ErrorCode::kFormat, "trailing bytes after checkpoint");
  return ckpt;
}

void SaveCheckpoint(const std::string& path, const nlohmann::ordered_json& header,
                    const ParamList& params) {
  const std::string bytes = EncodeCheckpoint(header, params);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write checkpoint " + path);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

Checkpoint LoadCheckpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read checkpoint " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return DecodeCheckpoint(buf.str());
}

void RestoreParams(const Checkpoint& ckpt, const ParamList& params) {
  for (Parameter* p : params) {
    auto it = ckpt.tensors.find(p->name);
    if (it == ckpt.tensors.end()) {
      throw Error(ErrorCode::kFormat, "checkpoint lacks tensor " + p->name);
    }
    CheckShape(it->second, p->value.rows(), p->value.cols(), p->name.c_str());
    p->value = it->second;
  }
}

}  // namespace hanphon::nn
