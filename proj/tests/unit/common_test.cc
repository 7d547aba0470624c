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
#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "hanphon/common/error.h"
#include "hanphon/common/hash.h"
#include "hanphon/common/random.h"
#include "hanphon/common/utf8.h"
#include "oracles/oracles.h"

namespace hanphon {
namespace {

TEST(Utf8Test, KnownEncodings) {
  EXPECT_EQ(EncodeUtf8(U'A'), "A");
  EXPECT_EQ(EncodeUtf8(U'é'), "\xC3\xA9");
  EXPECT_EQ(EncodeUtf8(U'耳'), "\xE8\x80\xB3");
  EXPECT_EQ(EncodeUtf8(char32_t{0x20000}), "\xF0\xA0\x80\x80");
  EXPECT_EQ(DecodeUtf8("⿰忄耳"), (std::u32string{0x2FF0, 0x5FC4, 0x8033}));
}

TEST(Utf8Test, RoundTripAgreesWithOracleEncoder) {
  Rng rng(7);
  for (int i = 0; i < 5000; ++i) {
    char32_t cp;
    do {
      cp = static_cast<char32_t>(rng.Index(0x110000));
    } while (cp >= 0xD800 && cp <= 0xDFFF);
    const std::string bytes = EncodeUtf8(cp);
    ASSERT_EQ(bytes, oracle::Utf8(std::u32string(1, cp))) << CodepointLabel(cp);
    ASSERT_EQ(DecodeUtf8(bytes), std::u32string(1, cp));
  }
}

TEST(Utf8Test, RejectsMalformed) {
  for (const char* bad : {"\x80", "\xE8\x80", "\xC0\xAF", "\xED\xA0\x80", "\xF8\x88\x80\x80\x80",
                          "\xE8\x41\xB3", "\xF4\x90\x80\x80"}) {
    try {
      DecodeUtf8(bad);
      ADD_FAILURE() << "accepted malformed input";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kFormat);
    }
  }
}

TEST(Utf8Test, CodepointLabels) {
  EXPECT_EQ(CodepointLabel(U'耳'), "U+8033");
  EXPECT_EQ(CodepointLabel(char32_t{0x41}), "U+0041");
  EXPECT_EQ(CodepointLabel(char32_t{0x2A6D6}), "U+2A6D6");
  EXPECT_EQ(ParseCodepointLabel("U+8033"), U'耳');
  EXPECT_EQ(ParseCodepointLabel("U+2A6D6"), char32_t{0x2A6D6});
  for (const char* bad : {"8033", "U+", "U+XYZ", "U+110000", "U+D800", "U+8033 "}) {
    EXPECT_THROW(ParseCodepointLabel(bad), Error) << bad;
  }
}

TEST(HashTest, Sha256Vectors) {
  EXPECT_EQ(Sha256Hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(Sha256Hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  EXPECT_EQ(Sha256Hex("abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq"),
            "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1");
}

TEST(HashTest, MissingFileIsIoError) {
  try {
    Sha256File("/nonexistent/hanphon/file");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
}

TEST(RngTest, SameSeedSameStream) {
  Rng a(99), b(99), c(100);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const uint64_t x = a.NextU64();
    EXPECT_EQ(x, b.NextU64());
    differs |= x != c.NextU64();
  }
  EXPECT_TRUE(differs);
}

TEST(RngTest, UniformAndIndexRanges) {
  Rng rng(3);
  std::map<uint64_t, int> hist;
  for (int i = 0; i < 70000; ++i) {
    const double u = rng.Uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    ++hist[rng.Index(7)];
  }
  ASSERT_EQ(hist.size(), 7u);
  for (const auto& [k, n] : hist) {
    EXPECT_LT(k, 7u);
    EXPECT_NEAR(n, 10000, 500);
  }
}

TEST(RngTest, NormalMoments) {
  Rng rng(11);
  double sum = 0, sq = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double z = rng.Normal();
    sum += z;
    sq += z * z;
  }
  EXPECT_NEAR(sum / n, 0.0, 0.01);
  EXPECT_NEAR(sq / n, 1.0, 0.02);
}

TEST(RngTest, ShuffleIsPermutation) {
  Rng rng(5);
  std::vector<int> v(50);
  for (int i = 0; i < 50; ++i) v[i] = i;
  rng.Shuffle(v);
  std::vector<int> sorted = v;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < 50; ++i) EXPECT_EQ(sorted[i], i);
  EXPECT_NE(v, sorted);
}

TEST(ErrorTest, NamesAreDistinct) {
  std::set<std::string> names;
  for (int c = 0; c <= static_cast<int>(ErrorCode::kFormat); ++c) {
    names.insert(ErrorCodeName(static_cast<ErrorCode>(c)));
  }
  EXPECT_EQ(names.size(), static_cast<size_t>(ErrorCode::kFormat) + 1);
  const Error e(ErrorCode::kTooFewEntries, "x");
  EXPECT_EQ(e.code(), ErrorCode::kTooFewEntries);
}

}  // namespace
}  // namespace hanphon
