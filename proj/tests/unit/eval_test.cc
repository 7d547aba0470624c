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


#include "hanphon/eval/eval.h"

#include <gtest/gtest.h>

#include <algorithm>

#include "hanphon/common/error.h"
#include "hanphon/common/random.h"
#include "oracles/oracles.h"

namespace hanphon::eval {
namespace {

using phonology::Language;
using phonology::SyllableParts;

SyllableParts P(std::string o, std::string n, std::string c) {
  return SyllableParts{std::move(o), std::move(n), std::move(c), Language::kCantonese};
}

SyllableParts RandomParts(Rng& rng) {
  static const char* onsets[] = {"", "s", "g", "gw"};
  static const char* nuclei[] = {"", "i", "aa", "eoi"};  // "" only matters for references
  static const char* codas[] = {"", "p", "ng"};
  return P(onsets[rng.Index(4)], nuclei[rng.Index(4)], codas[rng.Index(3)]);
}

TEST(ScoreTest, NoErrors) {
  const std::vector<SyllableParts> ref = {P("s", "i", "p"), P("", "aa", "")};
  const EvalReport r = Score(ref, ref);
  EXPECT_EQ(r.ser, 0.0);
  EXPECT_EQ(r.ter, 0.0);
  EXPECT_EQ(r.syllables, 2u);
  EXPECT_EQ(r.tokens, 6u);
}

TEST(ScoreTest, OneTokenOfThree) {
  const EvalReport r = Score({P("s", "i", "t")}, {P("s", "i", "p")});
  EXPECT_DOUBLE_EQ(r.ser, 100.0);
  EXPECT_NEAR(r.ter, 33.3, 0.05);
  EXPECT_DOUBLE_EQ(r.ter, 100.0 / 3.0);
  EXPECT_DOUBLE_EQ(r.coda_err, 100.0);
  EXPECT_DOUBLE_EQ(r.onset_err, 0.0);
}

TEST(ScoreTest, NullIsAnOrdinarySymbol) {
  const EvalReport r = Score({P("", "aa", ""), P("s", "aa", "")}, {P("", "aa", ""), P("", "aa", "")});
  EXPECT_DOUBLE_EQ(r.ser, 50.0);
  EXPECT_DOUBLE_EQ(r.onset_err, 50.0);
  EXPECT_DOUBLE_EQ(r.ter, 100.0 / 6.0);
}

TEST(ScoreTest, UnparsableReferencesAreExcluded) {
  const EvalReport r = Score({P("s", "i", "p"), P("x", "y", "z")}, {P("s", "i", "p"), P("", "", "")});
  EXPECT_EQ(r.excluded_references, 1u);
  EXPECT_EQ(r.syllables, 1u);
  EXPECT_EQ(r.ser, 0.0);
}

TEST(ScoreTest, LengthMismatch) {
  try {
    Score({P("s", "i", "p")}, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kLengthMismatch);
  }
}

TEST(ScoreTest, MatchesBruteForceCounter) {
  Rng rng(1);
  for (int trial = 0; trial < 1000; ++trial) {
    const size_t n = 1 + rng.Index(40);
    std::vector<SyllableParts> pred, ref;
    for (size_t i = 0; i < n; ++i) {
      ref.push_back(RandomParts(rng));
      pred.push_back(rng.Index(3) == 0 ? ref.back() : RandomParts(rng));
    }
    const EvalReport r = Score(pred, ref);
    const oracle::Counts c = oracle::CountErrors(pred, ref);
    ASSERT_EQ(r.syllables, c.n);
    ASSERT_EQ(r.excluded_references, c.excluded);
    ASSERT_EQ(r.string_errors, c.string_errors);
    ASSERT_EQ(r.onset_errors, c.pos_errors[0]);
    ASSERT_EQ(r.nucleus_errors, c.pos_errors[1]);
    ASSERT_EQ(r.coda_errors, c.pos_errors[2]);
    ASSERT_EQ(r.ser, oracle::Pct(c.string_errors, c.n));
    ASSERT_EQ(r.ter, oracle::Pct(c.pos_errors[0] + c.pos_errors[1] + c.pos_errors[2], 3 * c.n));
    CheckBounds(r);
    ASSERT_LE(std::max({r.onset_err, r.nucleus_err, r.coda_err}), r.ser + 1e-9);
    ASSERT_LE(r.ser, 3 * r.ter + 1e-9);
  }
}

TEST(ScoreTest, PermutationInvariant) {
  Rng rng(2);
  std::vector<SyllableParts> pred, ref;
  for (int i = 0; i < 200; ++i) {
    ref.push_back(RandomParts(rng));
    pred.push_back(RandomParts(rng));
  }
  const EvalReport a = Score(pred, ref);
  std::vector<size_t> perm(200);
  for (size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  rng.Shuffle(perm);
  std::vector<SyllableParts> p2, r2;
  for (size_t i : perm) {
    p2.push_back(pred[i]);
    r2.push_back(ref[i]);
  }
  EXPECT_EQ(Score(p2, r2).ToJson(), a.ToJson());
}

TEST(BoundsTest, RejectsImpossibleReports) {
  EvalReport r = Score({P("s", "i", "t"), P("g", "aa", "")}, {P("s", "i", "p"), P("g", "aa", "")});
  CheckBounds(r);
  EvalReport more_strings = r;
  more_strings.string_errors = 2;  // more string errors than token errors
  EXPECT_THROW(CheckBounds(more_strings), Error);
  EvalReport fewer_strings = r;
  fewer_strings.coda_errors = 2;  // a position with more errors than strings
  EXPECT_THROW(CheckBounds(fewer_strings), Error);
  EvalReport tokens = r;
  tokens.tokens = 5;
  EXPECT_THROW(CheckBounds(tokens), Error);
}

TEST(ReportTest, JsonRoundTrip) {
  EvalReport r = Score({P("s", "i", "t"), P("g", "aa", "")}, {P("s", "i", "p"), P("g", "aa", "")});
  r.model_id = "MLP (BoR)";
  r.data_manifest_hash = std::string(64, 'a');
  r.seed = 3;
  const EvalReport back = EvalReport::FromJson(nlohmann::json::parse(r.ToJson().dump()));
  EXPECT_EQ(back.ToJson(), r.ToJson());
  EXPECT_EQ(back.model_id, "MLP (BoR)");
  EXPECT_EQ(back.coda_errors, 1u);
}

TEST(CompareTest, MarksBestIncludingTies) {
  EvalReport a, b, c;
  a.model_id = "A";
  a.ser = 50.04;  // prints as 50.0, ties with b
  a.ter = 20.0;
  b.model_id = "B";
  b.ser = 49.96;
  b.ter = 25.0;
  c.model_id = "Longer name";
  c.ser = 60.0;
  c.ter = 19.0;
  const ComparisonTable t = Compare({a, b, c});
  const auto& rows = t.json["rows"];
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_TRUE(rows[0]["best"][0].get<bool>());
  EXPECT_TRUE(rows[1]["best"][0].get<bool>());
  EXPECT_FALSE(rows[2]["best"][0].get<bool>());
  EXPECT_TRUE(rows[2]["best"][1].get<bool>());
  EXPECT_FALSE(rows[0]["best"][1].get<bool>());
  EXPECT_NE(t.text.find("Longer name"), std::string::npos);
  EXPECT_NE(t.text.find("50.0*"), std::string::npos);
}

}  // namespace
}  // namespace hanphon::eval
