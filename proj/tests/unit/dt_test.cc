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


#include "hanphon/dt/tree.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <functional>

#include "hanphon/common/error.h"
#include "hanphon/common/random.h"
#include "oracles/oracles.h"

namespace hanphon::dt {
namespace {

using Dense = std::vector<std::vector<int>>;

struct Instance {
  Dense x;
  std::vector<int> y;
  int classes = 2;
};

Instance RandomInstance(Rng& rng, size_t max_rows, int max_cols, int max_value, int max_classes) {
  Instance in;
  const size_t n = 2 + rng.Index(max_rows - 1);
  const int cols = 1 + static_cast<int>(rng.Index(static_cast<uint64_t>(max_cols)));
  in.classes = 2 + static_cast<int>(rng.Index(static_cast<uint64_t>(max_classes - 1)));
  for (size_t i = 0; i < n; ++i) {
    std::vector<int> row;
    for (int c = 0; c < cols; ++c) row.push_back(static_cast<int>(rng.Index(max_value + 1)));
    in.x.push_back(std::move(row));
    in.y.push_back(static_cast<int>(rng.Index(static_cast<uint64_t>(in.classes))));
  }
  return in;
}

std::vector<size_t> AllRows(size_t n) {
  std::vector<size_t> v(n);
  for (size_t i = 0; i < n; ++i) v[i] = i;
  return v;
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

TEST(FeatureMatrixTest, SparseRows) {
  const FeatureMatrix m = FeatureMatrix::FromDense({{0, 3, 0}, {1, 0, 2}});
  EXPECT_EQ(m.cols(), 3);
  EXPECT_EQ(m.row(0).size(), 1u);
  EXPECT_EQ(m.Value(0, 1), 3);
  EXPECT_EQ(m.Value(1, 1), 0);
  EXPECT_EQ(m.Value(1, 2), 2);
  FeatureMatrix bad(3);
  EXPECT_EQ(CodeOf([&] { bad.AddRow({{2, 1}, {1, 1}}); }), ErrorCode::kIndexOutOfRange);
  EXPECT_EQ(CodeOf([&] { bad.AddRow({{3, 1}}); }), ErrorCode::kIndexOutOfRange);
  EXPECT_EQ(CodeOf([&] { FeatureMatrix::FromDense({{1, 2}, {1}}); }), ErrorCode::kShapeMismatch);
}

TEST(GiniTest, Values) {
  EXPECT_DOUBLE_EQ(Gini({5, 0}), 0.0);
  EXPECT_DOUBLE_EQ(Gini({1, 1}), 0.5);
  EXPECT_DOUBLE_EQ(Gini({1, 1, 1, 1}), 0.75);
  EXPECT_DOUBLE_EQ(Gini({}), 0.0);
}

TEST(DecisionTreeTest, PerfectBinarySplit) {
  const FeatureMatrix x = FeatureMatrix::FromDense({{0, 1}, {0, 0}, {1, 1}, {1, 0}});
  const DecisionTree t = DecisionTree::Fit(x, {0, 0, 1, 1}, 2, {std::nullopt, 1});
  EXPECT_EQ(t.Depth(), 1);
  EXPECT_EQ(t.nodes()[0].feature, 0);
  EXPECT_EQ(t.nodes()[0].threshold, 0);
  for (size_t r = 0; r < 4; ++r) EXPECT_EQ(t.Predict(x, r), r < 2 ? 0 : 1);
}

TEST(DecisionTreeTest, IdenticalLabelsGiveOneLeaf) {
  const FeatureMatrix x = FeatureMatrix::FromDense({{0}, {3}, {1}});
  const DecisionTree t = DecisionTree::Fit(x, {2, 2, 2}, 3, {std::nullopt, 1});
  EXPECT_EQ(t.nodes().size(), 1u);
  EXPECT_EQ(t.Predict(x, 1), 2);
}

TEST(DecisionTreeTest, XorHasNoImprovingRootSplit) {
  const FeatureMatrix x = FeatureMatrix::FromDense({{0, 0}, {0, 1}, {1, 0}, {1, 1}});
  const DecisionTree t = DecisionTree::Fit(x, {0, 1, 1, 0}, 2, {std::nullopt, 1});
  EXPECT_EQ(t.LeafCount(), 1u);
  EXPECT_EQ(t.Predict(x, 0), 0);  // lowest class on a tie
}

TEST(DecisionTreeTest, PureLeavesReproduceTrainingLabels) {
  Rng rng(1);
  Dense x;
  std::vector<int> y;
  for (int i = 0; i < 60; ++i) {
    x.push_back({i, static_cast<int>(rng.Index(4))});
    y.push_back(static_cast<int>(rng.Index(3)));
  }
  const FeatureMatrix m = FeatureMatrix::FromDense(x);
  const DecisionTree t = DecisionTree::Fit(m, y, 3, {std::nullopt, 1});
  for (size_t r = 0; r < y.size(); ++r) EXPECT_EQ(t.Predict(m, r), y[r]);
}

TEST(BestSplitTest, MatchesBruteForceOn100Samples) {
  Rng rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    Dense x;
    std::vector<int> y;
    for (int i = 0; i < 100; ++i) {
      x.push_back({static_cast<int>(rng.Index(5)), static_cast<int>(rng.Index(3)),
                   static_cast<int>(rng.Index(2)), static_cast<int>(rng.Index(7))});
      y.push_back((x.back()[0] + x.back()[3] + static_cast<int>(rng.Index(2))) % 3);
    }
    const Split s = BestSplit(FeatureMatrix::FromDense(x), y, 3, AllRows(100), 1);
    const oracle::BruteSplit b = oracle::BestSplit(x, y, 3, 1);
    ASSERT_EQ(s.feature, b.feature) << trial;
    ASSERT_EQ(s.threshold, b.threshold) << trial;
    EXPECT_NEAR(s.impurity, b.impurity, 1e-12);
  }
}

TEST(BestSplitTest, RandomSmallInstancesMatchBruteForce) {
  Rng rng(3);
  for (int trial = 0; trial < 2000; ++trial) {
    const Instance in = RandomInstance(rng, 12, 4, 3, 3);
    const int min_leaf = 1 + static_cast<int>(rng.Index(3));
    const Split s = BestSplit(FeatureMatrix::FromDense(in.x), in.y, in.classes,
                              AllRows(in.y.size()), min_leaf);
    const oracle::BruteSplit b = oracle::BestSplit(in.x, in.y, in.classes, min_leaf);
    ASSERT_EQ(s.feature, b.feature) << trial;
    if (b.feature >= 0) {
      ASSERT_EQ(s.threshold, b.threshold) << trial;
      ASSERT_NEAR(s.impurity, b.impurity, 1e-12) << trial;
      ASSERT_GE(s.left, static_cast<size_t>(min_leaf));
      ASSERT_GE(s.right, static_cast<size_t>(min_leaf));
    }
  }
}

TEST(BestSplitTest, JointMatchesBruteForce) {
  Rng rng(4);
  for (int trial = 0; trial < 1000; ++trial) {
    const Instance in = RandomInstance(rng, 12, 4, 3, 3);
    std::vector<std::vector<int>> ys = {in.y, {}, {}};
    const std::vector<int> classes = {in.classes, 2, 4};
    for (size_t i = 0; i < in.y.size(); ++i) {
      ys[1].push_back(static_cast<int>(rng.Index(2)));
      ys[2].push_back(static_cast<int>(rng.Index(4)));
    }
    const Split s =
        BestSplit(FeatureMatrix::FromDense(in.x), ys, classes, AllRows(in.y.size()), 1);
    const oracle::BruteSplit b = oracle::BestJointSplit(in.x, ys, classes, 1);
    ASSERT_EQ(s.feature, b.feature) << trial;
    if (b.feature >= 0) {
      ASSERT_EQ(s.threshold, b.threshold) << trial;
      ASSERT_NEAR(s.impurity, b.impurity, 1e-12) << trial;
    }
  }
}

TEST(DecisionTreeTest, MinSamplesLeafAndMaxDepthHold) {
  Rng rng(5);
  const Instance in = RandomInstance(rng, 300, 6, 5, 4);
  const FeatureMatrix x = FeatureMatrix::FromDense(in.x);
  const DecisionTree t = DecisionTree::Fit(x, in.y, in.classes, {3, 4});
  EXPECT_LE(t.Depth(), 3);
  for (const TreeNode& n : t.nodes()) {
    int total = 0;
    for (int c : n.counts[0]) total += c;
    EXPECT_GE(total, 4);
    if (!n.is_leaf()) {
      // Children partition the parent.
      for (size_t k = 0; k < n.counts[0].size(); ++k) {
        EXPECT_EQ(n.counts[0][k], t.nodes()[n.left].counts[0][k] + t.nodes()[n.right].counts[0][k]);
      }
    }
  }
}

TEST(DecisionTreeTest, EverySplitReducesImpurity) {
  Rng rng(6);
  const Instance in = RandomInstance(rng, 200, 5, 4, 4);
  const DecisionTree t =
      DecisionTree::Fit(FeatureMatrix::FromDense(in.x), in.y, in.classes, {std::nullopt, 1});
  for (const TreeNode& n : t.nodes()) {
    if (n.is_leaf()) continue;
    const auto& l = t.nodes()[n.left].counts[0];
    const auto& r = t.nodes()[n.right].counts[0];
    double nl = 0, nr = 0;
    for (int c : l) nl += c;
    for (int c : r) nr += c;
    EXPECT_LT((nl * Gini(l) + nr * Gini(r)) / (nl + nr), Gini(n.counts[0]));
  }
}

TEST(DecisionTreeTest, RowOrderDoesNotChangeTheTree) {
  Rng rng(7);
  const Instance in = RandomInstance(rng, 150, 5, 4, 3);
  std::vector<size_t> perm = AllRows(in.y.size());
  rng.Shuffle(perm);
  Dense px;
  std::vector<int> py;
  for (size_t i : perm) {
    px.push_back(in.x[i]);
    py.push_back(in.y[i]);
  }
  const DtConfig cfg{std::nullopt, 2};
  const DecisionTree a = DecisionTree::Fit(FeatureMatrix::FromDense(in.x), in.y, in.classes, cfg);
  const DecisionTree b = DecisionTree::Fit(FeatureMatrix::FromDense(px), py, in.classes, cfg);
  EXPECT_EQ(a.ToJson(), b.ToJson());
}

TEST(DecisionTreeTest, Errors) {
  const FeatureMatrix x = FeatureMatrix::FromDense({{0}, {1}});
  EXPECT_EQ(CodeOf([&] { DecisionTree::Fit(FeatureMatrix(1), std::vector<int>{}, 2, {}); }),
            ErrorCode::kEmptyData);
  EXPECT_EQ(CodeOf([&] { DecisionTree::Fit(x, std::vector<int>{0}, 2, {}); }),
            ErrorCode::kLengthMismatch);
  EXPECT_EQ(CodeOf([&] { DecisionTree::Fit(x, std::vector<int>{0, 2}, 2, {}); }),
            ErrorCode::kIndexOutOfRange);
  EXPECT_EQ(CodeOf([&] { DecisionTree::Fit(x, std::vector<int>{0, 1}, 2, {std::nullopt, 0}); }),
            ErrorCode::kInvalidConfig);
}

std::vector<models::Labels> RandomLabels(Rng& rng, size_t n, const std::array<int, 3>& classes) {
  std::vector<models::Labels> y;
  for (size_t i = 0; i < n; ++i) {
    y.push_back({static_cast<int>(rng.Index(classes[0])), static_cast<int>(rng.Index(classes[1])),
                 static_cast<int>(rng.Index(classes[2]))});
  }
  return y;
}

TEST(PositionTreesTest, JointTreeHasOneSharedLeaf) {
  // Feature 0 decides the whole syllable; the joint tree needs one split.
  Dense x;
  std::vector<models::Labels> y;
  for (int i = 0; i < 20; ++i) {
    x.push_back({i % 2, i % 5});
    y.push_back(i % 2 ? models::Labels{1, 2, 0} : models::Labels{0, 0, 1});
  }
  const FeatureMatrix m = FeatureMatrix::FromDense(x);
  const PositionTrees joint = PositionTrees::Fit(m, y, {2, 3, 2}, {std::nullopt, 1, TreeStructure::kJoint});
  EXPECT_EQ(joint.structure(), TreeStructure::kJoint);
  EXPECT_EQ(&joint.tree(phonology::Position::kOnset), &joint.tree(phonology::Position::kCoda));
  EXPECT_EQ(joint.tree(phonology::Position::kOnset).LeafCount(), 2u);
  EXPECT_EQ(joint.PredictAll(m), y);
  const PositionTrees per = PositionTrees::Fit(m, y, {2, 3, 2}, {std::nullopt, 1});
  EXPECT_EQ(per.PredictAll(m), y);
}

TEST(PositionTreesTest, SerializationRoundTrip) {
  Rng rng(8);
  const Instance in = RandomInstance(rng, 120, 5, 3, 2);
  const FeatureMatrix x = FeatureMatrix::FromDense(in.x);
  const std::array<int, 3> classes = {3, 4, 2};
  const auto y = RandomLabels(rng, in.x.size(), classes);
  for (TreeStructure s : {TreeStructure::kPerPosition, TreeStructure::kJoint}) {
    const PositionTrees t = PositionTrees::Fit(x, y, classes, {std::nullopt, 2, s});
    const auto j = t.ToJson();
    const PositionTrees back = PositionTrees::FromJson(nlohmann::json::parse(j.dump()));
    EXPECT_EQ(back.structure(), s);
    EXPECT_EQ(back.ToJson(), j);
    EXPECT_EQ(back.PredictAll(x), t.PredictAll(x));
  }
  EXPECT_EQ(CodeOf([] { PositionTrees::FromJson(nlohmann::json{{"format", "other"}}); }),
            ErrorCode::kFormat);
}

TEST(PositionTreesTest, SingleOutputJointEqualsPlainTree) {
  Rng rng(9);
  const Instance in = RandomInstance(rng, 200, 6, 4, 4);
  const FeatureMatrix x = FeatureMatrix::FromDense(in.x);
  const DecisionTree a = DecisionTree::Fit(x, in.y, in.classes, {std::nullopt, 1});
  const DecisionTree b = DecisionTree::Fit(x, MultiLabels{in.y}, {in.classes}, {std::nullopt, 1});
  EXPECT_EQ(a.ToJson(), b.ToJson());
}

}  // namespace
}  // namespace hanphon::dt
