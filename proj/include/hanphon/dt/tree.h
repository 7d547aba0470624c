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

#ifndef HANPHON_DT_TREE_H_
#define HANPHON_DT_TREE_H_

#include <array>
#include <nlohmann/json.hpp>
#include <optional>
#include <utility>
#include <vector>

#include "hanphon/models/features.h"

namespace hanphon::dt {

enum class TreeStructure {
  kPerPosition,  // three trees, one per output position
  kJoint,        // one tree whose leaves hold all three distributions
};

const char* TreeStructureName(TreeStructure s);  // "per_position", "joint"

struct DtConfig {
  std::optional<int> max_depth;
  int min_samples_leaf = 5;
  TreeStructure structure = TreeStructure::kPerPosition;
};

// Non-negative integer features stored sparsely, one sorted (column, value)
// list per row.
class FeatureMatrix {
 public:
  FeatureMatrix() = default;
  explicit FeatureMatrix(int cols) : cols_(cols) {}
  static FeatureMatrix FromDense(const std::vector<std::vector<int>>& rows);

  int cols() const { return cols_; }
  size_t rows() const { return rows_.size(); }
  // Entries must be sorted by column; zeros are dropped.
  void AddRow(std::vector<std::pair<int, int>> entries);
  const std::vector<std::pair<int, int>>& row(size_t r) const { return rows_[r]; }
  int Value(size_t r, int col) const;

 private:
  int cols_ = 0;
  std::vector<std::vector<std::pair<int, int>>> rows_;
};

// BoR counts, optionally followed by cognate-indicator bits.
FeatureMatrix DtFeatures(const std::vector<models::Example>& examples,
                         const models::FeatureDims& dims, bool with_indicator);

struct Split {
  int feature = -1;
  int threshold = 0;  // x <= threshold goes left
  size_t left = 0;
  size_t right = 0;
  double impurity = 0.0;  // weighted gini of the children

  bool valid() const { return feature >= 0; }
};

double Gini(const std::vector<int>& counts);

// Labels of several outputs over the same rows: outputs[o][row].
using MultiLabels = std::vector<std::vector<int>>;

// Best split of the rows in `indices` by weighted gini, requiring at least
// `min_samples_leaf` rows per side and a strict impurity reduction. Ties go
// to the lowest feature, then the lowest threshold. Returns an invalid split
// when none qualifies.
Split BestSplit(const FeatureMatrix& x, const std::vector<int>& y, int classes,
                const std::vector<size_t>& indices, int min_samples_leaf);
// Several outputs: the impurity of a node is the sum of its per-output ginis.
Split BestSplit(const FeatureMatrix& x, const MultiLabels& y, const std::vector<int>& classes,
                const std::vector<size_t>& indices, int min_samples_leaf);

struct TreeNode {
  int feature = -1;  // -1 for leaves
  int threshold = 0;
  int left = -1;
  int right = -1;
  std::vector<std::vector<int>> counts;  // per output
  std::vector<int> majority;             // per output, lowest class on ties

  bool is_leaf() const { return feature < 0; }
};

class DecisionTree {
 public:
  // Errors: kEmptyData, kLengthMismatch, kIndexOutOfRange, kInvalidConfig.
  static DecisionTree Fit(const FeatureMatrix& x, const MultiLabels& y,
                          const std::vector<int>& classes, const DtConfig& config);
  static DecisionTree Fit(const FeatureMatrix& x, const std::vector<int>& y, int classes,
                          const DtConfig& config);

  // Majority of the first output.
  int Predict(const FeatureMatrix& x, size_t row) const;
  const TreeNode& Leaf(const FeatureMatrix& x, size_t row) const;
  const std::vector<TreeNode>& nodes() const { return nodes_; }
  const std::vector<int>& classes() const { return classes_; }
  int Depth() const;
  size_t LeafCount() const;

  nlohmann::ordered_json ToJson() const;
  static DecisionTree FromJson(const nlohmann::json& j);

 private:
  std::vector<int> classes_;
  std::vector<TreeNode> nodes_;
};

// Onset, nucleus and coda classifiers, either as three trees or one joint tree.
class PositionTrees {
 public:
  static PositionTrees Fit(const FeatureMatrix& x, const std::vector<models::Labels>& y,
                           const std::array<int, 3>& classes, const DtConfig& config);

  models::Labels Predict(const FeatureMatrix& x, size_t row) const;
  std::vector<models::Labels> PredictAll(const FeatureMatrix& x) const;
  TreeStructure structure() const { return structure_; }
  // The tree deciding `pos`; with a joint structure all positions share one.
  const DecisionTree& tree(phonology::Position pos) const {
    return structure_ == TreeStructure::kJoint ? trees_[0] : trees_[static_cast<size_t>(pos)];
  }

  nlohmann::ordered_json ToJson() const;
  static PositionTrees FromJson(const nlohmann::json& j);

 private:
  TreeStructure structure_ = TreeStructure::kPerPosition;
  std::vector<DecisionTree> trees_;
};

}  // namespace hanphon::dt

#endif  // HANPHON_DT_TREE_H_
