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

#include <algorithm>
#include <tuple>

#include "hanphon/common/error.h"

namespace hanphon::dt {

using Wide = __int128;

FeatureMatrix FeatureMatrix::FromDense(const std::vector<std::vector<int>>& rows) {
  FeatureMatrix m(rows.empty() ? 0 : static_cast<int>(rows[0].size()));
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != m.cols_) {
      throw Error(ErrorCode::kShapeMismatch, "ragged feature rows");
    }
    std::vector<std::pair<int, int>> entries;
    for (size_t c = 0; c < r.size(); ++c) {
      if (r[c] != 0) entries.emplace_back(static_cast<int>(c), r[c]);
    }
    m.rows_.push_back(std::move(entries));
  }
  return m;
}

void FeatureMatrix::AddRow(std::vector<std::pair<int, int>> entries) {
  std::erase_if(entries, [](const auto& e) { return e.second == 0; });
  for (size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].first < 0 || entries[i].first >= cols_ ||
        (i > 0 && entries[i].first <= entries[i - 1].first)) {
      throw Error(ErrorCode::kIndexOutOfRange, "feature entries must be sorted and in range");
    }
    if (entries[i].second < 0) {
      throw Error(ErrorCode::kIndexOutOfRange, "features must be non-negative");
    }
  }
  rows_.push_back(std::move(entries));
}

int FeatureMatrix::Value(size_t r, int col) const {
  const auto& row = rows_[r];
  auto it = std::lower_bound(row.begin(), row.end(), std::make_pair(col, 0),
                             [](const auto& a, const auto& b) { return a.first < b.first; });
  return it != row.end() && it->first == col ? it->second : 0;
}

FeatureMatrix DtFeatures(const std::vector<models::Example>& examples,
                         const models::FeatureDims& dims, bool with_indicator) {
  FeatureMatrix m(dims.bor_dim + (with_indicator ? dims.indicator_dim : 0));
  for (const auto& ex : examples) {
    if (!ex.has_bor) throw Error(ErrorCode::kMissingFeature, "entry has no BoR");
    std::vector<std::pair<int, int>> entries;
    for (const auto& [slot, count] : ex.bor) entries.emplace_back(slot, static_cast<int>(count));
    if (with_indicator) {
      for (int slot : ex.indicator) entries.emplace_back(dims.bor_dim + slot, 1);
    }
    std::sort(entries.begin(), entries.end());
    m.AddRow(std::move(entries));
  }
  return m;
}

double Gini(const std::vector<int>& counts) {
  double n = 0.0, sq = 0.0;
  for (int c : counts) {
    n += c;
    sq += static_cast<double>(c) * c;
  }
  return n == 0.0 ? 0.0 : 1.0 - sq / (n * n);
}

namespace {

Wide SumSquares(const std::vector<int>& counts) {
  Wide s = 0;
  for (int c : counts) s += static_cast<Wide>(c) * c;
  return s;
}

// Score of a partition is sum_l cL^2/nL + sum_r cR^2/nR, kept as a fraction;
// a larger score means lower weighted gini.
struct Score {
  Wide num = 0;
  Wide den = 1;
};

Score PartitionScore(Wide left_sq, Wide nl, Wide right_sq, Wide nr) {
  return {left_sq * nr + right_sq * nl, nl * nr};
}

bool Better(const Score& a, const Score& b) { return a.num * b.den > b.num * a.den; }

int Majority(const std::vector<int>& counts) {
  int best = 0;
  for (size_t k = 1; k < counts.size(); ++k) {
    if (counts[k] > counts[static_cast<size_t>(best)]) best = static_cast<int>(k);
  }
  return best;
}

}  // namespace

Split BestSplit(const FeatureMatrix& x, const std::vector<int>& y, int classes,
                const std::vector<size_t>& indices, int min_samples_leaf) {
  return BestSplit(x, MultiLabels{y}, std::vector<int>{classes}, indices, min_samples_leaf);
}

Split BestSplit(const FeatureMatrix& x, const MultiLabels& y, const std::vector<int>& classes,
                const std::vector<size_t>& indices, int min_samples_leaf) {
  Split best;
  const size_t n = indices.size();
  const size_t min_leaf = static_cast<size_t>(std::max(1, min_samples_leaf));
  if (n < 2 * min_leaf) return best;

  // All outputs share one count vector; output o owns [offset[o], offset[o + 1]).
  std::vector<size_t> offset(classes.size() + 1, 0);
  for (size_t o = 0; o < classes.size(); ++o) {
    offset[o + 1] = offset[o] + static_cast<size_t>(classes[o]);
  }
  const size_t slots = offset.back();
  auto for_each_slot = [&](size_t row, auto&& fn) {
    for (size_t o = 0; o < y.size(); ++o) fn(offset[o] + static_cast<size_t>(y[o][row]));
  };

  std::vector<int> total(slots, 0);
  // (feature, value, row) for every non-zero entry in the node.
  std::vector<std::tuple<int, int, size_t>> entries;
  for (size_t i : indices) {
    for_each_slot(i, [&](size_t k) { ++total[k]; });
    for (const auto& [f, v] : x.row(i)) entries.emplace_back(f, v, i);
  }
  std::sort(entries.begin(), entries.end());

  // Parent score as a fraction over n: sum c^2 / n.
  const Score parent{SumSquares(total), static_cast<Wide>(n)};
  Score best_score = parent;

  std::vector<int> left(slots);
  size_t e = 0;
  while (e < entries.size()) {
    const int f = std::get<0>(entries[e]);
    size_t end = e;
    while (end < entries.size() && std::get<0>(entries[end]) == f) ++end;

    // Rows with value 0 form the first bucket.
    left = total;
    for (size_t k = e; k < end; ++k) {
      for_each_slot(std::get<2>(entries[k]), [&](size_t c) { --left[c]; });
    }
    size_t nl = n - (end - e);
    int value = 0;
    size_t k = e;
    while (true) {
      // Threshold `value` separates buckets <= value from the rest.
      if (nl > 0 && nl < n && nl >= min_leaf && n - nl >= min_leaf) {
        Wide lsq = 0, rsq = 0;
        for (size_t c = 0; c < slots; ++c) {
          lsq += static_cast<Wide>(left[c]) * left[c];
          const Wide r = total[c] - left[c];
          rsq += r * r;
        }
        const Score s =
            PartitionScore(lsq, static_cast<Wide>(nl), rsq, static_cast<Wide>(n - nl));
        if (Better(s, best_score)) {
          best_score = s;
          best.feature = f;
          best.threshold = value;
          best.left = nl;
          best.right = n - nl;
        }
      }
      if (k >= end) break;
      value = std::get<1>(entries[k]);
      while (k < end && std::get<1>(entries[k]) == value) {
        for_each_slot(std::get<2>(entries[k]), [&](size_t c) { ++left[c]; });
        ++nl;
        ++k;
      }
    }
    e = end;
  }
  if (best.valid()) {
    // Weighted gini summed over outputs.
    best.impurity = static_cast<double>(y.size()) * static_cast<double>(n) -
                    static_cast<double>(best_score.num) / static_cast<double>(best_score.den);
    best.impurity /= static_cast<double>(n);
  }
  return best;
}

DecisionTree DecisionTree::Fit(const FeatureMatrix& x, const std::vector<int>& y, int classes,
                               const DtConfig& config) {
  return Fit(x, MultiLabels{y}, std::vector<int>{classes}, config);
}

DecisionTree DecisionTree::Fit(const FeatureMatrix& x, const MultiLabels& y,
                               const std::vector<int>& classes, const DtConfig& config) {
  if (x.rows() == 0) throw Error(ErrorCode::kEmptyData, "no training rows");
  if (y.empty() || y.size() != classes.size()) {
    throw Error(ErrorCode::kLengthMismatch, "one class count per output is required");
  }
  for (size_t o = 0; o < y.size(); ++o) {
    if (y[o].size() != x.rows()) {
      throw Error(ErrorCode::kLengthMismatch, "labels and features differ in length");
    }
    for (int label : y[o]) {
      if (label < 0 || label >= classes[o]) {
        throw Error(ErrorCode::kIndexOutOfRange, "label " + std::to_string(label));
      }
    }
  }
  if (config.min_samples_leaf < 1) {
    throw Error(ErrorCode::kInvalidConfig, "min_samples_leaf must be >= 1");
  }
  DecisionTree tree;
  tree.classes_ = classes;

  struct Pending {
    int node;
    int depth;
    std::vector<size_t> rows;
  };
  std::vector<size_t> all(x.rows());
  for (size_t i = 0; i < all.size(); ++i) all[i] = i;
  tree.nodes_.emplace_back();
  std::vector<Pending> stack;
  stack.push_back({0, 0, std::move(all)});
  while (!stack.empty()) {
    Pending p = std::move(stack.back());
    stack.pop_back();
    TreeNode node;
    bool pure = true;
    for (size_t o = 0; o < y.size(); ++o) {
      std::vector<int> counts(static_cast<size_t>(classes[o]), 0);
      for (size_t i : p.rows) ++counts[static_cast<size_t>(y[o][i])];
      const int m = Majority(counts);
      pure = pure && counts[static_cast<size_t>(m)] == static_cast<int>(p.rows.size());
      node.counts.push_back(std::move(counts));
      node.majority.push_back(m);
    }
    const bool depth_cap = config.max_depth && p.depth >= *config.max_depth;
    Split s;
    if (!pure && !depth_cap) s = BestSplit(x, y, classes, p.rows, config.min_samples_leaf);
    if (s.valid()) {
      std::vector<size_t> l, r;
      for (size_t i : p.rows) (x.Value(i, s.feature) <= s.threshold ? l : r).push_back(i);
      node.feature = s.feature;
      node.threshold = s.threshold;
      node.left = static_cast<int>(tree.nodes_.size());
      node.right = node.left + 1;
      tree.nodes_.emplace_back();
      tree.nodes_.emplace_back();
      stack.push_back({node.right, p.depth + 1, std::move(r)});
      stack.push_back({node.left, p.depth + 1, std::move(l)});
    }
    tree.nodes_[static_cast<size_t>(p.node)] = std::move(node);
  }
  return tree;
}

const TreeNode& DecisionTree::Leaf(const FeatureMatrix& x, size_t row) const {
  size_t k = 0;
  while (!nodes_[k].is_leaf()) {
    const TreeNode& n = nodes_[k];
    k = static_cast<size_t>(x.Value(row, n.feature) <= n.threshold ? n.left : n.right);
  }
  return nodes_[k];
}

int DecisionTree::Predict(const FeatureMatrix& x, size_t row) const {
  return Leaf(x, row).majority[0];
}

int DecisionTree::Depth() const {
  if (nodes_.empty()) return 0;
  int depth = 0;
  std::vector<std::pair<size_t, int>> stack = {{0, 0}};
  while (!stack.empty()) {
    auto [k, d] = stack.back();
    stack.pop_back();
    depth = std::max(depth, d);
    if (!nodes_[k].is_leaf()) {
      stack.emplace_back(static_cast<size_t>(nodes_[k].left), d + 1);
      stack.emplace_back(static_cast<size_t>(nodes_[k].right), d + 1);
    }
  }
  return depth;
}

size_t DecisionTree::LeafCount() const {
  return static_cast<size_t>(
      std::count_if(nodes_.begin(), nodes_.end(), [](const TreeNode& n) { return n.is_leaf(); }));
}

namespace {

nlohmann::ordered_json NodeToJson(const std::vector<TreeNode>& nodes, size_t k) {
  const TreeNode& n = nodes[k];
  nlohmann::ordered_json j;
  if (n.is_leaf()) {
    j["class"] = n.majority;
    j["counts"] = n.counts;
  } else {
    j["feature"] = n.feature;
    j["threshold"] = n.threshold;
    j["counts"] = n.counts;
    j["left"] = NodeToJson(nodes, static_cast<size_t>(n.left));
    j["right"] = NodeToJson(nodes, static_cast<size_t>(n.right));
  }
  return j;
}

int NodeFromJson(const nlohmann::json& j, std::vector<TreeNode>& nodes,
                 const std::vector<int>& classes) {
  const int id = static_cast<int>(nodes.size());
  nodes.emplace_back();
  TreeNode n;
  n.counts = j.at("counts").get<std::vector<std::vector<int>>>();
  if (n.counts.size() != classes.size()) {
    throw Error(ErrorCode::kFormat, "tree node has wrong output count");
  }
  for (size_t o = 0; o < classes.size(); ++o) {
    if (static_cast<int>(n.counts[o].size()) != classes[o]) {
      throw Error(ErrorCode::kFormat, "tree node has wrong class count");
    }
    n.majority.push_back(Majority(n.counts[o]));
  }
  if (j.contains("feature")) {
    n.feature = j.at("feature").get<int>();
    n.threshold = j.at("threshold").get<int>();
    n.left = NodeFromJson(j.at("left"), nodes, classes);
    n.right = NodeFromJson(j.at("right"), nodes, classes);
  }
  nodes[static_cast<size_t>(id)] = std::move(n);
  return id;
}

}  // namespace

nlohmann::ordered_json DecisionTree::ToJson() const {
  nlohmann::ordered_json j;
  j["classes"] = classes_;
  j["root"] = NodeToJson(nodes_, 0);
  return j;
}

DecisionTree DecisionTree::FromJson(const nlohmann::json& j) {
  DecisionTree t;
  try {
    t.classes_ = j.at("classes").get<std::vector<int>>();
    NodeFromJson(j.at("root"), t.nodes_, t.classes_);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kFormat, std::string("decision tree: ") + e.what());
  }
  return t;
}

const char* TreeStructureName(TreeStructure s) {
  return s == TreeStructure::kJoint ? "joint" : "per_position";
}

PositionTrees PositionTrees::Fit(const FeatureMatrix& x, const std::vector<models::Labels>& y,
                                 const std::array<int, 3>& classes, const DtConfig& config) {
  MultiLabels by_pos(3);
  for (size_t p = 0; p < 3; ++p) {
    by_pos[p].reserve(y.size());
    for (const auto& l : y) by_pos[p].push_back(l[p]);
  }
  PositionTrees out;
  out.structure_ = config.structure;
  if (config.structure == TreeStructure::kJoint) {
    out.trees_.push_back(DecisionTree::Fit(x, by_pos, {classes.begin(), classes.end()}, config));
  } else {
    for (size_t p = 0; p < 3; ++p) {
      out.trees_.push_back(DecisionTree::Fit(x, by_pos[p], classes[p], config));
    }
  }
  return out;
}

models::Labels PositionTrees::Predict(const FeatureMatrix& x, size_t row) const {
  if (structure_ == TreeStructure::kJoint) {
    const auto& m = trees_[0].Leaf(x, row).majority;
    return {m[0], m[1], m[2]};
  }
  return {trees_[0].Predict(x, row), trees_[1].Predict(x, row), trees_[2].Predict(x, row)};
}

std::vector<models::Labels> PositionTrees::PredictAll(const FeatureMatrix& x) const {
  std::vector<models::Labels> out;
  out.reserve(x.rows());
  for (size_t r = 0; r < x.rows(); ++r) out.push_back(Predict(x, r));
  return out;
}

nlohmann::ordered_json PositionTrees::ToJson() const {
  nlohmann::ordered_json j;
  j["format"] = "hanphon.dt";
  j["structure"] = TreeStructureName(structure_);
  if (structure_ == TreeStructure::kJoint) {
    j["tree"] = trees_[0].ToJson();
  } else {
    for (auto pos : phonology::kAllPositions) {
      j[phonology::PositionName(pos)] = trees_[static_cast<size_t>(pos)].ToJson();
    }
  }
  return j;
}

PositionTrees PositionTrees::FromJson(const nlohmann::json& j) {
  if (j.value("format", "") != "hanphon.dt") {
    throw Error(ErrorCode::kFormat, "not a decision-tree model");
  }
  PositionTrees out;
  const std::string structure = j.value("structure", "");
  if (structure == "joint") {
    out.structure_ = TreeStructure::kJoint;
    out.trees_.push_back(DecisionTree::FromJson(j.at("tree")));
    if (out.trees_[0].classes().size() != 3) {
      throw Error(ErrorCode::kFormat, "joint tree must have three outputs");
    }
  } else if (structure == "per_position") {
    for (auto pos : phonology::kAllPositions) {
      out.trees_.push_back(DecisionTree::FromJson(j.at(phonology::PositionName(pos))));
    }
  } else {
    throw Error(ErrorCode::kFormat, "unknown tree structure '" + structure + "'");
  }
  return out;
}

}  // namespace hanphon::dt
