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

// Independent reference implementations used by the unit and acceptance
// tests. Nothing here calls into the code under test for the quantity it
// checks.

#ifndef HANPHON_TESTS_ORACLES_ORACLES_H_
#define HANPHON_TESTS_ORACLES_ORACLES_H_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "hanphon/common/random.h"
#include "hanphon/ids/ids.h"
#include "hanphon/phonology/phonology.h"

namespace hanphon::oracle {

inline bool IsIdc(char32_t cp) { return cp >= 0x2FF0 && cp <= 0x2FFB; }
inline int IdcArity(char32_t cp) { return cp == 0x2FF2 || cp == 0x2FF3 ? 3 : 2; }

// Random tree whose depth does not exceed `max_depth` (a leaf has depth 0).
inline ids::IdsTree RandomTree(Rng& rng, int max_depth) {
  if (max_depth == 0 || rng.Uniform() < 0.35) {
    // Mix of BMP CJK, extension B (4-byte UTF-8) and circled placeholders.
    const double u = rng.Uniform();
    char32_t cp;
    if (u < 0.8) cp = 0x4E00 + static_cast<char32_t>(rng.Index(0x5200));
    else if (u < 0.95) cp = 0x20000 + static_cast<char32_t>(rng.Index(0xA6D0));
    else cp = 0x2460 + static_cast<char32_t>(rng.Index(20));
    return ids::IdsTree::Leaf(cp);
  }
  const char32_t op = 0x2FF0 + static_cast<char32_t>(rng.Index(12));
  std::vector<ids::IdsTree> kids;
  for (int i = 0; i < IdcArity(op); ++i) kids.push_back(RandomTree(rng, max_depth - 1));
  return ids::IdsTree::Op(ids::IdsOperator(op), std::move(kids));
}

// Recursive prefix-order writer.
inline void AppendPrefix(const ids::IdsTree& t, std::u32string& out) {
  out.push_back(t.symbol());
  for (const auto& c : t.children()) AppendPrefix(c, out);
}

inline std::string Utf8(const std::u32string& s) {
  std::string out;
  for (char32_t cp : s) {
    if (cp < 0x80) {
      out += static_cast<char>(cp);
    } else if (cp < 0x800) {
      out += static_cast<char>(0xC0 | (cp >> 6));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
      out += static_cast<char>(0xE0 | (cp >> 12));
      out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
      out += static_cast<char>(0xF0 | (cp >> 18));
      out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
      out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    }
  }
  return out;
}

inline size_t LeafCount(const std::u32string& seq) {
  size_t n = 0;
  for (char32_t cp : seq) n += IsIdc(cp) ? 0 : 1;
  return n;
}

// ---------------------------------------------------------------------------
// Metrics by direct counting.

struct Counts {
  size_t n = 0;
  size_t string_errors = 0;
  std::array<size_t, 3> pos_errors = {0, 0, 0};  // onset, nucleus, coda
  size_t excluded = 0;
};

inline Counts CountErrors(const std::vector<phonology::SyllableParts>& pred,
                          const std::vector<phonology::SyllableParts>& ref) {
  Counts c;
  for (size_t i = 0; i < ref.size(); ++i) {
    if (ref[i].nucleus.empty()) {
      ++c.excluded;
      continue;
    }
    ++c.n;
    const bool on = pred[i].onset != ref[i].onset;
    const bool nu = pred[i].nucleus != ref[i].nucleus;
    const bool cd = pred[i].coda != ref[i].coda;
    c.pos_errors[0] += on;
    c.pos_errors[1] += nu;
    c.pos_errors[2] += cd;
    if (on || nu || cd) ++c.string_errors;
  }
  return c;
}

inline double Pct(size_t k, size_t n) { return n ? 100.0 * static_cast<double>(k) / n : 0.0; }

// ---------------------------------------------------------------------------
// Exhaustive CART split over a dense integer matrix.

struct BruteSplit {
  int feature = -1;
  int threshold = 0;
  double impurity = std::numeric_limits<double>::infinity();
};

inline double GiniOf(const std::vector<int>& labels, int classes) {
  if (labels.empty()) return 0.0;
  std::vector<double> c(static_cast<size_t>(classes), 0.0);
  for (int y : labels) c[static_cast<size_t>(y)] += 1.0;
  double g = 1.0;
  for (double v : c) g -= (v / labels.size()) * (v / labels.size());
  return g;
}

// Tries every threshold between the column minimum and maximum. Candidates
// whose weighted gini is within `tie` of the best keep the earliest
// (feature, threshold). Only strict improvements over the parent count.
inline BruteSplit BestSplit(const std::vector<std::vector<int>>& x, const std::vector<int>& y,
                            int classes, int min_leaf, double tie = 1e-12) {
  BruteSplit best;
  const double parent = GiniOf(y, classes);
  const size_t n = y.size();
  if (n == 0) return best;
  const size_t cols = x[0].size();
  for (size_t f = 0; f < cols; ++f) {
    int lo = x[0][f], hi = x[0][f];
    for (const auto& r : x) {
      lo = std::min(lo, r[f]);
      hi = std::max(hi, r[f]);
    }
    for (int t = lo; t < hi; ++t) {
      std::vector<int> l, r;
      for (size_t i = 0; i < n; ++i) (x[i][f] <= t ? l : r).push_back(y[i]);
      if (l.size() < static_cast<size_t>(min_leaf) || r.size() < static_cast<size_t>(min_leaf)) {
        continue;
      }
      const double g = (l.size() * GiniOf(l, classes) + r.size() * GiniOf(r, classes)) / n;
      if (g < parent - tie && g < best.impurity - tie) {
        best.feature = static_cast<int>(f);
        best.threshold = t;
        best.impurity = g;
      }
    }
  }
  return best;
}

// Same search for several label columns; the impurity of a node is the sum
// of the per-column ginis.
inline BruteSplit BestJointSplit(const std::vector<std::vector<int>>& x,
                                 const std::vector<std::vector<int>>& ys,
                                 const std::vector<int>& classes, int min_leaf,
                                 double tie = 1e-12) {
  BruteSplit best;
  const size_t n = x.size();
  if (n == 0) return best;
  auto sum_gini = [&](const std::vector<size_t>& rows) {
    double g = 0.0;
    for (size_t o = 0; o < ys.size(); ++o) {
      std::vector<int> labels;
      for (size_t i : rows) labels.push_back(ys[o][i]);
      g += GiniOf(labels, classes[o]);
    }
    return g;
  };
  std::vector<size_t> all(n);
  for (size_t i = 0; i < n; ++i) all[i] = i;
  const double parent = sum_gini(all);
  for (size_t f = 0; f < x[0].size(); ++f) {
    int lo = x[0][f], hi = x[0][f];
    for (const auto& r : x) {
      lo = std::min(lo, r[f]);
      hi = std::max(hi, r[f]);
    }
    for (int t = lo; t < hi; ++t) {
      std::vector<size_t> l, r;
      for (size_t i = 0; i < n; ++i) (x[i][f] <= t ? l : r).push_back(i);
      if (l.size() < static_cast<size_t>(min_leaf) || r.size() < static_cast<size_t>(min_leaf)) {
        continue;
      }
      const double g = (l.size() * sum_gini(l) + r.size() * sum_gini(r)) / n;
      if (g < parent - tie && g < best.impurity - tie) {
        best.feature = static_cast<int>(f);
        best.threshold = t;
        best.impurity = g;
      }
    }
  }
  return best;
}

}  // namespace hanphon::oracle

#endif  // HANPHON_TESTS_ORACLES_ORACLES_H_
