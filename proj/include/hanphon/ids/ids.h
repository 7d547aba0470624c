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

#ifndef HANPHON_IDS_IDS_H_
#define HANPHON_IDS_IDS_H_

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace hanphon::ids {

// Ideographic Description Characters U+2FF0..U+2FFB. U+2FF2 and U+2FF3 take
// three operands, the rest take two.
class IdsOperator {
 public:
  static constexpr char32_t kFirst = 0x2FF0;
  static constexpr char32_t kLast = 0x2FFB;

  static bool IsOperator(char32_t cp) { return cp >= kFirst && cp <= kLast; }

  // Throws Error(kFormat) if `cp` is not an IDC.
  explicit IdsOperator(char32_t cp);

  char32_t codepoint() const { return codepoint_; }
  int arity() const { return Arity(codepoint_); }

  static int Arity(char32_t cp) { return (cp == 0x2FF2 || cp == 0x2FF3) ? 3 : 2; }

  bool operator==(const IdsOperator&) const = default;

 private:
  char32_t codepoint_;
};

// Prefix-order token sequence. A token is an operator iff it lies in the IDC
// range; every other codepoint (including placeholders such as ① for
// unencoded components) is an opaque radical leaf.
using GeoDSequence = std::u32string;

class IdsTree {
 public:
  static IdsTree Leaf(char32_t radical);
  // Throws Error(kFormat) if the child count differs from the arity.
  static IdsTree Op(IdsOperator op, std::vector<IdsTree> children);

  bool is_leaf() const { return children_.empty(); }
  // Radical codepoint for leaves, operator codepoint for internal nodes.
  char32_t symbol() const { return symbol_; }
  IdsOperator op() const { return IdsOperator(symbol_); }
  const std::vector<IdsTree>& children() const { return children_; }

  size_t LeafCount() const;
  size_t OperatorCount() const;
  size_t Depth() const;

  bool operator==(const IdsTree&) const = default;

 private:
  IdsTree(char32_t symbol, std::vector<IdsTree> children)
      : symbol_(symbol), children_(std::move(children)) {}

  char32_t symbol_;
  std::vector<IdsTree> children_;
};

// Parses the prefix grammar  IDS := leaf | Op2 IDS IDS | Op3 IDS IDS IDS.
// Errors: kEmptyInput, kTruncatedSequence, kTrailingTokens.
IdsTree ParseIds(std::u32string_view text);
IdsTree ParseIds(std::string_view utf8);

GeoDSequence Flatten(const IdsTree& tree);

// Inverse of Flatten. Errors: kInvalidPrefix.
IdsTree Reconstruct(const GeoDSequence& seq);

// Needed-token counter starts at 1; an operator adds arity-1, a leaf
// subtracts 1. Valid iff the counter first reaches 0 at the last token.
bool IsValidPrefix(const GeoDSequence& seq);

// Codepoint concatenation of the tokens (an IDS string).
std::string Serialize(const GeoDSequence& seq);
// Tokens joined by single spaces, e.g. "⿰ 忄 ⿱ 耳 ⿰ 耳 耳".
std::string FormatTokens(const GeoDSequence& seq);

size_t CountLeaves(const GeoDSequence& seq);

using DecompositionTable = std::unordered_map<char32_t, GeoDSequence>;

// Replaces every leaf outside `terminals` that has a table entry by its
// decomposition, recursively. An entry that maps a radical to itself marks
// an atomic component. Errors: kCyclicDecomposition.
IdsTree ExpandToGranularity(const IdsTree& tree,
                            const DecompositionTable& table,
                            const std::set<char32_t>& terminals);

// Every non-operator symbol met while fully expanding `seq`, at any level.
// Errors: kCyclicDecomposition.
std::set<char32_t> ExpansionComponents(const GeoDSequence& seq,
                                       const DecompositionTable& table);

// Components that occur in the full expansion of at least `min_entries`
// sequences of the corpus.
std::set<char32_t> FrequentComponents(const std::vector<GeoDSequence>& corpus,
                                      const DecompositionTable& table,
                                      size_t min_entries);

// Dense indices over an ordered radical set, plus a trailing UNK slot.
class RadicalInventory {
 public:
  RadicalInventory() = default;
  explicit RadicalInventory(std::vector<char32_t> radicals);

  // Radicals that occur in at least `min_entries` of the given sequences,
  // ordered by codepoint.
  static RadicalInventory FromCorpus(const std::vector<GeoDSequence>& corpus,
                                     size_t min_entries);

  size_t size() const { return radicals_.size(); }
  size_t unk_index() const { return radicals_.size(); }
  const std::vector<char32_t>& radicals() const { return radicals_; }
  bool Contains(char32_t cp) const { return index_.count(cp) != 0; }
  // Index of `cp`, or unk_index() when absent.
  size_t IndexOf(char32_t cp) const;

 private:
  std::vector<char32_t> radicals_;
  std::unordered_map<char32_t, size_t> index_;
};

struct BoRVector {
  std::vector<int> counts;  // one slot per inventory radical
  int unk = 0;

  int Total() const;
  bool operator==(const BoRVector&) const = default;
};

BoRVector ToBor(const GeoDSequence& seq, const RadicalInventory& inventory);

// One decomposition per logograph, loaded from a CHISE/cjkvi style file:
//   U+XXXX<TAB>char<TAB>ids[<TAB>alternative ids...]
// Trailing region tags such as "[GTJ]" are stripped and the first listed
// alternative is used. Lines starting with '#' or ';' are comments.
class IdsDatabase {
 public:
  static IdsDatabase Load(const std::string& path);
  static IdsDatabase FromLines(std::string_view text);

  const GeoDSequence* Find(char32_t logograph) const;
  size_t size() const { return entries_.size(); }
  const DecompositionTable& table() const { return entries_; }
  // Raw IDS text exactly as listed (tag stripped) keyed by logograph.
  const std::map<char32_t, std::u32string>& raw() const { return raw_; }
  size_t malformed_lines() const { return malformed_lines_; }

 private:
  DecompositionTable entries_;
  std::map<char32_t, std::u32string> raw_;
  size_t malformed_lines_ = 0;
};

}  // namespace hanphon::ids

#endif  // HANPHON_IDS_IDS_H_
