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

#include "hanphon/ids/ids.h"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_set>
#include <utility>

#include "hanphon/common/error.h"
#include "hanphon/common/utf8.h"

namespace hanphon::ids {

IdsOperator::IdsOperator(char32_t cp) : codepoint_(cp) {
  if (!IsOperator(cp)) {
    throw Error(ErrorCode::kFormat,
                CodepointLabel(cp) + " is not an ideographic description "
                                     "character");
  }
}

IdsTree IdsTree::Leaf(char32_t radical) {
  if (IdsOperator::IsOperator(radical)) {
    throw Error(ErrorCode::kFormat, "operator used as a leaf");
  }
  return IdsTree(radical, {});
}

IdsTree IdsTree::Op(IdsOperator op, std::vector<IdsTree> children) {
  if (static_cast<int>(children.size()) != op.arity()) {
    throw Error(ErrorCode::kFormat,
                "operator " + CodepointLabel(op.codepoint()) + " expects " +
                    std::to_string(op.arity()) + " children, got " +
                    std::to_string(children.size()));
  }
  return IdsTree(op.codepoint(), std::move(children));
}

size_t IdsTree::LeafCount() const {
  if (is_leaf()) return 1;
  size_t n = 0;
  for (const auto& c : children_) n += c.LeafCount();
  return n;
}

size_t IdsTree::OperatorCount() const {
  if (is_leaf()) return 0;
  size_t n = 1;
  for (const auto& c : children_) n += c.OperatorCount();
  return n;
}

size_t IdsTree::Depth() const {
  size_t d = 0;
  for (const auto& c : children_) d = std::max(d, c.Depth());
  return is_leaf() ? 0 : d + 1;
}

namespace {

// Recursive descent over the token stream. `pos` is advanced past the
// subtree that was read.
IdsTree ParseAt(std::u32string_view text, size_t& pos) {
  if (pos >= text.size()) {
    throw Error(ErrorCode::kTruncatedSequence,
                "operator lacks operands in '" + EncodeUtf8(text) + "'");
  }
  const char32_t cp = text[pos++];
  if (!IdsOperator::IsOperator(cp)) return IdsTree::Leaf(cp);
  IdsOperator op(cp);
  std::vector<IdsTree> children;
  children.reserve(op.arity());
  for (int i = 0; i < op.arity(); ++i) children.push_back(ParseAt(text, pos));
  return IdsTree::Op(op, std::move(children));
}

void FlattenInto(const IdsTree& tree, GeoDSequence& out) {
  out.push_back(tree.symbol());
  for (const auto& c : tree.children()) FlattenInto(c, out);
}

}  // namespace

IdsTree ParseIds(std::u32string_view text) {
  if (text.empty()) throw Error(ErrorCode::kEmptyInput, "empty IDS string");
  size_t pos = 0;
  IdsTree tree = ParseAt(text, pos);
  if (pos != text.size()) {
    throw Error(ErrorCode::kTrailingTokens,
                std::to_string(text.size() - pos) +
                    " token(s) after a complete parse of '" +
                    EncodeUtf8(text) + "'");
  }
  return tree;
}

IdsTree ParseIds(std::string_view utf8) { return ParseIds(DecodeUtf8(utf8)); }

GeoDSequence Flatten(const IdsTree& tree) {
  GeoDSequence out;
  FlattenInto(tree, out);
  return out;
}

bool IsValidPrefix(const GeoDSequence& seq) {
  long needed = 1;
  for (size_t i = 0; i < seq.size(); ++i) {
    if (needed <= 0) return false;
    needed += IdsOperator::IsOperator(seq[i])
                  ? IdsOperator::Arity(seq[i]) - 1
                  : -1;
  }
  return !seq.empty() && needed == 0;
}

IdsTree Reconstruct(const GeoDSequence& seq) {
  if (!IsValidPrefix(seq)) {
    throw Error(ErrorCode::kInvalidPrefix,
                "'" + FormatTokens(seq) + "' is not a complete prefix sequence");
  }
  size_t pos = 0;
  return ParseAt(seq, pos);
}

std::string Serialize(const GeoDSequence& seq) { return EncodeUtf8(seq); }

std::string FormatTokens(const GeoDSequence& seq) {
  std::string out;
  for (size_t i = 0; i < seq.size(); ++i) {
    if (i) out.push_back(' ');
    out += EncodeUtf8(seq[i]);
  }
  return out;
}

size_t CountLeaves(const GeoDSequence& seq) {
  return static_cast<size_t>(
      std::count_if(seq.begin(), seq.end(),
                    [](char32_t cp) { return !IdsOperator::IsOperator(cp); }));
}

namespace {

IdsTree ExpandNode(const IdsTree& node, const DecompositionTable& table,
                   const std::set<char32_t>& terminals,
                   std::vector<char32_t>& stack) {
  if (!node.is_leaf()) {
    std::vector<IdsTree> children;
    children.reserve(node.children().size());
    for (const auto& c : node.children()) {
      children.push_back(ExpandNode(c, table, terminals, stack));
    }
    return IdsTree::Op(node.op(), std::move(children));
  }
  const char32_t radical = node.symbol();
  if (terminals.count(radical)) return node;
  auto it = table.find(radical);
  if (it == table.end()) return node;
  const GeoDSequence& decomposition = it->second;
  if (decomposition.size() == 1 && decomposition[0] == radical) return node;
  if (std::find(stack.begin(), stack.end(), radical) != stack.end()) {
    throw Error(ErrorCode::kCyclicDecomposition,
                "decomposition of " + CodepointLabel(radical) +
                    " refers back to itself");
  }
  stack.push_back(radical);
  IdsTree expanded =
      ExpandNode(Reconstruct(decomposition), table, terminals, stack);
  stack.pop_back();
  return expanded;
}

}  // namespace

IdsTree ExpandToGranularity(const IdsTree& tree,
                            const DecompositionTable& table,
                            const std::set<char32_t>& terminals) {
  std::vector<char32_t> stack;
  return ExpandNode(tree, table, terminals, stack);
}

namespace {

void CollectComponents(const GeoDSequence& seq, const DecompositionTable& table,
                       std::vector<char32_t>& stack, std::set<char32_t>& out) {
  for (char32_t cp : seq) {
    if (IdsOperator::IsOperator(cp)) continue;
    out.insert(cp);
    auto it = table.find(cp);
    if (it == table.end()) continue;
    if (it->second.size() == 1 && it->second[0] == cp) continue;
    if (std::find(stack.begin(), stack.end(), cp) != stack.end()) {
      throw Error(ErrorCode::kCyclicDecomposition,
                  "decomposition of " + CodepointLabel(cp) + " refers back to itself");
    }
    stack.push_back(cp);
    CollectComponents(it->second, table, stack, out);
    stack.pop_back();
  }
}

}  // namespace

std::set<char32_t> ExpansionComponents(const GeoDSequence& seq,
                                       const DecompositionTable& table) {
  std::set<char32_t> out;
  std::vector<char32_t> stack;
  CollectComponents(seq, table, stack, out);
  return out;
}

std::set<char32_t> FrequentComponents(const std::vector<GeoDSequence>& corpus,
                                      const DecompositionTable& table,
                                      size_t min_entries) {
  std::map<char32_t, size_t> counts;
  for (const auto& seq : corpus) {
    for (char32_t cp : ExpansionComponents(seq, table)) ++counts[cp];
  }
  std::set<char32_t> out;
  for (const auto& [cp, n] : counts) {
    if (n >= min_entries) out.insert(cp);
  }
  return out;
}

RadicalInventory::RadicalInventory(std::vector<char32_t> radicals)
    : radicals_(std::move(radicals)) {
  for (size_t i = 0; i < radicals_.size(); ++i) {
    if (!index_.emplace(radicals_[i], i).second) {
      throw Error(ErrorCode::kFormat, "duplicate radical " +
                                          CodepointLabel(radicals_[i]) +
                                          " in inventory");
    }
  }
}

RadicalInventory RadicalInventory::FromCorpus(
    const std::vector<GeoDSequence>& corpus, size_t min_entries) {
  std::map<char32_t, size_t> entry_counts;
  for (const auto& seq : corpus) {
    std::unordered_set<char32_t> seen;
    for (char32_t cp : seq) {
      if (!IdsOperator::IsOperator(cp) && seen.insert(cp).second) {
        ++entry_counts[cp];
      }
    }
  }
  std::vector<char32_t> radicals;
  for (const auto& [cp, n] : entry_counts) {
    if (n >= min_entries) radicals.push_back(cp);
  }
  return RadicalInventory(std::move(radicals));
}

size_t RadicalInventory::IndexOf(char32_t cp) const {
  auto it = index_.find(cp);
  return it == index_.end() ? unk_index() : it->second;
}

int BoRVector::Total() const {
  int total = unk;
  for (int c : counts) total += c;
  return total;
}

BoRVector ToBor(const GeoDSequence& seq, const RadicalInventory& inventory) {
  BoRVector bor;
  bor.counts.assign(inventory.size(), 0);
  for (char32_t cp : seq) {
    if (IdsOperator::IsOperator(cp)) continue;
    const size_t idx = inventory.IndexOf(cp);
    if (idx == inventory.unk_index()) {
      ++bor.unk;
    } else {
      ++bor.counts[idx];
    }
  }
  return bor;
}

namespace {

std::u32string StripRegionTag(std::u32string ids) {
  if (!ids.empty() && ids.back() == U']') {
    const size_t open = ids.rfind(U'[');
    if (open != std::u32string::npos) ids.erase(open);
  }
  return ids;
}

}  // namespace

IdsDatabase IdsDatabase::FromLines(std::string_view text) {
  IdsDatabase db;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, '\t')) fields.push_back(field);
    if (fields.size() < 3) {
      ++db.malformed_lines_;
      continue;
    }
    try {
      const char32_t cp = ParseCodepointLabel(fields[0]);
      std::u32string ids = StripRegionTag(DecodeUtf8(fields[2]));
      if (ids.empty()) {
        ++db.malformed_lines_;
        continue;
      }
      db.raw_[cp] = ids;
      if (IsValidPrefix(ids)) db.entries_[cp] = std::move(ids);
    } catch (const Error&) {
      ++db.malformed_lines_;
    }
  }
  return db;
}

IdsDatabase IdsDatabase::Load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open IDS file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return FromLines(buf.str());
}

const GeoDSequence* IdsDatabase::Find(char32_t logograph) const {
  auto it = entries_.find(logograph);
  return it == entries_.end() ? nullptr : &it->second;
}

}  // namespace hanphon::ids
