// Copyright 2026 The TBA Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace tba {

// A propositional letter: a family name plus an index tuple, e.g. p(0,1) or
// a bare x. Ordering is the canonical letter order used everywhere: family
// name first, then the index tuple componentwise.
struct LetterName {
  std::string family;
  std::vector<int> indices;

  LetterName() = default;
  explicit LetterName(std::string f, std::vector<int> idx = {})
      : family(std::move(f)), indices(std::move(idx)) {}

  std::string str() const;

  friend bool operator==(const LetterName&, const LetterName&) = default;
  friend std::strong_ordering operator<=>(const LetterName& a,
                                          const LetterName& b) {
    if (auto c = a.family <=> b.family; c != 0) return c;
    return a.indices <=> b.indices;
  }
};

// Partial map letter -> bit ("assumptions").
using Assignment = std::map<LetterName, bool>;
// Total map over some declared letter set.
using Valuation = std::map<LetterName, bool>;

enum class BoolOp { kVar, kConst, kNot, kAnd, kOr, kXor, kImplies, kIff };

// Immutable propositional term. Copies share structure.
class BoolTerm {
 public:
  BoolTerm();  // Const(0)

  static BoolTerm var(LetterName name);
  static BoolTerm constant(bool bit);
  static BoolTerm negate(BoolTerm child);
  // n-ary; at least two children.
  static BoolTerm all_of(std::vector<BoolTerm> children);
  static BoolTerm any_of(std::vector<BoolTerm> children);
  static BoolTerm exclusive_or(BoolTerm left, BoolTerm right);
  static BoolTerm implies(BoolTerm left, BoolTerm right);
  static BoolTerm iff(BoolTerm left, BoolTerm right);

  BoolOp op() const;
  bool is_const() const { return op() == BoolOp::kConst; }
  // Valid only for kVar / kConst respectively.
  const LetterName& letter() const;
  bool value() const;
  std::span<const BoolTerm> children() const;

  // Infix rendering, for diagnostics and test failure messages.
  std::string str() const;

  friend bool operator==(const BoolTerm& a, const BoolTerm& b);

 private:
  struct Node;
  explicit BoolTerm(std::shared_ptr<const Node> node);
  static BoolTerm make_node(BoolOp op, std::vector<BoolTerm> children);
  std::shared_ptr<const Node> node_;
};

// Conjunction / disjunction helpers that accept any number of operands:
// zero gives the neutral constant, one gives the operand itself.
BoolTerm conjunction(std::vector<BoolTerm> terms);
BoolTerm disjunction(std::vector<BoolTerm> terms);

// Full constant propagation through every connective plus double-negation
// elimination. The result contains no Const node unless it is a Const.
BoolTerm reduce_constants(const BoolTerm& t);

// Replaces bound letters by constants; performs no reduction.
BoolTerm substitute(const BoolTerm& t, const Assignment& a);

// Two-valued reference semantics. Throws Error(kUnbound) naming the letter
// when v does not bind a letter of t.
bool eval_naive(const BoolTerm& t, const Valuation& v);

// Letters of t in canonical order, without duplicates.
std::vector<LetterName> vars(const BoolTerm& t);

// Node count of the left-associatively binarized tree.
std::size_t node_count(const BoolTerm& t);

// Valuation index convention: letter i (1-based in `order`) takes bit
// (index >> (v - i)) & 1 where v = order.size().
Valuation valuation_at(std::span<const LetterName> order, std::uint64_t index);
std::uint64_t valuation_index(std::span<const LetterName> order,
                              const Valuation& v);

}  // namespace tba
