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

#include "tba/bool_term.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "tba/error.hpp"

namespace tba {

struct BoolTerm::Node {
  BoolOp op;
  bool bit = false;
  LetterName letter;
  std::vector<BoolTerm> children;
};

std::string LetterName::str() const {
  if (indices.empty()) return family;
  std::string out = family + "(";
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(indices[i]);
  }
  out += ')';
  return out;
}

BoolTerm::BoolTerm() : BoolTerm(constant(false)) {}

BoolTerm::BoolTerm(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

BoolTerm BoolTerm::var(LetterName name) {
  auto n = std::make_shared<Node>();
  n->op = BoolOp::kVar;
  n->letter = std::move(name);
  return BoolTerm(std::move(n));
}

BoolTerm BoolTerm::constant(bool bit) {
  static const auto kZero = std::make_shared<const Node>(Node{BoolOp::kConst, false, {}, {}});
  static const auto kOne = std::make_shared<const Node>(Node{BoolOp::kConst, true, {}, {}});
  return BoolTerm(bit ? kOne : kZero);
}

BoolTerm BoolTerm::negate(BoolTerm child) {
  return make_node(BoolOp::kNot, {std::move(child)});
}

BoolTerm BoolTerm::make_node(BoolOp op, std::vector<BoolTerm> children) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->children = std::move(children);
  return BoolTerm(std::move(n));
}

BoolTerm BoolTerm::all_of(std::vector<BoolTerm> children) {
  if (children.size() < 2)
    throw Error(ErrorCode::kArity, "And/Or nodes need at least two children");
  return make_node(BoolOp::kAnd, std::move(children));
}

BoolTerm BoolTerm::any_of(std::vector<BoolTerm> children) {
  if (children.size() < 2)
    throw Error(ErrorCode::kArity, "And/Or nodes need at least two children");
  return make_node(BoolOp::kOr, std::move(children));
}

BoolTerm BoolTerm::exclusive_or(BoolTerm l, BoolTerm r) {
  return make_node(BoolOp::kXor, {std::move(l), std::move(r)});
}
BoolTerm BoolTerm::implies(BoolTerm l, BoolTerm r) {
  return make_node(BoolOp::kImplies, {std::move(l), std::move(r)});
}
BoolTerm BoolTerm::iff(BoolTerm l, BoolTerm r) {
  return make_node(BoolOp::kIff, {std::move(l), std::move(r)});
}

BoolOp BoolTerm::op() const { return node_->op; }
const LetterName& BoolTerm::letter() const { return node_->letter; }
bool BoolTerm::value() const { return node_->bit; }
std::span<const BoolTerm> BoolTerm::children() const { return node_->children; }

bool operator==(const BoolTerm& a, const BoolTerm& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.op != y.op) return false;
  switch (x.op) {
    case BoolOp::kConst:
      return x.bit == y.bit;
    case BoolOp::kVar:
      return x.letter == y.letter;
    default:
      return x.children == y.children;
  }
}

namespace {

int precedence(BoolOp op) {
  switch (op) {
    case BoolOp::kIff: return 1;
    case BoolOp::kImplies: return 2;
    case BoolOp::kOr: return 3;
    case BoolOp::kXor: return 4;
    case BoolOp::kAnd: return 5;
    case BoolOp::kNot: return 6;
    default: return 7;
  }
}

const char* symbol(BoolOp op) {
  switch (op) {
    case BoolOp::kIff: return " <-> ";
    case BoolOp::kImplies: return " -> ";
    case BoolOp::kOr: return " | ";
    case BoolOp::kXor: return " ^ ";
    case BoolOp::kAnd: return " & ";
    default: return "";
  }
}

void render(const BoolTerm& t, std::string& out, int parent_prec) {
  const int prec = precedence(t.op());
  const bool paren = prec < parent_prec;
  if (paren) out += '(';
  switch (t.op()) {
    case BoolOp::kConst:
      out += t.value() ? '1' : '0';
      break;
    case BoolOp::kVar:
      out += t.letter().str();
      break;
    case BoolOp::kNot:
      out += '~';
      render(t.children()[0], out, prec);
      break;
    default: {
      auto kids = t.children();
      for (std::size_t i = 0; i < kids.size(); ++i) {
        if (i) out += symbol(t.op());
        // Binary non-associative operators parenthesize both operands.
        render(kids[i], out, prec + 1);
      }
    }
  }
  if (paren) out += ')';
}

}  // namespace

std::string BoolTerm::str() const {
  std::string out;
  render(*this, out, 0);
  return out;
}

BoolTerm conjunction(std::vector<BoolTerm> terms) {
  if (terms.empty()) return BoolTerm::constant(true);
  if (terms.size() == 1) return std::move(terms.front());
  return BoolTerm::all_of(std::move(terms));
}

BoolTerm disjunction(std::vector<BoolTerm> terms) {
  if (terms.empty()) return BoolTerm::constant(false);
  if (terms.size() == 1) return std::move(terms.front());
  return BoolTerm::any_of(std::move(terms));
}

namespace {

// Negation that never produces ~~x or ~const.
BoolTerm negated(const BoolTerm& t) {
  if (t.is_const()) return BoolTerm::constant(!t.value());
  if (t.op() == BoolOp::kNot) return t.children()[0];
  return BoolTerm::negate(t);
}

BoolTerm reduce_nary(const BoolTerm& t, bool absorbing) {
  std::vector<BoolTerm> kept;
  bool changed = false;
  for (const auto& child : t.children()) {
    BoolTerm r = reduce_constants(child);
    if (r.is_const()) {
      if (r.value() == absorbing) return BoolTerm::constant(absorbing);
      changed = true;
      continue;
    }
    if (!(r == child)) changed = true;
    kept.push_back(std::move(r));
  }
  if (!changed) return t;
  return absorbing ? disjunction(std::move(kept)) : conjunction(std::move(kept));
}

}  // namespace

BoolTerm reduce_constants(const BoolTerm& t) {
  switch (t.op()) {
    case BoolOp::kConst:
    case BoolOp::kVar:
      return t;
    case BoolOp::kNot: {
      BoolTerm c = reduce_constants(t.children()[0]);
      return negated(c);
    }
    case BoolOp::kAnd:
      return reduce_nary(t, false);
    case BoolOp::kOr:
      return reduce_nary(t, true);
    default:
      break;
  }
  BoolTerm l = reduce_constants(t.children()[0]);
  BoolTerm r = reduce_constants(t.children()[1]);
  const bool lc = l.is_const();
  const bool rc = r.is_const();
  switch (t.op()) {
    case BoolOp::kXor:
      if (lc && rc) return BoolTerm::constant(l.value() != r.value());
      if (lc) return l.value() ? negated(r) : r;
      if (rc) return r.value() ? negated(l) : l;
      return BoolTerm::exclusive_or(std::move(l), std::move(r));
    case BoolOp::kImplies:
      if (lc) return l.value() ? r : BoolTerm::constant(true);
      if (rc) return r.value() ? BoolTerm::constant(true) : negated(l);
      return BoolTerm::implies(std::move(l), std::move(r));
    case BoolOp::kIff:
      if (lc && rc) return BoolTerm::constant(l.value() == r.value());
      if (lc) return l.value() ? r : negated(r);
      if (rc) return r.value() ? l : negated(l);
      return BoolTerm::iff(std::move(l), std::move(r));
    default:
      return t;
  }
}

BoolTerm substitute(const BoolTerm& t, const Assignment& a) {
  if (a.empty()) return t;
  switch (t.op()) {
    case BoolOp::kConst:
      return t;
    case BoolOp::kVar: {
      auto it = a.find(t.letter());
      return it == a.end() ? t : BoolTerm::constant(it->second);
    }
    case BoolOp::kNot:
      return BoolTerm::negate(substitute(t.children()[0], a));
    case BoolOp::kAnd:
    case BoolOp::kOr: {
      std::vector<BoolTerm> kids;
      kids.reserve(t.children().size());
      for (const auto& c : t.children()) kids.push_back(substitute(c, a));
      return t.op() == BoolOp::kAnd ? BoolTerm::all_of(std::move(kids))
                                    : BoolTerm::any_of(std::move(kids));
    }
    case BoolOp::kXor:
      return BoolTerm::exclusive_or(substitute(t.children()[0], a),
                                    substitute(t.children()[1], a));
    case BoolOp::kImplies:
      return BoolTerm::implies(substitute(t.children()[0], a),
                               substitute(t.children()[1], a));
    case BoolOp::kIff:
      return BoolTerm::iff(substitute(t.children()[0], a),
                           substitute(t.children()[1], a));
  }
  return t;
}

bool eval_naive(const BoolTerm& t, const Valuation& v) {
  switch (t.op()) {
    case BoolOp::kConst:
      return t.value();
    case BoolOp::kVar: {
      auto it = v.find(t.letter());
      if (it == v.end())
        throw Error(ErrorCode::kUnbound,
                    "valuation does not bind letter " + t.letter().str());
      return it->second;
    }
    case BoolOp::kNot:
      return !eval_naive(t.children()[0], v);
    case BoolOp::kAnd:
      for (const auto& c : t.children())
        if (!eval_naive(c, v)) return false;
      return true;
    case BoolOp::kOr:
      for (const auto& c : t.children())
        if (eval_naive(c, v)) return true;
      return false;
    case BoolOp::kXor:
      return eval_naive(t.children()[0], v) != eval_naive(t.children()[1], v);
    case BoolOp::kImplies:
      return !eval_naive(t.children()[0], v) || eval_naive(t.children()[1], v);
    case BoolOp::kIff:
      return eval_naive(t.children()[0], v) == eval_naive(t.children()[1], v);
  }
  return false;
}

namespace {

void collect(const BoolTerm& t, std::set<LetterName>& out) {
  if (t.op() == BoolOp::kVar) {
    out.insert(t.letter());
    return;
  }
  for (const auto& c : t.children()) collect(c, out);
}

}  // namespace

std::vector<LetterName> vars(const BoolTerm& t) {
  std::set<LetterName> seen;
  collect(t, seen);
  return {seen.begin(), seen.end()};
}

std::size_t node_count(const BoolTerm& t) {
  auto kids = t.children();
  if (kids.empty()) return 1;
  std::size_t total = 0;
  for (const auto& c : kids) total += node_count(c);
  // k children fold into k-1 binary nodes; Not contributes one node.
  return total + (kids.size() == 1 ? 1 : kids.size() - 1);
}

Valuation valuation_at(std::span<const LetterName> order, std::uint64_t index) {
  Valuation v;
  const std::size_t n = order.size();
  for (std::size_t i = 0; i < n; ++i)
    v.emplace(order[i], ((index >> (n - 1 - i)) & 1u) != 0);
  return v;
}

std::uint64_t valuation_index(std::span<const LetterName> order,
                              const Valuation& v) {
  std::uint64_t index = 0;
  for (const auto& letter : order) {
    auto it = v.find(letter);
    if (it == v.end())
      throw Error(ErrorCode::kUnbound,
                  "valuation does not bind letter " + letter.str());
    index = (index << 1) | (it->second ? 1u : 0u);
  }
  return index;
}

}  // namespace tba
