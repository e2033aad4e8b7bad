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

#include "tba/fol.hpp"

#include <algorithm>
#include <utility>

#include "tba/error.hpp"

namespace tba::fol {

// ---- Signature -------------------------------------------------------------

void Signature::add(Symbol symbol) {
  if (symbol.name.empty()) throw Error(ErrorCode::kUsage, "empty symbol name");
  if (symbol.arity < 0) throw Error(ErrorCode::kArity, "negative arity for " + symbol.name);
  if (find(symbol.name))
    throw Error(ErrorCode::kUsage, "symbol " + symbol.name + " declared twice");
  symbols_.push_back(std::move(symbol));
}

void Signature::add_function(std::string name, int arity) {
  add({std::move(name), SymbolKind::kFunction, arity});
}

void Signature::add_relation(std::string name, int arity) {
  add({std::move(name), SymbolKind::kRelation, arity});
}

const Symbol* Signature::find(std::string_view name) const {
  for (const auto& s : symbols_)
    if (s.name == name) return &s;
  return nullptr;
}

std::vector<Symbol> Signature::sorted_symbols() const {
  std::vector<Symbol> out = symbols_;
  std::sort(out.begin(), out.end(),
            [](const Symbol& a, const Symbol& b) { return a.name < b.name; });
  return out;
}

bool Signature::has_functions() const {
  return std::any_of(symbols_.begin(), symbols_.end(),
                     [](const Symbol& s) { return s.kind == SymbolKind::kFunction; });
}

// ---- Terms and formulas ----------------------------------------------------

struct FolTerm::Node {
  Kind kind;
  std::string name;
  int element = 0;
  std::vector<FolTerm> args;
};

FolTerm FolTerm::variable(std::string name) {
  return FolTerm(std::make_shared<const Node>(Node{Kind::kVariable, std::move(name), 0, {}}));
}

FolTerm FolTerm::element(int value) {
  if (value < 0) throw Error(ErrorCode::kRange, "element names are non-negative");
  return FolTerm(std::make_shared<const Node>(Node{Kind::kElement, {}, value, {}}));
}

FolTerm FolTerm::apply(std::string symbol, std::vector<FolTerm> args) {
  return FolTerm(
      std::make_shared<const Node>(Node{Kind::kApply, std::move(symbol), 0, std::move(args)}));
}

FolTerm::Kind FolTerm::kind() const { return node_->kind; }
const std::string& FolTerm::name() const { return node_->name; }
int FolTerm::element() const { return node_->element; }
std::span<const FolTerm> FolTerm::args() const { return node_->args; }

std::string FolTerm::str() const {
  switch (kind()) {
    case Kind::kVariable:
      return name();
    case Kind::kElement:
      return std::to_string(element());
    case Kind::kApply: {
      if (args().empty()) return name();
      std::string out = name() + "(";
      for (std::size_t i = 0; i < args().size(); ++i) {
        if (i) out += ',';
        out += args()[i].str();
      }
      return out + ")";
    }
  }
  return {};
}

struct FolFormula::Node {
  Kind kind;
  std::string name;
  std::vector<FolTerm> terms;
  std::vector<FolFormula> children;
};

FolFormula FolFormula::truth(bool value) {
  return FolFormula(std::make_shared<const Node>(Node{value ? Kind::kTrue : Kind::kFalse, {}, {}, {}}));
}

FolFormula FolFormula::equal(FolTerm left, FolTerm right) {
  return FolFormula(std::make_shared<const Node>(
      Node{Kind::kEqual, {}, {std::move(left), std::move(right)}, {}}));
}

FolFormula FolFormula::relation(std::string symbol, std::vector<FolTerm> args) {
  return FolFormula(
      std::make_shared<const Node>(Node{Kind::kRelation, std::move(symbol), std::move(args), {}}));
}

FolFormula FolFormula::negate(FolFormula child) {
  return FolFormula(std::make_shared<const Node>(Node{Kind::kNot, {}, {}, {std::move(child)}}));
}

FolFormula FolFormula::all_of(std::vector<FolFormula> children) {
  if (children.empty()) return truth(true);
  if (children.size() == 1) return std::move(children.front());
  return FolFormula(std::make_shared<const Node>(Node{Kind::kAnd, {}, {}, std::move(children)}));
}

FolFormula FolFormula::any_of(std::vector<FolFormula> children) {
  if (children.empty()) return truth(false);
  if (children.size() == 1) return std::move(children.front());
  return FolFormula(std::make_shared<const Node>(Node{Kind::kOr, {}, {}, std::move(children)}));
}

FolFormula FolFormula::implies(FolFormula left, FolFormula right) {
  return FolFormula(std::make_shared<const Node>(
      Node{Kind::kImplies, {}, {}, {std::move(left), std::move(right)}}));
}

FolFormula FolFormula::iff(FolFormula left, FolFormula right) {
  return FolFormula(std::make_shared<const Node>(
      Node{Kind::kIff, {}, {}, {std::move(left), std::move(right)}}));
}

FolFormula FolFormula::forall(std::string variable, FolFormula body) {
  return FolFormula(std::make_shared<const Node>(
      Node{Kind::kForall, std::move(variable), {}, {std::move(body)}}));
}

FolFormula FolFormula::exists(std::string variable, FolFormula body) {
  return FolFormula(std::make_shared<const Node>(
      Node{Kind::kExists, std::move(variable), {}, {std::move(body)}}));
}

FolFormula::Kind FolFormula::kind() const { return node_->kind; }
const std::string& FolFormula::name() const { return node_->name; }
std::span<const FolTerm> FolFormula::terms() const { return node_->terms; }
std::span<const FolFormula> FolFormula::children() const { return node_->children; }

namespace {

void term_variables(const FolTerm& t, std::set<std::string>& out) {
  if (t.kind() == FolTerm::Kind::kVariable) out.insert(t.name());
  for (const auto& a : t.args()) term_variables(a, out);
}

}  // namespace

std::set<std::string> FolFormula::free_variables() const {
  std::set<std::string> out;
  for (const auto& t : terms()) term_variables(t, out);
  for (const auto& c : children()) {
    auto inner = c.free_variables();
    out.insert(inner.begin(), inner.end());
  }
  if (kind() == Kind::kForall || kind() == Kind::kExists) out.erase(name());
  return out;
}

std::string FolFormula::str() const {
  auto join = [&](const char* sep) {
    std::string out = "(";
    for (std::size_t i = 0; i < children().size(); ++i) {
      if (i) out += sep;
      out += children()[i].str();
    }
    return out + ")";
  };
  switch (kind()) {
    case Kind::kTrue: return "true";
    case Kind::kFalse: return "false";
    case Kind::kEqual: return terms()[0].str() + " = " + terms()[1].str();
    case Kind::kRelation: return FolTerm::apply(name(), {terms().begin(), terms().end()}).str();
    case Kind::kNot: return "~" + children()[0].str();
    case Kind::kAnd: return join(" & ");
    case Kind::kOr: return join(" | ");
    case Kind::kImplies: return join(" -> ");
    case Kind::kIff: return join(" <-> ");
    case Kind::kForall: return "A[" + name() + "] " + children()[0].str();
    case Kind::kExists: return "E[" + name() + "] " + children()[0].str();
  }
  return {};
}

namespace {

void check_term(const FolTerm& t, const Signature& sig) {
  if (t.kind() != FolTerm::Kind::kApply) return;
  const Symbol* s = sig.find(t.name());
  if (!s || s->kind != SymbolKind::kFunction)
    throw Error(ErrorCode::kArity, "unknown function symbol " + t.name());
  if (static_cast<int>(t.args().size()) != s->arity)
    throw Error(ErrorCode::kArity, "function " + t.name() + " expects " +
                                       std::to_string(s->arity) + " arguments, got " +
                                       std::to_string(t.args().size()));
  for (const auto& a : t.args()) check_term(a, sig);
}

}  // namespace

void check_formula(const FolFormula& f, const Signature& sig) {
  if (f.kind() == FolFormula::Kind::kRelation) {
    const Symbol* s = sig.find(f.name());
    if (!s || s->kind != SymbolKind::kRelation)
      throw Error(ErrorCode::kArity, "unknown relation symbol " + f.name());
    if (static_cast<int>(f.terms().size()) != s->arity)
      throw Error(ErrorCode::kArity, "relation " + f.name() + " expects " +
                                         std::to_string(s->arity) + " arguments, got " +
                                         std::to_string(f.terms().size()));
  }
  for (const auto& t : f.terms()) check_term(t, sig);
  for (const auto& c : f.children()) check_formula(c, sig);
}

// ---- Letters ---------------------------------------------------------------

LetterName function_letter(const std::string& symbol, std::span<const int> args, int value) {
  std::vector<int> idx(args.begin(), args.end());
  idx.push_back(value);
  return LetterName(symbol, std::move(idx));
}

LetterName relation_letter(const std::string& symbol, std::span<const int> args) {
  return LetterName(symbol, std::vector<int>(args.begin(), args.end()));
}

void for_each_tuple(int n, int k, const std::function<void(std::span<const int>)>& fn) {
  if (k == 0) {
    fn({});
    return;
  }
  if (n <= 0) return;
  std::vector<int> tuple(k, 0);
  while (true) {
    fn(tuple);
    int pos = k - 1;
    while (pos >= 0 && ++tuple[pos] == n) tuple[pos--] = 0;
    if (pos < 0) return;
  }
}

std::vector<LetterName> letter_set(const Signature& sig, int n) {
  std::vector<LetterName> out;
  for (const auto& s : sig.sorted_symbols()) {
    const int k = s.kind == SymbolKind::kFunction ? s.arity + 1 : s.arity;
    for_each_tuple(n, k, [&](std::span<const int> t) { out.emplace_back(s.name, std::vector<int>(t.begin(), t.end())); });
  }
  return out;
}

// ---- Translation -----------------------------------------------------------

namespace {

class Translator {
 public:
  Translator(int n, const Signature& sig) : n_(n), sig_(sig) {}

  BoolTerm formula(const FolFormula& f) {
    using K = FolFormula::Kind;
    switch (f.kind()) {
      case K::kTrue:
        return BoolTerm::constant(true);
      case K::kFalse:
        return BoolTerm::constant(false);
      case K::kEqual:
        return equality(f.terms()[0], f.terms()[1]);
      case K::kRelation:
        return relation(f);
      case K::kNot:
        return BoolTerm::negate(formula(f.children()[0]));
      case K::kAnd:
      case K::kOr: {
        std::vector<BoolTerm> kids;
        for (const auto& c : f.children()) kids.push_back(formula(c));
        return f.kind() == K::kAnd ? conjunction(std::move(kids))
                                   : disjunction(std::move(kids));
      }
      case K::kImplies:
        return disjunction({BoolTerm::negate(formula(f.children()[0])),
                            formula(f.children()[1])});
      case K::kIff: {
        BoolTerm a = formula(f.children()[0]);
        BoolTerm b = formula(f.children()[1]);
        return conjunction({disjunction({BoolTerm::negate(a), b}),
                            disjunction({BoolTerm::negate(b), a})});
      }
      case K::kForall:
      case K::kExists: {
        std::vector<BoolTerm> parts;
        parts.reserve(n_);
        for (int a = 0; a < n_; ++a) {
          env_.emplace_back(f.name(), a);
          parts.push_back(formula(f.children()[0]));
          env_.pop_back();
        }
        return f.kind() == K::kForall ? conjunction(std::move(parts))
                                      : disjunction(std::move(parts));
      }
    }
    return BoolTerm::constant(false);
  }

 private:
  // Element denoted by a name or bound variable; nullopt for compound terms.
  std::optional<int> resolve(const FolTerm& t) const {
    switch (t.kind()) {
      case FolTerm::Kind::kElement:
        if (t.element() >= n_)
          throw Error(ErrorCode::kRange, "element " + std::to_string(t.element()) +
                                             " outside I_" + std::to_string(n_));
        return t.element();
      case FolTerm::Kind::kVariable:
        for (auto it = env_.rbegin(); it != env_.rend(); ++it)
          if (it->first == t.name()) return it->second;
        throw Error(ErrorCode::kFreeVariable, "free variable " + t.name() + " in sentence");
      case FolTerm::Kind::kApply:
        return std::nullopt;
    }
    return std::nullopt;
  }

  const Symbol& symbol(const std::string& name, SymbolKind kind, std::size_t args) const {
    const Symbol* s = sig_.find(name);
    if (!s || s->kind != kind)
      throw Error(ErrorCode::kArity, std::string("unknown ") +
                                         (kind == SymbolKind::kFunction ? "function" : "relation") +
                                         " symbol " + name);
    if (static_cast<std::size_t>(s->arity) != args)
      throw Error(ErrorCode::kArity, "symbol " + name + " expects " + std::to_string(s->arity) +
                                         " arguments, got " + std::to_string(args));
    return *s;
  }

  // ⋀ over candidate argument tuples of (⋀ (t_i = b_i)* ⇒ head(b̄)). Positions
  // holding an element or bound variable have a single candidate; the
  // conjuncts for other candidates reduce to 1 and are omitted.
  BoolTerm over_arguments(std::span<const FolTerm> args,
                          const std::function<BoolTerm(std::span<const int>)>& head) {
    const std::size_t k = args.size();
    std::vector<std::optional<int>> fixed(k);
    std::vector<std::size_t> open;
    for (std::size_t i = 0; i < k; ++i) {
      fixed[i] = resolve(args[i]);
      if (!fixed[i]) open.push_back(i);
    }
    std::vector<int> tuple(k, 0);
    for (std::size_t i = 0; i < k; ++i)
      if (fixed[i]) tuple[i] = *fixed[i];
    if (open.empty()) return head(tuple);
    std::vector<BoolTerm> parts;
    for_each_tuple(n_, static_cast<int>(open.size()), [&](std::span<const int> choice) {
      std::vector<BoolTerm> premises;
      for (std::size_t j = 0; j < open.size(); ++j) {
        tuple[open[j]] = choice[j];
        premises.push_back(equals_value(args[open[j]], choice[j]));
      }
      parts.push_back(BoolTerm::implies(conjunction(std::move(premises)), head(tuple)));
    });
    return conjunction(std::move(parts));
  }

  // (t = b)*
  BoolTerm equals_value(const FolTerm& t, int b) {
    if (auto r = resolve(t)) return BoolTerm::constant(*r == b);
    const Symbol& s = symbol(t.name(), SymbolKind::kFunction, t.args().size());
    return over_arguments(t.args(), [&](std::span<const int> tuple) {
      return BoolTerm::var(function_letter(s.name, tuple, b));
    });
  }

  BoolTerm equality(const FolTerm& left, const FolTerm& right) {
    const auto l = resolve(left);
    const auto r = resolve(right);
    if (l && r) return BoolTerm::constant(*l == *r);
    if (l) return equals_value(right, *l);
    if (r) return equals_value(left, *r);
    std::vector<BoolTerm> parts;
    for (int b = 0; b < n_; ++b)
      parts.push_back(BoolTerm::implies(equals_value(left, b), equals_value(right, b)));
    return conjunction(std::move(parts));
  }

  BoolTerm relation(const FolFormula& f) {
    const Symbol& s = symbol(f.name(), SymbolKind::kRelation, f.terms().size());
    return over_arguments(f.terms(), [&](std::span<const int> tuple) {
      return BoolTerm::var(relation_letter(s.name, tuple));
    });
  }

  int n_;
  const Signature& sig_;
  std::vector<std::pair<std::string, int>> env_;
};

}  // namespace

BoolTerm translate_sentence(const FolFormula& sentence, int n, const Signature& signature) {
  if (n < 1) throw Error(ErrorCode::kRange, "domain size must be at least 1");
  check_formula(sentence, signature);
  if (auto free = sentence.free_variables(); !free.empty())
    throw Error(ErrorCode::kFreeVariable, "free variable " + *free.begin() + " in sentence");
  return Translator(n, signature).formula(sentence);
}

std::vector<BoolTerm> functionality_axioms(const Signature& signature, int n) {
  std::vector<BoolTerm> out;
  for (const auto& s : signature.sorted_symbols()) {
    if (s.kind != SymbolKind::kFunction) continue;
    for_each_tuple(n, s.arity, [&](std::span<const int> args) {
      std::vector<BoolTerm> some;
      std::vector<BoolTerm> parts;
      for (int b = 0; b < n; ++b) some.push_back(BoolTerm::var(function_letter(s.name, args, b)));
      parts.push_back(disjunction(some));
      for (int b = 0; b < n; ++b)
        for (int c = b + 1; c < n; ++c)
          parts.push_back(BoolTerm::negate(BoolTerm::all_of({some[b], some[c]})));
      out.push_back(conjunction(std::move(parts)));
    });
  }
  return out;
}

BoolTerm PropTheory::theta() const {
  std::vector<BoolTerm> parts;
  parts.reserve(sentences.size());
  for (const auto& s : sentences) parts.push_back(s.term);
  return conjunction(std::move(parts));
}

PropTheory ground_theory(std::span<const NamedFormula> sentences, int n,
                         const Signature& signature) {
  PropTheory theory;
  theory.n = n;
  theory.signature = signature;
  for (const auto& s : sentences)
    theory.sentences.push_back({s.name, translate_sentence(s.formula, n, signature)});
  std::size_t i = 0;
  for (auto& axiom : functionality_axioms(signature, n))
    theory.sentences.push_back({"functionality." + std::to_string(++i), std::move(axiom)});
  theory.letters = letter_set(signature, n);
  return theory;
}

PropTheory ground_theory(std::span<const FolFormula> sentences, int n,
                         const Signature& signature) {
  std::vector<NamedFormula> named;
  for (std::size_t i = 0; i < sentences.size(); ++i)
    named.push_back({"axiom." + std::to_string(i + 1), sentences[i]});
  return ground_theory(std::span<const NamedFormula>(named), n, signature);
}

}  // namespace tba::fol
