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

#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tba/bool_term.hpp"

namespace tba::fol {

enum class SymbolKind { kFunction, kRelation };

// Constants are 0-ary function symbols.
struct Symbol {
  std::string name;
  SymbolKind kind = SymbolKind::kRelation;
  int arity = 0;

  friend bool operator==(const Symbol&, const Symbol&) = default;
};

class Signature {
 public:
  void add_function(std::string name, int arity);
  void add_constant(std::string name) { add_function(std::move(name), 0); }
  void add_relation(std::string name, int arity);

  const Symbol* find(std::string_view name) const;
  // Declaration order.
  const std::vector<Symbol>& symbols() const { return symbols_; }
  // Name order; this is the order letter families appear in canonical order.
  std::vector<Symbol> sorted_symbols() const;
  bool has_functions() const;

  friend bool operator==(const Signature&, const Signature&) = default;

 private:
  void add(Symbol symbol);
  std::vector<Symbol> symbols_;
};

class FolTerm {
 public:
  enum class Kind { kVariable, kElement, kApply };

  static FolTerm variable(std::string name);
  static FolTerm element(int value);
  static FolTerm apply(std::string symbol, std::vector<FolTerm> args = {});

  Kind kind() const;
  // Variable name or applied symbol.
  const std::string& name() const;
  int element() const;
  std::span<const FolTerm> args() const;

  std::string str() const;

 private:
  struct Node;
  explicit FolTerm(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

class FolFormula {
 public:
  enum class Kind {
    kTrue, kFalse, kEqual, kRelation, kNot, kAnd, kOr, kImplies, kIff, kForall, kExists
  };

  static FolFormula truth(bool value);
  static FolFormula equal(FolTerm left, FolTerm right);
  static FolFormula relation(std::string symbol, std::vector<FolTerm> args);
  static FolFormula negate(FolFormula child);
  static FolFormula all_of(std::vector<FolFormula> children);
  static FolFormula any_of(std::vector<FolFormula> children);
  static FolFormula implies(FolFormula left, FolFormula right);
  static FolFormula iff(FolFormula left, FolFormula right);
  static FolFormula forall(std::string variable, FolFormula body);
  static FolFormula exists(std::string variable, FolFormula body);

  Kind kind() const;
  // Relation symbol for kRelation, bound variable for quantifiers.
  const std::string& name() const;
  // Operands of kEqual / kRelation.
  std::span<const FolTerm> terms() const;
  std::span<const FolFormula> children() const;

  std::set<std::string> free_variables() const;
  std::string str() const;

 private:
  struct Node;
  explicit FolFormula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Throws Error(kArity) for unknown symbols or wrong arity.
void check_formula(const FolFormula& formula, const Signature& signature);

// p-letters F(a1,..,ak,b) and q-letters R(a1,..,ak).
LetterName function_letter(const std::string& symbol, std::span<const int> args, int value);
LetterName relation_letter(const std::string& symbol, std::span<const int> args);

// Every letter derivable from the signature over I_n, canonical order.
std::vector<LetterName> letter_set(const Signature& signature, int n);

// Calls fn(tuple) for all tuples in I_n^k in lexicographic order.
void for_each_tuple(int n, int k, const std::function<void(std::span<const int>)>& fn);

BoolTerm translate_sentence(const FolFormula& sentence, int n, const Signature& signature);

// Exactly-one constraint per function symbol and argument tuple.
std::vector<BoolTerm> functionality_axioms(const Signature& signature, int n);

struct NamedTerm {
  std::string name;
  BoolTerm term;
};

struct NamedFormula {
  std::string name;
  FolFormula formula;
};

struct PropTheory {
  int n = 0;
  Signature signature;
  std::vector<NamedTerm> sentences;
  Assignment assumptions;
  std::vector<LetterName> letters;  // canonical order, all of P

  // Conjunction of every sentence.
  BoolTerm theta() const;
};

PropTheory ground_theory(std::span<const NamedFormula> sentences, int n,
                         const Signature& signature);
PropTheory ground_theory(std::span<const FolFormula> sentences, int n,
                         const Signature& signature);

}  // namespace tba::fol
