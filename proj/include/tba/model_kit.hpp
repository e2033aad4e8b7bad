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

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tba/big_int.hpp"
#include "tba/bool_term.hpp"
#include "tba/fol.hpp"

namespace tba::models {

// Factorial searches (automorphisms, isomorphism, canonical form) refuse
// domains above this size.
inline constexpr int kPermutationGuard = 10;

// Bijection of I_n; composition is (p.compose(q))(i) = p(q(i)).
class Permutation {
 public:
  static Permutation identity(int n);
  explicit Permutation(std::vector<int> image);

  int size() const { return static_cast<int>(image_.size()); }
  int operator()(int i) const { return image_[i]; }
  const std::vector<int>& image() const { return image_; }

  Permutation compose(const Permutation& inner) const;
  Permutation inverse() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> image_;
};

// Finite structure over I_n. Relation tables hold 0/1, function tables hold
// values; both are indexed row-major by the argument tuple.
class LabeledModel {
 public:
  LabeledModel(std::shared_ptr<const fol::Signature> signature, int n);
  LabeledModel(const fol::Signature& signature, int n);

  int size() const { return n_; }
  const fol::Signature& signature() const { return *signature_; }
  const std::shared_ptr<const fol::Signature>& signature_ptr() const { return signature_; }

  bool holds(std::string_view relation, std::span<const int> args) const;
  void set_holds(std::string_view relation, std::span<const int> args, bool value);
  int value(std::string_view function, std::span<const int> args) const;
  void set_value(std::string_view function, std::span<const int> args, int value);

  // Table of the i-th symbol in signature().symbols() order.
  const std::vector<int>& table(std::size_t symbol_index) const { return tables_[symbol_index]; }
  std::vector<int>& table(std::size_t symbol_index) { return tables_[symbol_index]; }

  // Bits of the letters of letter_set(signature, n), canonical order.
  std::vector<std::uint8_t> encode() const;

  friend bool operator==(const LabeledModel& a, const LabeledModel& b);

 private:
  std::size_t symbol_index(std::string_view name, fol::SymbolKind kind) const;
  std::size_t offset(std::size_t symbol, std::span<const int> args) const;

  std::shared_ptr<const fol::Signature> signature_;
  int n_ = 0;
  std::vector<std::vector<int>> tables_;
};

// h(mu). Throws Error(kFunctionality) naming symbol and tuple when mu gives a
// function no value or two values at some tuple.
LabeledModel decode_model(const Valuation& mu, const fol::PropTheory& theory);
LabeledModel decode_model(const Valuation& mu, const fol::Signature& signature, int n);

// mu_A restricted to `order` (a subset of the model's letter set).
Valuation encode_valuation(const LabeledModel& model, std::span<const LetterName> order);

using Environment = std::vector<std::pair<std::string, int>>;

// Tarskian satisfaction with quantifiers over I_n.
bool satisfies(const LabeledModel& model, const fol::FolFormula& formula,
               const Environment& env = {});

// A_pi: R'(i..) iff R(pi(i)..), F'(i..) = pi^-1(F(pi(i)..)), c' = pi^-1(c).
LabeledModel relabel(const LabeledModel& model, const Permutation& pi);

std::vector<Permutation> automorphisms(const LabeledModel& model);
// Some pi with relabel(a, pi) == b.
std::optional<Permutation> is_isomorphic(const LabeledModel& a, const LabeledModel& b);
// Relabeling with the lexicographically least encoding.
LabeledModel canonical_form(const LabeledModel& model);

bool is_absolutely_invariant(const LabeledModel& model, std::span<const int> subset);

// Sum of n!/|Aut(A)| over pairwise non-isomorphic models.
BigInt burnside_labeled_count(std::span<const LabeledModel> unlabeled);

// Row-major tables, one block per symbol.
std::string format_model(const LabeledModel& model);

}  // namespace tba::models
