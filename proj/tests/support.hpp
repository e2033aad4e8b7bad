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

#include <random>
#include <string>
#include <vector>

#include "tba/bool_term.hpp"
#include "tba/fol.hpp"

namespace support {

inline tba::LetterName x(int i) { return tba::LetterName("x", {i}); }

inline std::vector<tba::LetterName> letters(int v) {
  std::vector<tba::LetterName> out;
  for (int i = 0; i < v; ++i) out.push_back(x(i));
  return out;
}

// Random term over x(0..v-1) with every connective; depth counts levels.
inline tba::BoolTerm random_term(std::mt19937& rng, int v, int depth) {
  using tba::BoolTerm;
  std::uniform_int_distribution<int> pick(0, 9);
  std::uniform_int_distribution<int> var(0, v - 1);
  const int choice = depth <= 1 ? pick(rng) % 2 : pick(rng);
  switch (choice) {
    case 0:
    case 1:
      if (pick(rng) == 0) return BoolTerm::constant(pick(rng) % 2);
      return BoolTerm::var(x(var(rng)));
    case 2:
      return BoolTerm::negate(random_term(rng, v, depth - 1));
    case 3:
    case 4: {
      std::vector<BoolTerm> kids;
      const int k = 2 + pick(rng) % 2;
      for (int i = 0; i < k; ++i) kids.push_back(random_term(rng, v, depth - 1));
      return choice == 3 ? BoolTerm::all_of(std::move(kids)) : BoolTerm::any_of(std::move(kids));
    }
    case 5:
    case 6:
      return BoolTerm::exclusive_or(random_term(rng, v, depth - 1), random_term(rng, v, depth - 1));
    case 7:
      return BoolTerm::implies(random_term(rng, v, depth - 1), random_term(rng, v, depth - 1));
    default:
      return BoolTerm::iff(random_term(rng, v, depth - 1), random_term(rng, v, depth - 1));
  }
}

inline tba::fol::FolTerm var(const std::string& name) { return tba::fol::FolTerm::variable(name); }

inline tba::fol::FolFormula le(const std::string& a, const std::string& b) {
  return tba::fol::FolFormula::relation("R", {var(a), var(b)});
}

inline tba::fol::Signature order_signature() {
  tba::fol::Signature sig;
  sig.add_relation("R", 2);
  return sig;
}

// Reflexivity, antisymmetry, transitivity.
inline std::vector<tba::fol::FolFormula> poset_axioms() {
  using F = tba::fol::FolFormula;
  std::vector<F> out;
  out.push_back(F::forall("x", le("x", "x")));
  out.push_back(F::forall(
      "x", F::forall("y", F::implies(F::all_of({le("x", "y"), le("y", "x")}),
                                     F::equal(var("x"), var("y"))))));
  out.push_back(F::forall(
      "x", F::forall("y", F::forall("z", F::implies(F::all_of({le("x", "y"), le("y", "z")}),
                                                    le("x", "z"))))));
  return out;
}

inline std::vector<tba::fol::FolFormula> bounded_poset_axioms() {
  using F = tba::fol::FolFormula;
  auto out = poset_axioms();
  out.push_back(F::exists("x", F::forall("y", le("x", "y"))));
  out.push_back(F::exists("x", F::forall("y", le("y", "x"))));
  return out;
}

// Random sentence over the single binary relation R. Quantifier depth is at
// most max_depth; atoms only mention bound variables or the elements 0, 1.
inline tba::fol::FolFormula random_sentence(std::mt19937& rng, int max_depth,
                                            std::vector<std::string> bound = {}, int size = 6) {
  using F = tba::fol::FolFormula;
  using T = tba::fol::FolTerm;
  std::uniform_int_distribution<int> pick(0, 99);
  auto term = [&]() {
    const int slots = static_cast<int>(bound.size()) + 2;
    const int k = std::uniform_int_distribution<int>(0, slots - 1)(rng);
    if (k < static_cast<int>(bound.size())) return T::variable(bound[k]);
    return T::element(k - static_cast<int>(bound.size()));
  };
  const int depth = static_cast<int>(bound.size());
  const int roll = pick(rng);
  if (depth < max_depth && (roll < 35 || (depth == 0 && roll < 80))) {
    const std::string v = "v" + std::to_string(depth);
    auto inner = bound;
    inner.push_back(v);
    auto body = random_sentence(rng, max_depth, inner, size - 1);
    return roll % 2 ? F::forall(v, body) : F::exists(v, body);
  }
  if (size <= 1 || roll < 55) {
    if (roll % 7 == 0) return F::equal(term(), term());
    if (roll % 23 == 1) return F::truth(roll % 2);
    return F::relation("R", {term(), term()});
  }
  auto sub = [&] { return random_sentence(rng, max_depth, bound, size - 1); };
  switch (roll % 5) {
    case 0: return F::negate(sub());
    case 1: return F::all_of({sub(), sub()});
    case 2: return F::any_of({sub(), sub()});
    case 3: return F::implies(sub(), sub());
    default: return F::iff(sub(), sub());
  }
}

}  // namespace support
