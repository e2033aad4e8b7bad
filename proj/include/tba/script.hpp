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

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "tba/bool_term.hpp"

namespace tba::shell {

// Letters referenced by a script, with one arity per family.
class LetterNamespace {
 public:
  // Throws Error(kArity) when the family was seen with another arity.
  void add(const LetterName& letter);
  bool contains(const LetterName& letter) const { return letters_.contains(letter); }
  std::optional<int> arity(const std::string& family) const;
  std::size_t size() const { return letters_.size(); }
  // Canonical order.
  std::vector<LetterName> letters() const { return {letters_.begin(), letters_.end()}; }

 private:
  std::set<LetterName> letters_;
  std::map<std::string, int> arity_;
};

// Integer arithmetic over parameters and bound index variables.
struct IndexExpr {
  enum class Kind { kLiteral, kName, kNegate, kAdd, kSub, kMul, kDiv, kMod };
  Kind kind = Kind::kLiteral;
  std::int64_t value = 0;
  std::string name;
  std::vector<IndexExpr> operands;
};

struct ScriptFormula {
  enum class Kind { kConst, kLetter, kNot, kAnd, kOr, kXor, kImplies, kIff, kForall, kExists };
  Kind kind = Kind::kConst;
  bool value = false;
  // Letter family, or the domain of a quantifier.
  std::string name;
  std::vector<IndexExpr> indices;
  std::vector<std::string> variables;
  std::vector<ScriptFormula> children;
  int line = 0;
  int column = 0;
};

// One `letter: bit` entry, optionally a comprehension `for vars in domain`.
struct AssumptionEntry {
  std::string family;
  std::vector<IndexExpr> indices;
  bool value = false;
  std::vector<std::string> variables;
  std::string domain;
  int line = 0;
  int column = 0;
};

struct AssumptionStep {
  bool reset = true;  // `assumptions =` rather than `assumptions.update(`
  std::vector<AssumptionEntry> entries;
};

struct Script {
  struct Domain {
    std::string name;
    int arity = 1;
    std::vector<std::vector<int>> elements;
  };
  struct Formula {
    std::string name;
    ScriptFormula body;
  };

  std::vector<std::pair<std::string, std::int64_t>> parameters;
  std::vector<Domain> domains;
  std::vector<Formula> formulas;
  std::vector<AssumptionStep> assumptions;

  const Domain* domain(std::string_view name) const;
  std::optional<std::int64_t> parameter(std::string_view name) const;
};

// Throws Error(kParse) with "line L, column C:" for syntax errors, unknown
// identifiers or domains, arity mismatches and non-prenex formulas.
Script parse_script(std::string_view text);

struct Expansion {
  BoolTerm theta;
  std::vector<std::pair<std::string, BoolTerm>> formulas;
  Assignment assumptions;
  LetterNamespace letters;
};

// Throws Error(kRange) when an index evaluates outside the letter domain.
Expansion expand_script(const Script& script);

}  // namespace tba::shell
