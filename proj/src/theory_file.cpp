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

#include "tba/theory_file.hpp"

#include <algorithm>
#include <functional>
#include <variant>

#include "lexer.hpp"
#include "tba/error.hpp"

namespace tba::shell {

using count::Orientation;
using detail::fail_at;
using detail::Token;
using detail::TokenCursor;
using detail::TokenKind;
using fol::FolFormula;
using fol::FolTerm;
using fol::SymbolKind;

fol::PropTheory TheoryFile::ground() const {
  fol::PropTheory theory = fol::ground_theory(std::span<const fol::NamedFormula>(axioms), n, signature);
  theory.assumptions = assumptions;
  return theory;
}

count::GoodPartitionSpec TheoryFile::partition_spec() const {
  return partition ? *partition : count::trivial_partition_spec();
}

bool looks_like_theory(std::string_view text) {
  try {
    const auto tokens = detail::tokenize(text);
    for (const auto& t : tokens) {
      if (t.kind == TokenKind::kNewline) continue;
      return t.kind == TokenKind::kIdent && (t.text == "rel" || t.text == "fun" || t.text == "const");
    }
  } catch (const Error&) {
  }
  return false;
}

namespace {

struct PendingLayer {
  std::string name;
  std::string variable;
  FolFormula formula;
  Token at;
};

struct PendingOrientation {
  int i = 0, j = 0;
  bool all = false;
  Orientation value = Orientation::kFree;
  Token at;
};

struct PendingAssume {
  std::string family;
  std::vector<std::variant<int, std::string>> indices;
  std::vector<std::string> variables;
  bool value = false;
  bool poset_bounds = false;
  Token at;
};

class TheoryParser {
 public:
  explicit TheoryParser(std::string_view text) : cur_(detail::tokenize(text)) {}

  TheoryFile run() {
    cur_.skip_newlines();
    while (cur_.peek().kind != TokenKind::kEnd) {
      statement();
      cur_.skip_newlines();
    }
    if (!has_n_) fail_at(cur_.peek(), "missing 'n = <size>' line");
    finish_partition();
    finish_assumptions();
    return std::move(file_);
  }

 private:
  void statement() {
    const Token& kw = cur_.expect_ident("a declaration");
    if (kw.text == "rel" || kw.text == "fun") {
      const Token& name = symbol_name();
      const Token& at = cur_.peek();
      const auto arity = cur_.expect_int("arity");
      if (arity > 8) fail_at(at, "arity above 8 is not supported");
      declare(name, kw.text == "rel" ? SymbolKind::kRelation : SymbolKind::kFunction,
              static_cast<int>(arity));
    } else if (kw.text == "const") {
      declare(symbol_name(), SymbolKind::kFunction, 0);
    } else if (kw.text == "n") {
      cur_.expect_punct("=");
      const Token& at = cur_.peek();
      const auto n = cur_.expect_int("domain size");
      if (n < 1 || n > 64) fail_at(at, "domain size must be between 1 and 64");
      if (has_n_) fail_at(kw, "n declared twice");
      file_.n = static_cast<int>(n);
      has_n_ = true;
    } else if (kw.text == "axiom") {
      std::string name = "axiom." + std::to_string(file_.axioms.size() + 1);
      if (cur_.peek().kind == TokenKind::kIdent && cur_.at_punct(":", 1)) {
        name = cur_.next().text;
        cur_.next();
      }
      FolFormula f = formula();
      file_.axioms.push_back({std::move(name), std::move(f)});
    } else if (kw.text == "partition") {
      const Token& at = cur_.peek();
      const std::string which = dashed_word();
      if (which != "poset-layers") fail_at(at, "unknown built-in partition '" + which + "'");
      if (builtin_partition_ || !layers_.empty()) fail_at(kw, "partition declared twice");
      builtin_partition_ = true;
      partition_at_ = kw;
    } else if (kw.text == "layer") {
      layer(kw);
    } else if (kw.text == "orient") {
      orient(kw);
    } else if (kw.text == "assume") {
      assume(kw);
    } else if (kw.text == "constants") {
      const Token& at = cur_.peek();
      const auto k = cur_.expect_int("number of definable constants");
      if (k > 64) fail_at(at, "too many definable constants");
      file_.definable_constants = static_cast<int>(k);
    } else {
      fail_at(kw, "unknown statement '" + kw.text + "'");
    }
    cur_.expect_end_of_statement();
  }

  const Token& symbol_name() {
    const Token& name = cur_.expect_ident("symbol name");
    if (reserved(name.text)) fail_at(name, "'" + name.text + "' is reserved");
    return name;
  }

  static bool reserved(const std::string& s) {
    return s == "A" || s == "E" || s == "true" || s == "false" || s == "for" || s == "n";
  }

  void declare(const Token& name, SymbolKind kind, int arity) {
    if (!file_.axioms.empty()) fail_at(name, "declarations must precede axioms");
    try {
      if (kind == SymbolKind::kRelation) file_.signature.add_relation(name.text, arity);
      else file_.signature.add_function(name.text, arity);
    } catch (const Error& e) {
      fail_at(name, e.what());
    }
  }

  std::string dashed_word() {
    std::string out = cur_.expect_ident("name").text;
    while (cur_.at_punct("-") && cur_.peek(1).kind == TokenKind::kIdent) {
      cur_.next();
      out += "-" + cur_.next().text;
    }
    return out;
  }

  // ---- partition ----

  void layer(const Token& kw) {
    if (builtin_partition_) fail_at(kw, "layers cannot be combined with a built-in partition");
    PendingLayer l{cur_.expect_ident("layer name").text, {}, FolFormula::truth(true), kw};
    cur_.expect_punct("(");
    const Token& var = cur_.expect_ident("layer variable");
    cur_.expect_punct(")");
    cur_.expect_punct(":");
    if (!layers_.empty() && layers_.front().variable != var.text)
      fail_at(var, "every layer must use the variable '" + layers_.front().variable + "'");
    l.variable = var.text;
    scope_.push_back(var.text);
    l.formula = formula();
    scope_.pop_back();
    layers_.push_back(std::move(l));
  }

  void orient(const Token& kw) {
    PendingOrientation o;
    o.at = kw;
    if (cur_.at_ident("all")) {
      cur_.next();
      o.all = true;
    } else {
      o.i = static_cast<int>(cur_.expect_int("layer index"));
      o.j = static_cast<int>(cur_.expect_int("layer index"));
      if (o.j < o.i) fail_at(kw, "orientation needs i <= j");
    }
    cur_.expect_punct(":");
    const Token& at = cur_.peek();
    if (cur_.at_ident("free")) {
      cur_.next();
      orientations_.push_back(o);
      return;
    }
    const bool negated = cur_.accept_punct("~");
    cur_.expect_ident("relation");
    cur_.expect_punct("(");
    const std::string a = cur_.expect_ident("x or y").text;
    cur_.expect_punct(",");
    const std::string b = cur_.expect_ident("x or y").text;
    cur_.expect_punct(")");
    if (a == "x" && b == "y") o.value = negated ? Orientation::kFails : Orientation::kHolds;
    else if (a == "y" && b == "x") o.value = negated ? Orientation::kFailsReversed : Orientation::kHoldsReversed;
    else fail_at(at, "orientation must read R(x,y), R(y,x), ~R(x,y), ~R(y,x) or free");
    orientations_.push_back(o);
  }

  void finish_partition() {
    const Token& at = builtin_partition_ ? partition_at_
                      : !layers_.empty() ? layers_.front().at
                                         : cur_.peek();
    try {
      if (builtin_partition_) {
        const auto& rel = count::single_binary_relation(file_.signature);
        if (file_.n < 2) fail_at(at, "the poset-layers partition needs n >= 2");
        file_.partition = count::poset_layer_spec(file_.n, rel.name);
      } else if (!layers_.empty()) {
        std::vector<FolFormula> formulas;
        for (const auto& l : layers_) formulas.push_back(l.formula);
        count::GoodPartitionSpec spec(std::move(formulas), layers_.front().variable);
        if (spec.m() > 1) count::single_binary_relation(file_.signature);
        file_.partition = std::move(spec);
      }
      if (!orientations_.empty() && !file_.partition)
        fail_at(orientations_.front().at, "orient needs layer lines");
      for (const auto& o : orientations_) {
        const int m = file_.partition->m();
        if (o.all) {
          for (int i = 0; i < m; ++i)
            for (int j = i; j < m; ++j) file_.partition->set_orientation(i, j, o.value);
        } else {
          if (o.j >= m) fail_at(o.at, "layer index out of range");
          file_.partition->set_orientation(o.i, o.j, o.value);
        }
      }
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kParse) throw;
      fail_at(at, e.what());
    }
  }

  // ---- assumptions ----

  void assume(const Token& kw) {
    PendingAssume a;
    a.at = kw;
    if (cur_.peek().kind == TokenKind::kIdent && cur_.peek().text == "poset" && cur_.at_punct("-", 1)) {
      const Token& at = cur_.peek();
      const std::string which = dashed_word();
      if (which != "poset-bounds") fail_at(at, "unknown built-in assumption '" + which + "'");
      a.poset_bounds = true;
      assumes_.push_back(std::move(a));
      return;
    }
    a.family = cur_.expect_ident("letter").text;
    // Comprehension variables follow the value; collect them first.
    std::vector<std::variant<int, std::string>> idx;
    if (cur_.accept_punct("(")) {
      do {
        const Token& t = cur_.next();
        if (t.kind == TokenKind::kInt) idx.emplace_back(static_cast<int>(t.value));
        else if (t.kind == TokenKind::kIdent) idx.emplace_back(t.text);
        else fail_at(t, "letter indices are integers or 'for' variables");
      } while (cur_.accept_punct(","));
      cur_.expect_punct(")");
    }
    a.indices = std::move(idx);
    cur_.expect_punct(":");
    const Token& vt = cur_.peek();
    const auto v = cur_.expect_int("0 or 1");
    if (v != 0 && v != 1) fail_at(vt, "assumed values must be 0 or 1");
    a.value = v == 1;
    if (cur_.at_ident("for")) {
      cur_.next();
      do a.variables.push_back(cur_.expect_ident("index variable").text);
      while (cur_.accept_punct(","));
    }
    for (const auto& i : a.indices)
      if (const auto* s = std::get_if<std::string>(&i))
        if (std::find(a.variables.begin(), a.variables.end(), *s) == a.variables.end())
          fail_at(kw, "unknown index variable '" + *s + "'");
    assumes_.push_back(std::move(a));
  }

  void finish_assumptions() {
    const auto letters = fol::letter_set(file_.signature, file_.n);
    for (const auto& a : assumes_) {
      if (a.poset_bounds) {
        try {
          const auto& rel = count::single_binary_relation(file_.signature);
          if (file_.n < 2) fail_at(a.at, "poset-bounds needs n >= 2");
          for (const auto& [l, v] : count::poset_base_kills(file_.n, rel.name)) file_.assumptions[l] = v;
        } catch (const Error& e) {
          if (e.code() == ErrorCode::kParse) throw;
          fail_at(a.at, e.what());
        }
        continue;
      }
      fol::for_each_tuple(file_.n, static_cast<int>(a.variables.size()), [&](std::span<const int> t) {
        std::vector<int> values;
        for (const auto& i : a.indices) {
          if (const int* lit = std::get_if<int>(&i)) {
            values.push_back(*lit);
          } else {
            const auto& name = std::get<std::string>(i);
            const auto pos = std::find(a.variables.begin(), a.variables.end(), name) - a.variables.begin();
            values.push_back(t[pos]);
          }
        }
        LetterName l(a.family, std::move(values));
        if (!std::binary_search(letters.begin(), letters.end(), l))
          fail_at(a.at, "assumption names unknown letter " + l.str());
        file_.assumptions[l] = a.value;
      });
    }
  }

  // ---- formulas ----

  FolFormula formula() { return iff_expr(); }

  FolFormula iff_expr() {
    FolFormula left = implies_expr();
    while (cur_.accept_punct("<->")) left = FolFormula::iff(std::move(left), implies_expr());
    return left;
  }

  FolFormula implies_expr() {
    FolFormula left = or_expr();
    if (cur_.accept_punct("->")) return FolFormula::implies(std::move(left), implies_expr());
    return left;
  }

  FolFormula or_expr() {
    std::vector<FolFormula> kids{xor_expr()};
    while (cur_.accept_punct("|")) kids.push_back(xor_expr());
    return FolFormula::any_of(std::move(kids));
  }

  FolFormula xor_expr() {
    FolFormula left = and_expr();
    while (cur_.accept_punct("^"))
      left = FolFormula::negate(FolFormula::iff(std::move(left), and_expr()));
    return left;
  }

  FolFormula and_expr() {
    std::vector<FolFormula> kids{unary()};
    while (cur_.accept_punct("&")) kids.push_back(unary());
    return FolFormula::all_of(std::move(kids));
  }

  FolFormula unary() {
    if (cur_.accept_punct("~")) return FolFormula::negate(unary());
    if ((cur_.at_ident("A") || cur_.at_ident("E")) && cur_.at_punct("[", 1)) return quantified();
    return primary();
  }

  FolFormula quantified() {
    const bool universal = cur_.next().text == "A";
    cur_.expect_punct("[");
    std::vector<std::string> vars;
    do {
      const Token& v = cur_.expect_ident("variable");
      if (std::find(scope_.begin(), scope_.end(), v.text) != scope_.end() ||
          std::find(vars.begin(), vars.end(), v.text) != vars.end())
        fail_at(v, "variable '" + v.text + "' is already bound");
      if (file_.signature.find(v.text) || reserved(v.text))
        fail_at(v, "variable '" + v.text + "' clashes with a symbol");
      vars.push_back(v.text);
    } while (cur_.accept_punct(","));
    cur_.expect_punct("]");
    cur_.accept_punct(".");
    for (const auto& v : vars) scope_.push_back(v);
    FolFormula body = formula();
    scope_.resize(scope_.size() - vars.size());
    for (auto it = vars.rbegin(); it != vars.rend(); ++it)
      body = universal ? FolFormula::forall(*it, std::move(body))
                       : FolFormula::exists(*it, std::move(body));
    return body;
  }

  FolFormula primary() {
    const Token& t = cur_.peek();
    if (cur_.accept_punct("(")) {
      FolFormula f = formula();
      cur_.expect_punct(")");
      return f;
    }
    if (cur_.at_ident("true") || cur_.at_ident("false")) {
      cur_.next();
      return FolFormula::truth(t.text == "true");
    }
    if (t.kind == TokenKind::kIdent) {
      const fol::Symbol* s = file_.signature.find(t.text);
      if (s && s->kind == SymbolKind::kRelation) {
        cur_.next();
        auto args = arguments(*s, t);
        return FolFormula::relation(s->name, std::move(args));
      }
    }
    FolTerm left = term();
    const Token& op = cur_.peek();
    if (cur_.accept_punct("=")) return FolFormula::equal(std::move(left), term());
    if (cur_.accept_punct("!=")) return FolFormula::negate(FolFormula::equal(std::move(left), term()));
    fail_at(op, "expected '=' or '!=' after a term, found '" + op.text + "'");
  }

  std::vector<FolTerm> arguments(const fol::Symbol& s, const Token& at) {
    std::vector<FolTerm> args;
    if (cur_.accept_punct("(")) {
      do args.push_back(term());
      while (cur_.accept_punct(","));
      cur_.expect_punct(")");
    }
    if (static_cast<int>(args.size()) != s.arity)
      fail_at(at, s.name + " expects " + std::to_string(s.arity) + " arguments, got " +
                      std::to_string(args.size()));
    return args;
  }

  FolTerm term() {
    const Token& t = cur_.next();
    if (t.kind == TokenKind::kInt) {
      if (has_n_ && t.value >= file_.n)
        fail_at(t, "element " + t.text + " is outside I_" + std::to_string(file_.n));
      return FolTerm::element(static_cast<int>(t.value));
    }
    if (t.kind != TokenKind::kIdent) fail_at(t, "expected a term, found '" + t.text + "'");
    if (std::find(scope_.begin(), scope_.end(), t.text) != scope_.end()) return FolTerm::variable(t.text);
    const fol::Symbol* s = file_.signature.find(t.text);
    if (!s) fail_at(t, "unknown identifier '" + t.text + "'");
    if (s->kind != SymbolKind::kFunction) fail_at(t, "relation " + t.text + " used as a term");
    auto args = arguments(*s, t);
    return FolTerm::apply(s->name, std::move(args));
  }

  TokenCursor cur_;
  TheoryFile file_;
  bool has_n_ = false;
  bool builtin_partition_ = false;
  Token partition_at_;
  std::vector<PendingLayer> layers_;
  std::vector<PendingOrientation> orientations_;
  std::vector<PendingAssume> assumes_;
  std::vector<std::string> scope_;
};

}  // namespace

TheoryFile parse_theory(std::string_view text) { return TheoryParser(text).run(); }

}  // namespace tba::shell
