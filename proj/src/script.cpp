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

#include "tba/script.hpp"

#include <algorithm>
#include <functional>

#include "lexer.hpp"
#include "tba/error.hpp"

namespace tba::shell {

using detail::fail_at;
using detail::Token;
using detail::TokenCursor;
using detail::TokenKind;

void LetterNamespace::add(const LetterName& letter) {
  const int k = static_cast<int>(letter.indices.size());
  auto [it, inserted] = arity_.emplace(letter.family, k);
  if (!inserted && it->second != k)
    throw Error(ErrorCode::kArity, "letter family " + letter.family + " used with " +
                                       std::to_string(it->second) + " and " + std::to_string(k) +
                                       " indices");
  letters_.insert(letter);
}

std::optional<int> LetterNamespace::arity(const std::string& family) const {
  auto it = arity_.find(family);
  if (it == arity_.end()) return std::nullopt;
  return it->second;
}

const Script::Domain* Script::domain(std::string_view name) const {
  for (const auto& d : domains)
    if (d.name == name) return &d;
  return nullptr;
}

std::optional<std::int64_t> Script::parameter(std::string_view name) const {
  for (const auto& [n, v] : parameters)
    if (n == name) return v;
  return std::nullopt;
}

namespace {

using Env = std::vector<std::pair<std::string, std::int64_t>>;

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t evaluate(const IndexExpr& e, const Env& env) {
  using K = IndexExpr::Kind;
  switch (e.kind) {
    case K::kLiteral: return e.value;
    case K::kName:
      for (auto it = env.rbegin(); it != env.rend(); ++it)
        if (it->first == e.name) return it->second;
      throw Error(ErrorCode::kUnbound, "unknown identifier " + e.name);
    case K::kNegate: return -evaluate(e.operands[0], env);
    default: break;
  }
  const std::int64_t a = evaluate(e.operands[0], env);
  const std::int64_t b = evaluate(e.operands[1], env);
  switch (e.kind) {
    case K::kAdd: return a + b;
    case K::kSub: return a - b;
    case K::kMul: return a * b;
    case K::kDiv:
    case K::kMod:
      if (b == 0) throw Error(ErrorCode::kRange, "division by zero");
      return e.kind == K::kDiv ? floor_div(a, b) : a - b * floor_div(a, b);
    default: return 0;
  }
}

const std::set<std::string> kReserved = {"range", "perm", "assumptions", "for", "in"};

class ScriptParser {
 public:
  explicit ScriptParser(std::string_view text) : cur_(detail::tokenize(text)) {}

  Script run() {
    cur_.skip_newlines();
    while (cur_.peek().kind != TokenKind::kEnd) {
      statement();
      cur_.skip_newlines();
    }
    return std::move(script_);
  }

 private:
  // ---- statements ----

  void statement() {
    const Token& name = cur_.expect_ident("identifier");
    if (name.text == "assumptions") {
      assumptions(name);
      return;
    }
    if (kReserved.contains(name.text) || name.text == "A" || name.text == "E")
      fail_at(name, "'" + name.text + "' cannot be assigned");
    if (defined(name.text)) fail_at(name, "'" + name.text + "' is already defined");
    cur_.expect_punct("=");
    if (starts_domain()) {
      Script::Domain d = domain_expr();
      d.name = name.text;
      cur_.expect_end_of_statement();
      script_.domains.push_back(std::move(d));
      return;
    }
    const std::size_t mark = cur_.position();
    if (auto value = try_int_statement()) {
      script_.parameters.emplace_back(name.text, *value);
      return;
    }
    cur_.rewind(mark);
    ScriptFormula f = formula();
    cur_.expect_end_of_statement();
    script_.formulas.push_back({name.text, std::move(f)});
  }

  bool defined(const std::string& n) const {
    if (script_.parameter(n) || script_.domain(n)) return true;
    return std::any_of(script_.formulas.begin(), script_.formulas.end(),
                       [&](const auto& f) { return f.name == n; });
  }

  std::optional<std::int64_t> try_int_statement() {
    try {
      IndexExpr e = index_expr();
      if (!cur_.at_end_of_statement()) return std::nullopt;
      const std::int64_t v = evaluate(e, script_.parameters);
      cur_.expect_end_of_statement();
      return v;
    } catch (const Error&) {
      return std::nullopt;
    }
  }

  // ---- domains ----

  bool starts_domain() const {
    if (cur_.at_punct("{")) return true;
    if ((cur_.at_ident("range") || cur_.at_ident("perm")) && cur_.at_punct("(", 1)) return true;
    return cur_.peek().kind == TokenKind::kIdent && script_.domain(cur_.peek().text) &&
           (cur_.peek(1).kind == TokenKind::kNewline || cur_.peek(1).kind == TokenKind::kEnd);
  }

  std::int64_t constant_int() {
    const Token& at = cur_.peek();
    IndexExpr e = index_expr();
    try {
      return evaluate(e, script_.parameters);
    } catch (const Error& err) {
      fail_at(at, err.what());
    }
  }

  Script::Domain domain_expr() {
    const Token& at = cur_.peek();
    Script::Domain d;
    if (cur_.accept_punct("{")) {
      std::set<int> values;
      if (!cur_.at_punct("}")) {
        do {
          const Token& t = cur_.peek();
          const auto v = constant_int();
          if (v < 0 || v > (1 << 20)) fail_at(t, "domain element out of range");
          values.insert(static_cast<int>(v));
        } while (cur_.accept_punct(","));
      }
      cur_.expect_punct("}");
      for (int v : values) d.elements.push_back({v});
      return d;
    }
    if (cur_.at_ident("range")) {
      cur_.next();
      cur_.expect_punct("(");
      std::int64_t lo = 0, hi = constant_int();
      if (cur_.accept_punct(",")) {
        lo = hi;
        hi = constant_int();
      }
      cur_.expect_punct(")");
      if (hi - lo > (1 << 20)) fail_at(at, "range too large");
      for (std::int64_t v = std::max<std::int64_t>(lo, 0); v < hi; ++v)
        d.elements.push_back({static_cast<int>(v)});
      if (lo < 0) fail_at(at, "range may not start below 0");
      return d;
    }
    if (cur_.at_ident("perm")) {
      cur_.next();
      cur_.expect_punct("(");
      Script::Domain base = domain_expr();
      cur_.expect_punct(",");
      const Token& rt = cur_.peek();
      const auto r = constant_int();
      cur_.expect_punct(")");
      if (base.arity != 1) fail_at(at, "perm needs a domain of single elements");
      if (r < 1 || r > 8) fail_at(rt, "perm tuple length must be between 1 and 8");
      d.arity = static_cast<int>(r);
      permutations(base, d);
      return d;
    }
    const Token& name = cur_.expect_ident("domain");
    const Script::Domain* known = script_.domain(name.text);
    if (!known) fail_at(name, "unknown domain '" + name.text + "'");
    d = *known;
    return d;
  }

  // r-tuples of distinct positions, in the order itertools.permutations uses.
  static void permutations(const Script::Domain& base, Script::Domain& out) {
    const int n = static_cast<int>(base.elements.size());
    const int r = out.arity;
    if (r > n) return;
    std::vector<int> pick;
    std::vector<bool> used(n, false);
    std::function<void()> rec = [&] {
      if (static_cast<int>(pick.size()) == r) {
        std::vector<int> t;
        for (int p : pick) t.push_back(base.elements[p][0]);
        out.elements.push_back(std::move(t));
        return;
      }
      for (int i = 0; i < n; ++i) {
        if (used[i]) continue;
        used[i] = true;
        pick.push_back(i);
        rec();
        pick.pop_back();
        used[i] = false;
      }
    };
    rec();
  }

  // ---- integer expressions ----

  IndexExpr index_expr() { return additive(); }

  IndexExpr additive() {
    IndexExpr left = multiplicative();
    while (cur_.at_punct("+") || cur_.at_punct("-")) {
      IndexExpr e;
      e.kind = cur_.next().text == "+" ? IndexExpr::Kind::kAdd : IndexExpr::Kind::kSub;
      e.operands = {std::move(left), multiplicative()};
      left = std::move(e);
    }
    return left;
  }

  IndexExpr multiplicative() {
    IndexExpr left = unary();
    while (cur_.at_punct("*") || cur_.at_punct("%") || cur_.at_punct("//")) {
      IndexExpr e;
      const std::string op = cur_.next().text;
      e.kind = op == "*" ? IndexExpr::Kind::kMul
               : op == "%" ? IndexExpr::Kind::kMod
                           : IndexExpr::Kind::kDiv;
      e.operands = {std::move(left), unary()};
      left = std::move(e);
    }
    return left;
  }

  IndexExpr unary() {
    if (cur_.accept_punct("-")) {
      IndexExpr e;
      e.kind = IndexExpr::Kind::kNegate;
      e.operands = {unary()};
      return e;
    }
    if (cur_.accept_punct("+")) return unary();
    if (cur_.accept_punct("(")) {
      IndexExpr e = index_expr();
      cur_.expect_punct(")");
      return e;
    }
    const Token& t = cur_.peek();
    if (t.kind == TokenKind::kInt) {
      cur_.next();
      IndexExpr e;
      e.value = t.value;
      return e;
    }
    if (t.kind == TokenKind::kIdent) {
      if (!script_.parameter(t.text) && !bound(t.text))
        fail_at(t, "unknown identifier '" + t.text + "'");
      cur_.next();
      IndexExpr e;
      e.kind = IndexExpr::Kind::kName;
      e.name = t.text;
      return e;
    }
    fail_at(t, "expected an integer expression, found '" + t.text + "'");
  }

  bool bound(const std::string& n) const {
    return std::find(scope_.begin(), scope_.end(), n) != scope_.end();
  }

  // ---- formulas ----

  bool at_quantifier() const {
    return (cur_.at_ident("A") || cur_.at_ident("E")) && cur_.at_punct("[", 1);
  }

  ScriptFormula formula() {
    const std::size_t depth = scope_.size();
    ScriptFormula f = quantified();
    scope_.resize(depth);
    return f;
  }

  ScriptFormula quantified() {
    if (!at_quantifier()) return iff_expr();
    const Token& q = cur_.next();
    ScriptFormula f;
    f.kind = q.text == "A" ? ScriptFormula::Kind::kForall : ScriptFormula::Kind::kExists;
    f.line = q.line;
    f.column = q.column;
    cur_.expect_punct("[");
    std::vector<const Token*> vars;
    do vars.push_back(&cur_.expect_ident("index variable"));
    while (cur_.accept_punct(","));
    cur_.expect_punct(":");
    const Token& dom = cur_.expect_ident("domain");
    cur_.expect_punct("]");
    cur_.accept_punct(".");
    const Script::Domain* d = script_.domain(dom.text);
    if (!d) fail_at(dom, "unknown domain '" + dom.text + "'");
    const int k = static_cast<int>(vars.size());
    if (d->arity != k && d->arity != 1)
      fail_at(dom, "domain '" + dom.text + "' holds " + std::to_string(d->arity) +
                       "-tuples but " + std::to_string(k) + " variables are bound");
    for (const Token* v : vars) {
      if (bound(v->text) || script_.parameter(v->text) || script_.domain(v->text))
        fail_at(*v, "index variable '" + v->text + "' shadows an existing name");
      if (std::count_if(vars.begin(), vars.end(), [&](const Token* o) { return o->text == v->text; }) > 1)
        fail_at(*v, "index variable '" + v->text + "' bound twice");
      f.variables.push_back(v->text);
    }
    f.name = dom.text;
    for (const auto& v : f.variables) scope_.push_back(v);
    f.children.push_back(quantified());
    return f;
  }

  ScriptFormula binary(ScriptFormula::Kind kind, ScriptFormula left, ScriptFormula right,
                       const Token& at) {
    ScriptFormula f;
    f.kind = kind;
    f.line = at.line;
    f.column = at.column;
    f.children.push_back(std::move(left));
    f.children.push_back(std::move(right));
    return f;
  }

  ScriptFormula iff_expr() {
    ScriptFormula left = implies_expr();
    while (cur_.at_punct("<->")) {
      const Token& at = cur_.next();
      left = binary(ScriptFormula::Kind::kIff, std::move(left), implies_expr(), at);
    }
    return left;
  }

  ScriptFormula implies_expr() {
    ScriptFormula left = or_expr();
    if (cur_.at_punct("->")) {
      const Token& at = cur_.next();
      return binary(ScriptFormula::Kind::kImplies, std::move(left), implies_expr(), at);
    }
    return left;
  }

  ScriptFormula nary(ScriptFormula::Kind kind, std::string_view op,
                     ScriptFormula (ScriptParser::*operand)()) {
    ScriptFormula first = (this->*operand)();
    if (!cur_.at_punct(op)) return first;
    ScriptFormula f;
    f.kind = kind;
    f.line = cur_.peek().line;
    f.column = cur_.peek().column;
    f.children.push_back(std::move(first));
    while (cur_.accept_punct(op)) f.children.push_back((this->*operand)());
    return f;
  }

  ScriptFormula or_expr() { return nary(ScriptFormula::Kind::kOr, "|", &ScriptParser::xor_expr); }

  ScriptFormula xor_expr() {
    ScriptFormula left = and_expr();
    while (cur_.at_punct("^")) {
      const Token& at = cur_.next();
      left = binary(ScriptFormula::Kind::kXor, std::move(left), and_expr(), at);
    }
    return left;
  }

  ScriptFormula and_expr() { return nary(ScriptFormula::Kind::kAnd, "&", &ScriptParser::not_expr); }

  ScriptFormula not_expr() {
    if (cur_.at_punct("~")) {
      const Token& at = cur_.next();
      ScriptFormula f;
      f.kind = ScriptFormula::Kind::kNot;
      f.line = at.line;
      f.column = at.column;
      f.children.push_back(not_expr());
      return f;
    }
    return primary();
  }

  ScriptFormula primary() {
    const Token& t = cur_.peek();
    if (at_quantifier())
      fail_at(t, "quantifiers must form a prefix (prenex normal form)");
    if (cur_.accept_punct("(")) {
      ScriptFormula f = iff_expr();
      cur_.expect_punct(")");
      return f;
    }
    ScriptFormula f;
    f.line = t.line;
    f.column = t.column;
    if (t.kind == TokenKind::kInt) {
      if (t.value != 0 && t.value != 1) fail_at(t, "only 0 and 1 are formula constants");
      cur_.next();
      f.kind = ScriptFormula::Kind::kConst;
      f.value = t.value == 1;
      return f;
    }
    if (t.kind != TokenKind::kIdent) fail_at(t, "expected a formula, found '" + t.text + "'");
    if (kReserved.contains(t.text)) fail_at(t, "'" + t.text + "' is not a letter");
    if (script_.parameter(t.text) || script_.domain(t.text) || bound(t.text))
      fail_at(t, "'" + t.text + "' is not a letter");
    cur_.next();
    f.kind = ScriptFormula::Kind::kLetter;
    f.name = t.text;
    f.indices = letter_indices();
    note_arity(t, f.name, f.indices.size());
    return f;
  }

  std::vector<IndexExpr> letter_indices() {
    std::vector<IndexExpr> out;
    if (!cur_.accept_punct("(")) return out;
    do out.push_back(index_expr());
    while (cur_.accept_punct(","));
    cur_.expect_punct(")");
    return out;
  }

  void note_arity(const Token& at, const std::string& family, std::size_t k) {
    auto [it, inserted] = arity_.emplace(family, k);
    if (!inserted && it->second != k)
      fail_at(at, "letter " + family + " used with " + std::to_string(it->second) + " and " +
                      std::to_string(k) + " indices");
  }

  // ---- assumptions ----

  void assumptions(const Token& at) {
    AssumptionStep step;
    bool update = false;
    if (cur_.accept_punct(".")) {
      const Token& m = cur_.expect_ident("'update'");
      if (m.text != "update") fail_at(m, "only assumptions.update(...) is supported");
      cur_.expect_punct("(");
      update = true;
    } else {
      cur_.expect_punct("=");
    }
    step.reset = !update;
    cur_.expect_punct("{");
    if (!cur_.at_punct("}")) {
      do {
        if (cur_.at_punct("}")) break;
        step.entries.push_back(assumption_entry());
      } while (cur_.accept_punct(","));
    }
    cur_.expect_punct("}");
    if (update) cur_.expect_punct(")");
    cur_.expect_end_of_statement();
    (void)at;
    script_.assumptions.push_back(std::move(step));
  }

  AssumptionEntry assumption_entry() {
    const Token& name = cur_.expect_ident("letter");
    if (script_.parameter(name.text) || script_.domain(name.text) || kReserved.contains(name.text))
      fail_at(name, "'" + name.text + "' is not a letter");
    AssumptionEntry e;
    e.family = name.text;
    e.line = name.line;
    e.column = name.column;
    // The comprehension variables appear after the entry; scan ahead for
    // `for` at this bracket level to put them in scope first.
    const auto vars = comprehension_variables();
    const std::size_t depth = scope_.size();
    for (const auto& v : vars) scope_.push_back(v);
    e.indices = letter_indices();
    note_arity(name, e.family, e.indices.size());
    cur_.expect_punct(":");
    const Token& bit = cur_.peek();
    const auto v = cur_.expect_int("0 or 1");
    if (v != 0 && v != 1) fail_at(bit, "assumed values must be 0 or 1");
    e.value = v == 1;
    if (cur_.at_ident("for")) {
      cur_.next();
      std::vector<const Token*> names;
      do names.push_back(&cur_.expect_ident("index variable"));
      while (cur_.accept_punct(","));
      if (!cur_.at_ident("in")) fail_at(cur_.peek(), "expected 'in'");
      cur_.next();
      const Token& dom = cur_.expect_ident("domain");
      const Script::Domain* d = script_.domain(dom.text);
      if (!d) fail_at(dom, "unknown domain '" + dom.text + "'");
      const int k = static_cast<int>(names.size());
      if (d->arity != k && d->arity != 1)
        fail_at(dom, "domain '" + dom.text + "' holds " + std::to_string(d->arity) +
                         "-tuples but " + std::to_string(k) + " variables are bound");
      e.variables = vars;
      e.domain = dom.text;
    }
    scope_.resize(depth);
    return e;
  }

  std::vector<std::string> comprehension_variables() {
    const std::size_t mark = cur_.position();
    int depth = 0;
    std::vector<std::string> vars;
    while (cur_.peek().kind != TokenKind::kEnd) {
      const Token& t = cur_.peek();
      if (t.kind == TokenKind::kPunct) {
        if (t.text == "(" || t.text == "{" || t.text == "[") ++depth;
        if (t.text == ")" || t.text == "}" || t.text == "]") {
          if (depth == 0) break;
          --depth;
        }
        if (t.text == "," && depth == 0) break;
      }
      if (depth == 0 && t.kind == TokenKind::kIdent && t.text == "for") {
        cur_.next();
        while (cur_.peek().kind == TokenKind::kIdent && !cur_.at_ident("in")) {
          const Token& v = cur_.next();
          if (script_.parameter(v.text) || script_.domain(v.text))
            fail_at(v, "index variable '" + v.text + "' shadows an existing name");
          if (std::find(vars.begin(), vars.end(), v.text) != vars.end())
            fail_at(v, "index variable '" + v.text + "' bound twice");
          vars.push_back(v.text);
          if (!cur_.accept_punct(",")) break;
        }
        break;
      }
      cur_.next();
    }
    cur_.rewind(mark);
    return vars;
  }

  TokenCursor cur_;
  Script script_;
  std::vector<std::string> scope_;
  std::map<std::string, std::size_t> arity_;
};

// ---- expansion ----

class Expander {
 public:
  explicit Expander(const Script& script) : script_(script), env_(script.parameters) {}

  BoolTerm formula(const ScriptFormula& f) {
    using K = ScriptFormula::Kind;
    switch (f.kind) {
      case K::kConst: return BoolTerm::constant(f.value);
      case K::kLetter: return BoolTerm::var(letter(f.name, f.indices, f.line, f.column));
      case K::kNot: return BoolTerm::negate(formula(f.children[0]));
      case K::kAnd:
      case K::kOr: {
        std::vector<BoolTerm> kids;
        for (const auto& c : f.children) kids.push_back(formula(c));
        return f.kind == K::kAnd ? BoolTerm::all_of(std::move(kids))
                                 : BoolTerm::any_of(std::move(kids));
      }
      case K::kXor: return BoolTerm::exclusive_or(formula(f.children[0]), formula(f.children[1]));
      case K::kImplies: return BoolTerm::implies(formula(f.children[0]), formula(f.children[1]));
      case K::kIff: return BoolTerm::iff(formula(f.children[0]), formula(f.children[1]));
      case K::kForall:
      case K::kExists: {
        std::vector<BoolTerm> parts;
        bind_each(f.variables, *script_.domain(f.name),
                  [&] { parts.push_back(formula(f.children[0])); });
        return f.kind == K::kForall ? conjunction(std::move(parts)) : disjunction(std::move(parts));
      }
    }
    return BoolTerm::constant(false);
  }

  void assume(const AssumptionEntry& e, Assignment& into) {
    auto one = [&] { into[letter(e.family, e.indices, e.line, e.column)] = e.value; };
    if (e.variables.empty()) one();
    else bind_each(e.variables, *script_.domain(e.domain), one);
  }

  LetterNamespace letters;

 private:
  template <class Fn>
  void bind_each(const std::vector<std::string>& vars, const Script::Domain& d, Fn&& body) {
    const std::size_t k = vars.size();
    const std::size_t depth = env_.size();
    if (static_cast<std::size_t>(d.arity) == k) {
      for (const auto& t : d.elements) {
        for (std::size_t i = 0; i < k; ++i) env_.emplace_back(vars[i], t[i]);
        body();
        env_.resize(depth);
      }
      return;
    }
    // k variables over single elements: the cartesian power.
    std::vector<std::size_t> at(k, 0);
    if (d.elements.empty()) return;
    while (true) {
      for (std::size_t i = 0; i < k; ++i) env_.emplace_back(vars[i], d.elements[at[i]][0]);
      body();
      env_.resize(depth);
      std::size_t pos = k;
      while (pos > 0 && ++at[pos - 1] == d.elements.size()) at[--pos] = 0;
      if (pos == 0) return;
    }
  }

  LetterName letter(const std::string& family, const std::vector<IndexExpr>& idx, int line,
                    int column) {
    std::vector<int> values;
    for (const auto& e : idx) {
      const std::int64_t v = evaluate(e, env_);
      if (v < 0 || v > (1 << 24))
        throw Error(ErrorCode::kRange, "line " + std::to_string(line) + ", column " +
                                           std::to_string(column) + ": index " +
                                           std::to_string(v) + " of " + family +
                                           " is out of domain");
      values.push_back(static_cast<int>(v));
    }
    LetterName out(family, std::move(values));
    letters.add(out);
    return out;
  }

  const Script& script_;
  Env env_;
};

}  // namespace

Script parse_script(std::string_view text) { return ScriptParser(text).run(); }

Expansion expand_script(const Script& script) {
  Expander ex(script);
  Expansion out;
  std::vector<BoolTerm> parts;
  for (const auto& f : script.formulas) {
    BoolTerm t = ex.formula(f.body);
    out.formulas.emplace_back(f.name, t);
    parts.push_back(std::move(t));
  }
  out.theta = conjunction(std::move(parts));
  out.letters = ex.letters;
  for (const auto& step : script.assumptions) {
    if (step.reset) out.assumptions.clear();
    for (const auto& e : step.entries) ex.assume(e, out.assumptions);
  }
  // Letters dropped by a later reset do not join the namespace.
  for (const auto& [letter, value] : out.assumptions) out.letters.add(letter);
  return out;
}

}  // namespace tba::shell
