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

#include "tba/model_kit.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

#include "tba/error.hpp"

namespace tba::models {

using fol::FolFormula;
using fol::FolTerm;
using fol::Signature;
using fol::SymbolKind;

// ---- Permutation -----------------------------------------------------------

Permutation Permutation::identity(int n) {
  std::vector<int> image(n);
  std::iota(image.begin(), image.end(), 0);
  return Permutation(std::move(image));
}

Permutation::Permutation(std::vector<int> image) : image_(std::move(image)) {
  std::vector<bool> seen(image_.size(), false);
  for (int v : image_) {
    if (v < 0 || v >= size() || seen[v])
      throw Error(ErrorCode::kRange, "permutation image is not a bijection");
    seen[v] = true;
  }
}

Permutation Permutation::compose(const Permutation& inner) const {
  if (inner.size() != size()) throw Error(ErrorCode::kRange, "permutation size mismatch");
  std::vector<int> out(size());
  for (int i = 0; i < size(); ++i) out[i] = image_[inner(i)];
  return Permutation(std::move(out));
}

Permutation Permutation::inverse() const {
  std::vector<int> out(size());
  for (int i = 0; i < size(); ++i) out[image_[i]] = i;
  return Permutation(std::move(out));
}

// ---- LabeledModel ----------------------------------------------------------

namespace {

std::size_t power(int n, int k) {
  std::size_t p = 1;
  for (int i = 0; i < k; ++i) p *= static_cast<std::size_t>(n);
  return p;
}

// Declaration index of every symbol, listed in name order.
std::vector<std::size_t> name_order(const Signature& sig) {
  std::vector<std::size_t> idx(sig.symbols().size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return sig.symbols()[a].name < sig.symbols()[b].name;
  });
  return idx;
}

std::string tuple_str(std::span<const int> t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(t[i]);
  }
  return s + ")";
}

}  // namespace

LabeledModel::LabeledModel(std::shared_ptr<const Signature> signature, int n)
    : signature_(std::move(signature)), n_(n) {
  if (n < 1) throw Error(ErrorCode::kRange, "domain size must be at least 1");
  for (const auto& s : signature_->symbols()) tables_.emplace_back(power(n, s.arity), 0);
}

LabeledModel::LabeledModel(const Signature& signature, int n)
    : LabeledModel(std::make_shared<const Signature>(signature), n) {}

std::size_t LabeledModel::symbol_index(std::string_view name, SymbolKind kind) const {
  const auto& syms = signature_->symbols();
  for (std::size_t i = 0; i < syms.size(); ++i)
    if (syms[i].name == name) {
      if (syms[i].kind != kind) break;
      return i;
    }
  throw Error(ErrorCode::kArity, std::string("no ") +
                                     (kind == SymbolKind::kFunction ? "function" : "relation") +
                                     " symbol named " + std::string(name));
}

std::size_t LabeledModel::offset(std::size_t symbol, std::span<const int> args) const {
  const auto& s = signature_->symbols()[symbol];
  if (static_cast<int>(args.size()) != s.arity)
    throw Error(ErrorCode::kArity, "symbol " + s.name + " expects " + std::to_string(s.arity) +
                                       " arguments");
  std::size_t off = 0;
  for (int a : args) {
    if (a < 0 || a >= n_) throw Error(ErrorCode::kRange, "element out of range in " + s.name);
    off = off * n_ + a;
  }
  return off;
}

bool LabeledModel::holds(std::string_view relation, std::span<const int> args) const {
  const auto i = symbol_index(relation, SymbolKind::kRelation);
  return tables_[i][offset(i, args)] != 0;
}

void LabeledModel::set_holds(std::string_view relation, std::span<const int> args, bool value) {
  const auto i = symbol_index(relation, SymbolKind::kRelation);
  tables_[i][offset(i, args)] = value ? 1 : 0;
}

int LabeledModel::value(std::string_view function, std::span<const int> args) const {
  const auto i = symbol_index(function, SymbolKind::kFunction);
  return tables_[i][offset(i, args)];
}

void LabeledModel::set_value(std::string_view function, std::span<const int> args, int value) {
  const auto i = symbol_index(function, SymbolKind::kFunction);
  if (value < 0 || value >= n_) throw Error(ErrorCode::kRange, "function value out of range");
  tables_[i][offset(i, args)] = value;
}

std::vector<std::uint8_t> LabeledModel::encode() const {
  std::vector<std::uint8_t> bits;
  for (std::size_t s : name_order(*signature_)) {
    const auto& sym = signature_->symbols()[s];
    for (int v : tables_[s]) {
      if (sym.kind == SymbolKind::kRelation) {
        bits.push_back(static_cast<std::uint8_t>(v));
      } else {
        for (int b = 0; b < n_; ++b) bits.push_back(v == b ? 1 : 0);
      }
    }
  }
  return bits;
}

bool operator==(const LabeledModel& a, const LabeledModel& b) {
  return a.n_ == b.n_ && a.tables_ == b.tables_ &&
         (a.signature_ == b.signature_ || *a.signature_ == *b.signature_);
}

// ---- decode / encode -------------------------------------------------------

LabeledModel decode_model(const Valuation& mu, const Signature& signature, int n) {
  LabeledModel model(signature, n);
  const auto& syms = signature.symbols();
  auto lookup = [&](const LetterName& letter) {
    auto it = mu.find(letter);
    if (it == mu.end())
      throw Error(ErrorCode::kUnbound, "valuation does not bind letter " + letter.str());
    return it->second;
  };
  for (std::size_t s = 0; s < syms.size(); ++s) {
    const auto& sym = syms[s];
    std::size_t off = 0;
    fol::for_each_tuple(n, sym.arity, [&](std::span<const int> args) {
      if (sym.kind == SymbolKind::kRelation) {
        model.table(s)[off++] = lookup(fol::relation_letter(sym.name, args)) ? 1 : 0;
        return;
      }
      int found = -1;
      for (int b = 0; b < n; ++b) {
        if (!lookup(fol::function_letter(sym.name, args, b))) continue;
        if (found >= 0)
          throw Error(ErrorCode::kFunctionality, "function " + sym.name + " has two values at " +
                                                     tuple_str(args));
        found = b;
      }
      if (found < 0)
        throw Error(ErrorCode::kFunctionality,
                    "function " + sym.name + " has no value at " + tuple_str(args));
      model.table(s)[off++] = found;
    });
  }
  return model;
}

LabeledModel decode_model(const Valuation& mu, const fol::PropTheory& theory) {
  return decode_model(mu, theory.signature, theory.n);
}

Valuation encode_valuation(const LabeledModel& model, std::span<const LetterName> order) {
  const auto all = fol::letter_set(model.signature(), model.size());
  const auto bits = model.encode();
  Valuation full;
  for (std::size_t i = 0; i < all.size(); ++i) full.emplace(all[i], bits[i] != 0);
  Valuation out;
  for (const auto& letter : order) {
    auto it = full.find(letter);
    if (it == full.end())
      throw Error(ErrorCode::kUnbound, "letter " + letter.str() + " is not a letter of the model");
    out.insert(*it);
  }
  return out;
}

// ---- satisfaction ----------------------------------------------------------

namespace {

class Evaluator {
 public:
  Evaluator(const LabeledModel& model, Environment env) : model_(model), env_(std::move(env)) {}

  int term(const FolTerm& t) {
    switch (t.kind()) {
      case FolTerm::Kind::kElement:
        if (t.element() >= model_.size())
          throw Error(ErrorCode::kRange, "element " + std::to_string(t.element()) + " out of range");
        return t.element();
      case FolTerm::Kind::kVariable:
        for (auto it = env_.rbegin(); it != env_.rend(); ++it)
          if (it->first == t.name()) return it->second;
        throw Error(ErrorCode::kFreeVariable, "unbound variable " + t.name());
      case FolTerm::Kind::kApply: {
        std::vector<int> args;
        for (const auto& a : t.args()) args.push_back(term(a));
        return model_.value(t.name(), args);
      }
    }
    return 0;
  }

  bool formula(const FolFormula& f) {
    using K = FolFormula::Kind;
    switch (f.kind()) {
      case K::kTrue: return true;
      case K::kFalse: return false;
      case K::kEqual: return term(f.terms()[0]) == term(f.terms()[1]);
      case K::kRelation: {
        std::vector<int> args;
        for (const auto& a : f.terms()) args.push_back(term(a));
        return model_.holds(f.name(), args);
      }
      case K::kNot: return !formula(f.children()[0]);
      case K::kAnd:
        for (const auto& c : f.children())
          if (!formula(c)) return false;
        return true;
      case K::kOr:
        for (const auto& c : f.children())
          if (formula(c)) return true;
        return false;
      case K::kImplies: return !formula(f.children()[0]) || formula(f.children()[1]);
      case K::kIff: return formula(f.children()[0]) == formula(f.children()[1]);
      case K::kForall:
      case K::kExists: {
        const bool universal = f.kind() == K::kForall;
        for (int a = 0; a < model_.size(); ++a) {
          env_.emplace_back(f.name(), a);
          const bool r = formula(f.children()[0]);
          env_.pop_back();
          if (r != universal) return !universal;
        }
        return universal;
      }
    }
    return false;
  }

 private:
  const LabeledModel& model_;
  Environment env_;
};

}  // namespace

bool satisfies(const LabeledModel& model, const FolFormula& formula, const Environment& env) {
  return Evaluator(model, env).formula(formula);
}

// ---- relabeling ------------------------------------------------------------

LabeledModel relabel(const LabeledModel& model, const Permutation& pi) {
  const int n = model.size();
  if (pi.size() != n) throw Error(ErrorCode::kRange, "permutation size mismatch");
  const Permutation inv = pi.inverse();
  LabeledModel out(model.signature_ptr(), n);
  const auto& syms = model.signature().symbols();
  std::vector<int> image;
  for (std::size_t s = 0; s < syms.size(); ++s) {
    std::size_t off = 0;
    const auto& src = model.table(s);
    auto& dst = out.table(s);
    fol::for_each_tuple(n, syms[s].arity, [&](std::span<const int> args) {
      std::size_t from = 0;
      for (int a : args) from = from * n + pi(a);
      dst[off++] = syms[s].kind == SymbolKind::kRelation ? src[from] : inv(src[from]);
    });
  }
  return out;
}

// ---- isomorphism search ----------------------------------------------------

namespace {

void guard(int n) {
  if (n > kPermutationGuard)
    throw Error(ErrorCode::kGuard, "domain size " + std::to_string(n) +
                                       " exceeds the permutation-search guard " +
                                       std::to_string(kPermutationGuard));
}

// Per-element invariants preserved by isomorphisms.
std::vector<std::vector<int>> element_colors(const LabeledModel& m) {
  const int n = m.size();
  std::vector<std::vector<int>> colors(n);
  const auto& syms = m.signature().symbols();
  for (std::size_t s = 0; s < syms.size(); ++s) {
    const int k = syms[s].arity;
    const auto& table = m.table(s);
    std::vector<std::vector<int>> counts(n, std::vector<int>(k + 2, 0));
    std::size_t off = 0;
    fol::for_each_tuple(n, k, [&](std::span<const int> args) {
      const int v = table[off++];
      const bool rel = syms[s].kind == SymbolKind::kRelation;
      if (rel && !v) return;
      for (int p = 0; p < k; ++p) ++counts[args[p]][p];
      if (!rel) ++counts[v][k];
      if (k > 0 && std::all_of(args.begin(), args.end(), [&](int a) { return a == args[0]; }))
        counts[args[0]][k + 1] += rel ? 1 : (v == args[0] ? 2 : 1);
    });
    for (int e = 0; e < n; ++e) colors[e].insert(colors[e].end(), counts[e].begin(), counts[e].end());
  }
  return colors;
}

class IsoSearch {
 public:
  // Enumerates pi with relabel(a, pi) == b; pi maps b's elements to a's.
  IsoSearch(const LabeledModel& a, const LabeledModel& b) : a_(a), b_(b), n_(a.size()) {}

  void run(const std::function<bool(const std::vector<int>&)>& found) {
    guard(n_);
    if (b_.size() != n_ || !(a_.signature() == b_.signature())) return;
    const auto& syms = a_.signature().symbols();
    for (std::size_t s = 0; s < syms.size(); ++s) {
      if (syms[s].kind != SymbolKind::kRelation) continue;
      if (syms[s].arity == 0 && a_.table(s) != b_.table(s)) return;
      const auto ca = std::count(a_.table(s).begin(), a_.table(s).end(), 1);
      const auto cb = std::count(b_.table(s).begin(), b_.table(s).end(), 1);
      if (ca != cb) return;
    }
    color_a_ = element_colors(a_);
    color_b_ = element_colors(b_);
    {
      auto sa = color_a_, sb = color_b_;
      std::sort(sa.begin(), sa.end());
      std::sort(sb.begin(), sb.end());
      if (sa != sb) return;
    }
    pi_.assign(n_, -1);
    used_.assign(n_, false);
    found_ = &found;
    stop_ = false;
    extend(0);
  }

 private:
  bool consistent(int i) const {
    const auto& syms = a_.signature().symbols();
    std::vector<int> image;
    for (std::size_t s = 0; s < syms.size(); ++s) {
      const int k = syms[s].arity;
      const auto& ta = a_.table(s);
      const auto& tb = b_.table(s);
      const bool rel = syms[s].kind == SymbolKind::kRelation;
      if (rel && k == 0) continue;
      bool ok = true;
      fol::for_each_tuple(i + 1, k, [&](std::span<const int> args) {
        if (!ok) return;
        std::size_t ob = 0, oa = 0;
        bool has_i = false;
        for (int x : args) {
          ob = ob * n_ + x;
          oa = oa * n_ + pi_[x];
          has_i |= x == i;
        }
        if (rel) {
          if (has_i && ta[oa] != tb[ob]) ok = false;
          return;
        }
        const int vb = tb[ob];
        if (vb > i || !(has_i || vb == i)) return;
        if (pi_[vb] != ta[oa]) ok = false;
      });
      if (!ok) return false;
    }
    return true;
  }

  void extend(int i) {
    if (stop_) return;
    if (i == n_) {
      if (!(*found_)(pi_)) stop_ = true;
      return;
    }
    for (int target = 0; target < n_ && !stop_; ++target) {
      if (used_[target] || color_b_[i] != color_a_[target]) continue;
      pi_[i] = target;
      used_[target] = true;
      if (consistent(i)) extend(i + 1);
      used_[target] = false;
      pi_[i] = -1;
    }
  }

  const LabeledModel& a_;
  const LabeledModel& b_;
  int n_;
  std::vector<std::vector<int>> color_a_, color_b_;
  std::vector<int> pi_;
  std::vector<bool> used_;
  const std::function<bool(const std::vector<int>&)>* found_ = nullptr;
  bool stop_ = false;
};

}  // namespace

std::vector<Permutation> automorphisms(const LabeledModel& model) {
  std::vector<Permutation> out;
  IsoSearch(model, model).run([&](const std::vector<int>& pi) {
    out.emplace_back(pi);
    return true;
  });
  return out;
}

std::optional<Permutation> is_isomorphic(const LabeledModel& a, const LabeledModel& b) {
  std::optional<Permutation> out;
  IsoSearch(a, b).run([&](const std::vector<int>& pi) {
    out.emplace(pi);
    return false;
  });
  return out;
}

LabeledModel canonical_form(const LabeledModel& model) {
  const int n = model.size();
  guard(n);
  const auto& syms = model.signature().symbols();
  const auto order = name_order(model.signature());
  std::vector<int> perm(n), inv(n), best_perm;
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::uint8_t> best, current;
  do {
    for (int i = 0; i < n; ++i) inv[perm[i]] = i;
    current.clear();
    for (std::size_t s : order) {
      const auto& table = model.table(s);
      const bool rel = syms[s].kind == SymbolKind::kRelation;
      fol::for_each_tuple(n, syms[s].arity, [&](std::span<const int> args) {
        std::size_t from = 0;
        for (int a : args) from = from * n + perm[a];
        if (rel) {
          current.push_back(static_cast<std::uint8_t>(table[from]));
        } else {
          const int v = inv[table[from]];
          for (int b = 0; b < n; ++b) current.push_back(v == b ? 1 : 0);
        }
      });
    }
    if (best_perm.empty() || current < best) {
      best.swap(current);
      best_perm = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return relabel(model, Permutation(best_perm));
}

bool is_absolutely_invariant(const LabeledModel& model, std::span<const int> subset) {
  std::vector<bool> in(model.size(), false);
  for (int x : subset) {
    if (x < 0 || x >= model.size()) throw Error(ErrorCode::kRange, "subset element out of range");
    in[x] = true;
  }
  for (const auto& f : automorphisms(model))
    for (int x : subset)
      if (!in[f(x)]) return false;
  return true;
}

BigInt burnside_labeled_count(std::span<const LabeledModel> unlabeled) {
  BigInt total = 0;
  for (const auto& m : unlabeled)
    total += factorial(static_cast<unsigned>(m.size())) / automorphisms(m).size();
  return total;
}

std::string format_model(const LabeledModel& model) {
  std::ostringstream out;
  const int n = model.size();
  const auto& syms = model.signature().symbols();
  out << "n = " << n << "\n";
  for (std::size_t s : name_order(model.signature())) {
    const auto& sym = syms[s];
    const auto& table = model.table(s);
    if (sym.arity == 0) {
      out << sym.name << " = " << table[0] << "\n";
      continue;
    }
    out << sym.name << ":\n";
    const std::size_t rows = table.size() / n;
    for (std::size_t r = 0; r < rows; ++r) {
      out << " ";
      if (sym.arity > 2) {
        std::vector<int> prefix;
        std::size_t rest = r;
        for (int p = 0; p < sym.arity - 1; ++p) {
          prefix.insert(prefix.begin(), static_cast<int>(rest % n));
          rest /= n;
        }
        out << " " << tuple_str(prefix);
      }
      for (int c = 0; c < n; ++c) out << ' ' << table[r * n + c];
      out << "\n";
    }
  }
  return out.str();
}

}  // namespace tba::models
