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

#include "tba/count_lab.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "parallel.hpp"
#include "tba/error.hpp"

namespace tba::count {

using fol::FolFormula;
using fol::FolTerm;

// ---- c-partitions ----------------------------------------------------------

CPartition::CPartition(std::vector<int> sizes) : sizes_(std::move(sizes)) {
  if (sizes_.empty()) throw Error(ErrorCode::kRange, "a c-partition needs at least one block");
  int start = 0;
  for (int s : sizes_) {
    if (s < 0) throw Error(ErrorCode::kRange, "negative block size");
    starts_.push_back(start);
    start += s;
  }
  n_ = start;
}

std::pair<int, int> CPartition::block(int i) const {
  return {starts_.at(i), starts_.at(i) + sizes_.at(i)};
}

int CPartition::block_of(int x) const {
  if (x < 0 || x >= n_) throw Error(ErrorCode::kRange, "element outside the partition");
  for (int i = m() - 1; i >= 0; --i)
    if (sizes_[i] > 0 && starts_[i] <= x) return i;
  return 0;
}

std::string CPartition::str() const {
  std::string out = "(";
  for (std::size_t i = 0; i < sizes_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(sizes_[i]);
  }
  return out + ")";
}

namespace {

void compositions(int remaining, std::size_t pos, std::vector<int>& sizes,
                  const std::function<void(const CPartition&)>& visit) {
  if (pos + 1 == sizes.size()) {
    sizes[pos] = remaining;
    visit(CPartition(sizes));
    return;
  }
  for (int s = 0; s <= remaining; ++s) {
    sizes[pos] = s;
    compositions(remaining - s, pos + 1, sizes, visit);
  }
}

}  // namespace

void enumerate_c_partitions(int n, int m, const std::function<void(const CPartition&)>& visit) {
  if (n < 1 || m < 1) throw Error(ErrorCode::kRange, "c-partitions need n >= 1 and m >= 1");
  std::vector<int> sizes(m, 0);
  compositions(n, 0, sizes, visit);
}

std::vector<CPartition> c_partitions(int n, int m) {
  std::vector<CPartition> out;
  enumerate_c_partitions(n, m, [&](const CPartition& x) { out.push_back(x); });
  return out;
}

BigInt count_c_partitions(int n, int m) {
  if (n < 1 || m < 1) throw Error(ErrorCode::kRange, "c-partitions need n >= 1 and m >= 1");
  BigInt total = 0;
  for (int k = 1; k <= m; ++k) total += binomial(m, k) * binomial(n - 1, k - 1);
  return total;
}

// ---- partition specs -------------------------------------------------------

std::string to_string(Orientation o) {
  switch (o) {
    case Orientation::kFree: return "free";
    case Orientation::kHolds: return "R(x,y)";
    case Orientation::kHoldsReversed: return "R(y,x)";
    case Orientation::kFails: return "~R(x,y)";
    case Orientation::kFailsReversed: return "~R(y,x)";
  }
  return {};
}

GoodPartitionSpec::GoodPartitionSpec(std::vector<FolFormula> layers, std::string variable)
    : layers_(std::move(layers)), variable_(std::move(variable)) {
  if (layers_.empty()) throw Error(ErrorCode::kUsage, "a partition needs at least one layer");
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    auto free = layers_[i].free_variables();
    free.erase(variable_);
    if (!free.empty())
      throw Error(ErrorCode::kFreeVariable, "layer " + std::to_string(i) +
                                                " has free variable " + *free.begin());
  }
  table_.assign(layers_.size() * layers_.size(), Orientation::kFree);
}

void GoodPartitionSpec::set_orientation(int i, int j, Orientation o) {
  if (i < 0 || j < i || j >= m())
    throw Error(ErrorCode::kRange, "orientation entries need 0 <= i <= j < m");
  table_[i * m() + j] = o;
}

Orientation GoodPartitionSpec::orientation(int i, int j) const {
  if (i < 0 || j < i || j >= m())
    throw Error(ErrorCode::kRange, "orientation entries need 0 <= i <= j < m");
  return table_[i * m() + j];
}

GoodPartitionSpec trivial_partition_spec() {
  return GoodPartitionSpec({FolFormula::truth(true)});
}

const fol::Symbol& single_binary_relation(const fol::Signature& signature) {
  const auto& syms = signature.symbols();
  if (syms.size() != 1 || syms[0].kind != fol::SymbolKind::kRelation || syms[0].arity != 2)
    throw Error(ErrorCode::kShape,
                "partition kills need a signature with exactly one binary relation");
  return syms[0];
}

Assignment kill_for_partition(const GoodPartitionSpec& spec, const CPartition& x,
                              const fol::PropTheory& theory) {
  if (spec.m() != x.m())
    throw Error(ErrorCode::kShape, "partition " + x.str() + " does not have " +
                                       std::to_string(spec.m()) + " blocks");
  if (x.n() != theory.n)
    throw Error(ErrorCode::kShape, "partition " + x.str() + " is not over I_" +
                                       std::to_string(theory.n));
  const auto& rel = single_binary_relation(theory.signature);
  Assignment kills;
  auto fix = [&](int a, int b, bool value) {
    const int pair[] = {a, b};
    auto [it, inserted] = kills.emplace(fol::relation_letter(rel.name, pair), value);
    if (!inserted && it->second != value)
      throw Error(ErrorCode::kShape, "orientation table contradicts itself on " + it->first.str());
  };
  for (int k = 0; k < x.m(); ++k)
    for (int l = k; l < x.m(); ++l) {
      const Orientation o = spec.orientation(k, l);
      if (o == Orientation::kFree) continue;
      const auto [k0, k1] = x.block(k);
      const auto [l0, l1] = x.block(l);
      for (int i = k0; i < k1; ++i)
        for (int j = l0; j < l1; ++j) {
          if (i == j) continue;
          switch (o) {
            case Orientation::kHolds: fix(i, j, true); break;
            case Orientation::kHoldsReversed: fix(j, i, true); break;
            case Orientation::kFails: fix(i, j, false); break;
            case Orientation::kFailsReversed: fix(j, i, false); break;
            case Orientation::kFree: break;
          }
        }
    }
  return kills;
}

BigInt definable_constants_factor(int k, int n) {
  if (k < 0 || k > n) throw Error(ErrorCode::kRange, "need 0 <= k <= n");
  BigInt out = 1;
  for (int i = 0; i < k; ++i) out *= n - i;
  return out;
}

bool defines_partition(const GoodPartitionSpec& spec, const models::LabeledModel& model,
                       const CPartition& x) {
  for (int i = 0; i < spec.m(); ++i)
    for (int a = 0; a < model.size(); ++a) {
      const bool in_block = x.sizes()[i] > 0 && x.block_of(a) == i;
      if (models::satisfies(model, spec.layers()[i], {{spec.variable(), a}}) != in_block)
        return false;
    }
  return true;
}

// ---- counting procedure ----------------------------------------------------

std::string CountReport::to_table() const {
  std::ostringstream out;
  out << "# tba-report v1\n";
  out << "# n: " << n << "\n";
  if (constants_factor != 1) out << "# constants-factor: " << constants_factor << "\n";
  out << "# sizes | free | K_X | kappa_X | multiplicity | contribution\n";
  for (const auto& row : rows) {
    out << row.partition.str() << " | ";
    if (row.conflict) out << "conflict";
    else out << row.free_letters;
    out << " | " << row.labeled << " | " << row.unlabeled << " | " << row.multiplicity << " | "
        << row.contribution << "\n";
  }
  out << "# l: " << labeled_total << "\n";
  out << "# kappa: " << unlabeled_total << "\n";
  return out.str();
}

namespace {

BigInt multiplicity(const CPartition& x) {
  BigInt out = 1;
  int beta = x.n();
  for (int a : x.sizes()) {
    out *= binomial(beta, a);
    beta -= a;
  }
  return out;
}

struct Prepared {
  bool conflict = false;
  Assignment fixed;
  std::vector<LetterName> free;
};

}  // namespace

CountReport tba_count(const fol::PropTheory& theory, const GoodPartitionSpec& spec,
                      const Assignment& base_assumptions, const CountOptions& options) {
  const int n = theory.n;
  Assignment base = theory.assumptions;
  for (const auto& [letter, value] : base_assumptions) base[letter] = value;
  for (const auto& [letter, value] : base)
    if (!std::binary_search(theory.letters.begin(), theory.letters.end(), letter))
      throw Error(ErrorCode::kUnbound, "assumption names unknown letter " + letter.str());

  const bool trivial = spec.m() == 1;
  if (!trivial) single_binary_relation(theory.signature);
  const auto partitions = c_partitions(n, spec.m());

  std::vector<Prepared> prepared(partitions.size());
  for (std::size_t p = 0; p < partitions.size(); ++p) {
    Prepared& prep = prepared[p];
    prep.fixed = base;
    if (!trivial) {
      for (const auto& [letter, value] : kill_for_partition(spec, partitions[p], theory)) {
        auto [it, inserted] = prep.fixed.emplace(letter, value);
        if (!inserted && it->second != value) prep.conflict = true;
      }
    }
    if (prep.conflict) continue;
    for (const auto& letter : theory.letters)
      if (!prep.fixed.contains(letter)) prep.free.push_back(letter);
    if (static_cast<int>(prep.free.size()) > options.engine.max_vars)
      throw Error(ErrorCode::kCapExceeded,
                  "partition " + partitions[p].str() + " leaves " +
                      std::to_string(prep.free.size()) + " free letters, above the cap of " +
                      std::to_string(options.engine.max_vars));
  }

  CountReport report;
  report.n = n;
  report.constants_factor = definable_constants_factor(options.definable_constants, n);
  report.rows.resize(partitions.size());
  const BoolTerm theta = theory.theta();
  engine::EngineOptions inner = options.engine;
  inner.workers = 1;

  detail::parallel_for(partitions.size(), engine::resolve_workers(options.engine.workers),
                       [&](std::uint64_t p, unsigned) {
    PartitionRow& row = report.rows[p];
    const Prepared& prep = prepared[p];
    row.partition = partitions[p];
    row.multiplicity = multiplicity(partitions[p]) * report.constants_factor;
    row.conflict = prep.conflict;
    if (prep.conflict) return;
    row.free_letters = static_cast<int>(prep.free.size());
    const BoolTerm reduced = reduce_constants(substitute(theta, prep.fixed));
    std::set<std::vector<std::uint8_t>> seen;
    engine::for_each_model(reduced, prep.free, inner, [&](std::uint64_t index) {
      Valuation mu = prep.fixed;
      mu.merge(valuation_at(prep.free, index));
      const auto model = models::decode_model(mu, theory);
      if (!trivial && !defines_partition(spec, model, partitions[p])) return true;
      ++row.labeled;
      auto canonical = models::canonical_form(model);
      if (seen.insert(canonical.encode()).second && options.keep_models)
        row.representatives.push_back(std::move(canonical));
      return true;
    });
    row.unlabeled = seen.size();
    row.contribution = row.multiplicity * row.labeled;
  });

  for (const auto& row : report.rows) {
    report.labeled_total += row.contribution;
    report.unlabeled_total += row.unlabeled;
  }
  return report;
}

// ---- bounded posets --------------------------------------------------------

namespace {

class LayerBuilder {
 public:
  explicit LayerBuilder(std::string relation) : relation_(std::move(relation)) {}

  FolFormula layer(int k, const std::string& x) {
    const std::string y = fresh();
    if (k == 0)
      return FolFormula::forall(y, rel(x, y));
    std::vector<FolFormula> placed_y, not_placed_x;
    for (int i = 0; i < k; ++i) {
      placed_y.push_back(layer(i, y));
      not_placed_x.push_back(FolFormula::negate(layer(i, x)));
    }
    FolFormula below = FolFormula::all_of(
        {rel(y, x), FolFormula::negate(FolFormula::any_of(std::move(placed_y)))});
    FolFormula minimal = FolFormula::forall(
        y, FolFormula::implies(std::move(below),
                               FolFormula::equal(FolTerm::variable(y), FolTerm::variable(x))));
    not_placed_x.insert(not_placed_x.begin(), std::move(minimal));
    return FolFormula::all_of(std::move(not_placed_x));
  }

 private:
  FolFormula rel(const std::string& a, const std::string& b) const {
    return FolFormula::relation(relation_, {FolTerm::variable(a), FolTerm::variable(b)});
  }
  std::string fresh() { return "y" + std::to_string(++counter_); }

  std::string relation_;
  int counter_ = 0;
};

}  // namespace

GoodPartitionSpec poset_layer_spec(int n, const std::string& relation) {
  if (n < 2) throw Error(ErrorCode::kRange, "bounded posets need n >= 2");
  LayerBuilder builder(relation);
  std::vector<FolFormula> layers;
  for (int k = 0; k < n; ++k) layers.push_back(builder.layer(k, "x"));
  GoodPartitionSpec spec(std::move(layers));
  for (int k = 0; k < n; ++k)
    for (int l = k; l < n; ++l) spec.set_orientation(k, l, Orientation::kFailsReversed);
  return spec;
}

Assignment poset_base_kills(int n, const std::string& relation) {
  if (n < 2) throw Error(ErrorCode::kRange, "bounded posets need n >= 2");
  Assignment kills;
  auto fix = [&](int a, int b, bool value) {
    const int pair[] = {a, b};
    kills[fol::relation_letter(relation, pair)] = value;
  };
  for (int i = 0; i < n; ++i) {
    fix(0, i, true);
    fix(i, n - 1, true);
    fix(i, i, true);
  }
  for (int j = 1; j < n; ++j) fix(j, 0, false);
  for (int k = 0; k < n - 1; ++k) fix(n - 1, k, false);
  return kills;
}

BigInt poset_cpartition_count(int n) {
  if (n < 3) throw Error(ErrorCode::kRange, "middle-layer compositions need n >= 3");
  // Compositions of n-2 into positive parts, one per layer order.
  BigInt total = 0;
  const int middle = n - 2;
  for (int parts = 1; parts <= middle; ++parts)
    enumerate_c_partitions(middle, parts, [&](const CPartition& x) {
      if (std::none_of(x.sizes().begin(), x.sizes().end(), [](int s) { return s == 0; })) ++total;
    });
  return total;
}

}  // namespace tba::count
