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

#include <gtest/gtest.h>

#include <set>

#include "oracles.hpp"
#include "support.hpp"
#include "tba/error.hpp"

namespace {

using tba::BigInt;
using tba::LetterName;
using namespace tba::count;
using tba::fol::FolFormula;

tba::fol::PropTheory bounded_posets(int n) {
  const auto axioms = support::bounded_poset_axioms();
  return tba::fol::ground_theory(std::span<const FolFormula>(axioms), n,
                                 support::order_signature());
}

TEST(CPartitions, SmallCounts) {
  EXPECT_EQ(count_c_partitions(2, 2), 3);
  EXPECT_EQ(count_c_partitions(3, 2), 4);
  const auto all = c_partitions(3, 2);
  ASSERT_EQ(all.size(), 4u);
  EXPECT_EQ(all.front().sizes(), (std::vector<int>{0, 3}));
  const CPartition x({2, 1});
  EXPECT_EQ(x.block(0), std::make_pair(0, 2));
  EXPECT_EQ(x.block(1), std::make_pair(2, 3));
  EXPECT_EQ(x.block_of(2), 1);
  EXPECT_EQ(x.str(), "(2,1)");
  EXPECT_THROW(count_c_partitions(0, 1), tba::Error);
}

TEST(CPartitions, StreamMatchesClosedForm) {
  for (int n = 1; n <= 8; ++n)
    for (int m = 1; m <= 8; ++m) {
      std::uint64_t streamed = 0;
      std::set<std::vector<int>> distinct;
      enumerate_c_partitions(n, m, [&](const CPartition& x) {
        ++streamed;
        distinct.insert(x.sizes());
        EXPECT_EQ(x.n(), n);
        for (int a = 0; a < n; ++a) {
          const auto [lo, hi] = x.block(x.block_of(a));
          EXPECT_TRUE(lo <= a && a < hi);
        }
      });
      EXPECT_EQ(BigInt(streamed), count_c_partitions(n, m));
      EXPECT_EQ(distinct.size(), streamed);
    }
}

TEST(CPartitions, LexicographicOrder) {
  const auto all = c_partitions(4, 3);
  for (std::size_t i = 1; i < all.size(); ++i) EXPECT_LT(all[i - 1].sizes(), all[i].sizes());
}

TEST(Kills, UnconstrainedSpecKillsNothing) {
  const auto theory = bounded_posets(3);
  GoodPartitionSpec spec({FolFormula::truth(true), FolFormula::truth(true)});
  EXPECT_TRUE(kill_for_partition(spec, CPartition({1, 2}), theory).empty());
}

TEST(Kills, LayeredGraphOrientation) {
  const auto theory = bounded_posets(3);
  GoodPartitionSpec spec({FolFormula::truth(true), FolFormula::truth(true)});
  for (int k = 0; k < 2; ++k)
    for (int l = k; l < 2; ++l) spec.set_orientation(k, l, Orientation::kFails);
  const auto kills = kill_for_partition(spec, CPartition({1, 2}), theory);
  // (0,1), (0,2) across layers, (1,2) and (2,1) inside the second layer.
  EXPECT_EQ(kills.size(), 4u);
  for (const auto& [letter, value] : kills) EXPECT_FALSE(value);
  EXPECT_FALSE(kills.contains(LetterName("R", {1, 0})));
  EXPECT_THROW(spec.set_orientation(1, 0, Orientation::kFails), tba::Error);
}

TEST(Kills, RequiresSingleBinaryRelation) {
  tba::fol::Signature sig;
  sig.add_relation("R", 2);
  sig.add_constant("c");
  const auto theory = tba::fol::ground_theory(std::span<const FolFormula>{}, 2, sig);
  GoodPartitionSpec spec({FolFormula::truth(true), FolFormula::truth(true)});
  try {
    kill_for_partition(spec, CPartition({1, 1}), theory);
    FAIL();
  } catch (const tba::Error& e) {
    EXPECT_EQ(e.code(), tba::ErrorCode::kShape);
  }
}

TEST(Kills, PosetLayersAtFour) {
  const auto theory = bounded_posets(4);
  const auto spec = poset_layer_spec(4);
  const CPartition x({1, 2, 1, 0});
  auto fixed = poset_base_kills(4);
  EXPECT_EQ(fixed.size(), 14u);
  bool conflict = false;
  for (const auto& [letter, value] : kill_for_partition(spec, x, theory)) {
    auto [it, inserted] = fixed.emplace(letter, value);
    conflict |= !inserted && it->second != value;
  }
  EXPECT_FALSE(conflict);
  // The two middle letters R(1,2), R(2,1) are killed by the same-layer entry.
  EXPECT_EQ(fixed.size(), 16u);
  EXPECT_FALSE(fixed.at(LetterName("R", {1, 2})));
}

TEST(Constants, FallingFactorial) {
  EXPECT_EQ(definable_constants_factor(2, 5), 20);
  EXPECT_EQ(definable_constants_factor(0, 5), 1);
  EXPECT_EQ(definable_constants_factor(3, 3), 6);
  EXPECT_THROW(definable_constants_factor(4, 3), tba::Error);
}

TEST(PosetSpec, BaseKills) {
  for (int n = 2; n <= 10; ++n) EXPECT_EQ(poset_base_kills(n).size(), std::size_t(5 * n - 6)) << n;
  EXPECT_EQ(64 - poset_base_kills(8).size(), 30u);
  EXPECT_THROW(poset_base_kills(1), tba::Error);
}

TEST(PosetSpec, CPartitionCount) {
  EXPECT_EQ(poset_cpartition_count(3), 1);
  EXPECT_EQ(poset_cpartition_count(10), 128);
  for (int n = 3; n <= 12; ++n) EXPECT_EQ(poset_cpartition_count(n), BigInt(1) << (n - 3));
}

TEST(PosetSpec, LayersMatchDirectComputation) {
  // On every bounded poset, the layer formulas agree with peeling off
  // minimal elements one round at a time.
  for (int n = 2; n <= 4; ++n) {
    const auto spec = poset_layer_spec(n);
    for (std::uint64_t mask = 0; mask < (1ull << (n * n)); ++mask) {
      if (!oracle::is_partial_order(mask, n) || !oracle::has_least_and_greatest(mask, n)) continue;
      tba::models::LabeledModel m(support::order_signature(), n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          const int t[] = {i, j};
          m.set_holds("R", t, oracle::rel(mask, n, i, j));
        }
      std::vector<int> layer(n, -1);
      for (int round = 0, placed = 0; placed < n; ++round) {
        std::vector<int> now;
        for (int a = 0; a < n; ++a) {
          if (layer[a] >= 0) continue;
          bool minimal = true;
          for (int b = 0; b < n; ++b)
            if (b != a && layer[b] < 0 && oracle::rel(mask, n, b, a)) minimal = false;
          if (minimal) now.push_back(a);
        }
        if (round == 0 && now.size() != 1) break;
        for (int a : now) layer[a] = round;
        placed += static_cast<int>(now.size());
      }
      for (int a = 0; a < n; ++a)
        for (int k = 0; k < n; ++k)
          EXPECT_EQ(tba::models::satisfies(m, spec.layers()[k], {{"x", a}}), layer[a] == k);
    }
  }
}

TEST(TbaCount, BoundedPosets) {
  const std::pair<int, int> expected[] = {{2, 1}, {6, 1}, {36, 2}, {0, 0}};
  for (int n = 2; n <= 5; ++n) {
    const auto report = tba_count(bounded_posets(n), poset_layer_spec(n), poset_base_kills(n));
    const auto brute = oracle::count_relations(n, [&](std::uint64_t m) {
      return oracle::is_partial_order(m, n) && oracle::has_least_and_greatest(m, n);
    });
    if (n <= 4) {
      EXPECT_EQ(report.labeled_total, expected[n - 2].first);
      EXPECT_EQ(report.unlabeled_total, expected[n - 2].second);
    }
    EXPECT_EQ(report.labeled_total, BigInt(brute.labeled)) << n;
    EXPECT_EQ(report.unlabeled_total, BigInt(brute.unlabeled)) << n;
    BigInt sum = 0, kappa = 0;
    for (const auto& row : report.rows) {
      EXPECT_EQ(row.contribution, row.multiplicity * row.labeled);
      sum += row.contribution;
      kappa += row.unlabeled;
    }
    EXPECT_EQ(sum, report.labeled_total);
    EXPECT_EQ(kappa, report.unlabeled_total);
  }
}

TEST(TbaCount, PartitionsAreDisjoint) {
  for (int n = 3; n <= 5; ++n) {
    CountOptions opts;
    opts.keep_models = true;
    const auto report =
        tba_count(bounded_posets(n), poset_layer_spec(n), poset_base_kills(n), opts);
    std::set<std::vector<std::uint8_t>> seen;
    std::size_t total = 0;
    for (const auto& row : report.rows)
      for (const auto& m : row.representatives) {
        ++total;
        seen.insert(m.encode());
      }
    EXPECT_EQ(seen.size(), total);
    EXPECT_EQ(BigInt(total), report.unlabeled_total);
  }
}

TEST(TbaCount, TrivialPartitionCountsEverything) {
  for (int n = 2; n <= 4; ++n) {
    const auto axioms = support::poset_axioms();
    const auto theory = tba::fol::ground_theory(std::span<const FolFormula>(axioms), n,
                                                support::order_signature());
    const auto report = tba_count(theory, trivial_partition_spec(), {});
    const auto brute = oracle::count_relations(n, [&](std::uint64_t m) {
      return oracle::is_partial_order(m, n);
    });
    EXPECT_EQ(report.labeled_total, BigInt(brute.labeled));
    EXPECT_EQ(report.unlabeled_total, BigInt(brute.unlabeled));
  }
}

TEST(TbaCount, DefinableConstantsFactor) {
  // Bounded posets with 0 least and n-1 greatest fixed, no partition:
  // l = n (n - 1) |K|.
  for (int n = 2; n <= 4; ++n) {
    CountOptions opts;
    opts.definable_constants = 2;
    const auto report = tba_count(bounded_posets(n), trivial_partition_spec(), poset_base_kills(n), opts);
    const auto brute = oracle::count_relations(n, [&](std::uint64_t m) {
      return oracle::is_partial_order(m, n) && oracle::has_least_and_greatest(m, n);
    });
    EXPECT_EQ(report.labeled_total, BigInt(brute.labeled)) << n;
  }
}

TEST(TbaCount, CapNamesPartition) {
  CountOptions opts;
  opts.engine.max_vars = 1;
  try {
    tba_count(bounded_posets(4), trivial_partition_spec(), poset_base_kills(4), opts);
    FAIL();
  } catch (const tba::Error& e) {
    EXPECT_EQ(e.code(), tba::ErrorCode::kCapExceeded);
    EXPECT_NE(std::string(e.what()).find("partition (4)"), std::string::npos);
  }
}

TEST(TbaCount, ParallelMatchesSerial) {
  CountOptions serial, parallel;
  parallel.engine.workers = 0;
  const auto a = tba_count(bounded_posets(4), poset_layer_spec(4), poset_base_kills(4), serial);
  const auto b = tba_count(bounded_posets(4), poset_layer_spec(4), poset_base_kills(4), parallel);
  EXPECT_EQ(a.to_table(), b.to_table());
}

TEST(TbaCount, ReportTable) {
  const auto report = tba_count(bounded_posets(3), poset_layer_spec(3), poset_base_kills(3));
  const auto table = report.to_table();
  EXPECT_EQ(table.rfind("# tba-report v1\n# n: 3\n", 0), 0u);
  EXPECT_NE(table.find("(1,1,1) | 0 | 1 | 1 | 6 | 6\n"), std::string::npos);
  EXPECT_NE(table.find("# l: 6\n# kappa: 1\n"), std::string::npos);
  EXPECT_NE(table.find("conflict"), std::string::npos);
}

}  // namespace
