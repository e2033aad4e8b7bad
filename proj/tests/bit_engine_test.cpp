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

#include "tba/bit_engine.hpp"

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "support.hpp"
#include "tba/error.hpp"

namespace {

using tba::BoolTerm;
using tba::LetterName;
using namespace tba::engine;
using support::x;
using tba::BigInt;

BoolTerm X(int i) { return BoolTerm::var(x(i)); }

TEST(FreeVectors, MatrixRows) {
  const FreeVectorScheme s{3};
  EXPECT_EQ(free_vector(s, 1).to_string(), "00001111");
  EXPECT_EQ(free_vector(s, 2).to_string(), "00110011");
  EXPECT_EQ(free_vector(s, 3).to_string(), "01010101");
  EXPECT_TRUE(free_vector_bit(s, 3, 1));
  EXPECT_FALSE(free_vector_bit(FreeVectorScheme{1}, 1, 0));
  EXPECT_THROW(free_vector_bit(s, 0, 0), tba::Error);
  EXPECT_THROW(free_vector_bit(s, 4, 0), tba::Error);
  EXPECT_THROW(free_vector_bit(s, 1, 8), tba::Error);
}

TEST(FreeVectors, RowsAreIndependent) {
  for (int v = 1; v <= 4; ++v) {
    std::vector<BitVector> rows;
    for (int i = 1; i <= v; ++i) rows.push_back(free_vector(FreeVectorScheme{v}, i));
    EXPECT_TRUE(is_independent(rows)) << v;
  }
}

TEST(Independence, Examples) {
  std::vector<BitVector> a{BitVector::from_string("0011"), BitVector::from_string("0101")};
  EXPECT_TRUE(is_independent(a));
  std::vector<BitVector> b{BitVector::from_string("0011"), BitVector::from_string("0011")};
  EXPECT_FALSE(is_independent(b));
  std::vector<BitVector> c{BitVector::from_string("0011"), BitVector::from_string("01")};
  EXPECT_THROW(is_independent(c), tba::Error);
  EXPECT_THROW(is_independent(std::span<const BitVector>{}), tba::Error);
}

TEST(Independence, CountMatchesBruteForce) {
  EXPECT_EQ(count_free_generating_sets(1), 2);
  EXPECT_EQ(count_free_generating_sets(2), 12);
  EXPECT_EQ(count_free_generating_sets(3), 6720);
  EXPECT_EQ(count_free_generating_sets(2), oracle::count_independent_pairs());
  std::uint64_t singles = 0;
  for (unsigned a = 0; a < 4; ++a) {
    BitVector bv(2);
    bv.set(0, a & 1);
    bv.set(1, a & 2);
    std::vector<BitVector> one{bv};
    singles += is_independent(one);
  }
  EXPECT_EQ(singles, 2u);
  EXPECT_THROW(count_free_generating_sets(0), tba::Error);
}

TEST(EvalChunk, Examples) {
  const auto order2 = support::letters(2);
  EXPECT_EQ(eval_chunk(BoolTerm::all_of({X(0), BoolTerm::negate(X(1))}), order2, 0, 2).to_string(),
            "0010");
  const auto order3 = support::letters(3);
  EXPECT_EQ(eval_chunk(X(0), order3, 1, 2).to_string(), "1111");
  EXPECT_EQ(eval_chunk(BoolTerm::constant(true), order3, 3, 1).to_string(), "11");
  EXPECT_THROW(eval_chunk(X(0), order3, 0, 4), tba::Error);
}

TEST(EvalFull, Examples) {
  const auto order2 = support::letters(2);
  const auto r = eval_full(BoolTerm::any_of({X(0), X(1)}), order2);
  EXPECT_EQ(r.dnf.bits().to_string(), "0111");
  EXPECT_EQ(r.dnf.model_count(), 3);
  EXPECT_EQ(enumerate_models(r.dnf), (std::vector<std::uint64_t>{1, 2, 3}));
  EXPECT_EQ(enumerate_models(r.dnf, 2), (std::vector<std::uint64_t>{1, 2}));
  const auto order1 = support::letters(1);
  const auto c = eval_full(BoolTerm::all_of({X(0), BoolTerm::negate(X(0))}), order1);
  EXPECT_EQ(c.dnf.bits().to_string(), "00");
  EXPECT_EQ(c.dnf.model_count(), 0);
  EXPECT_TRUE(enumerate_models(c.dnf).empty());
}

TEST(EvalFull, ZeroVariables) {
  const auto one = eval_full(BoolTerm::constant(true), {});
  EXPECT_EQ(one.dnf.bits().to_string(), "1");
  EXPECT_EQ(one.dnf.model_count(), 1);
  const auto zero = eval_full(BoolTerm::constant(false), {});
  EXPECT_EQ(zero.dnf.model_count(), 0);
}

TEST(EvalFull, CapIsEnforced) {
  const auto order = support::letters(31);
  try {
    eval_full(X(0), order);
    FAIL();
  } catch (const tba::Error& e) {
    EXPECT_EQ(e.code(), tba::ErrorCode::kCapExceeded);
    EXPECT_NE(std::string(e.what()).find("31"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("30"), std::string::npos);
  }
  EngineOptions opts;
  opts.max_vars = 41;
  EXPECT_THROW(count_models(X(0), order, opts), tba::Error);
}

TEST(EvalFull, UnknownLetterIsRejected) {
  EXPECT_THROW(eval_full(BoolTerm::var(LetterName("zz")), support::letters(2)), tba::Error);
}

TEST(EvalFull, OracleEquivalenceAndDeterminism) {
  std::mt19937 rng(77);
  for (int round = 0; round < 30; ++round) {
    const int v = 1 + round % 11;
    const auto order = support::letters(v);
    const BoolTerm t = support::random_term(rng, v, 6);
    EngineOptions base;
    base.workers = 1;
    const auto ref = eval_full(t, order, base);
    for (std::uint64_t i = 0; i < (1ull << v); ++i)
      ASSERT_EQ(ref.dnf.bit(i), tba::eval_naive(t, tba::valuation_at(order, i)));
    for (int k : {0, 3, 6, 9, v}) {
      for (unsigned w : {1u, 2u, 0u}) {
        EngineOptions o;
        o.log_chunk = k;
        o.workers = w;
        EXPECT_EQ(eval_full(t, order, o).dnf, ref.dnf);
      }
    }
    EngineOptions naive;
    naive.backend = Backend::kNaive;
    EXPECT_EQ(eval_full(t, order, naive).dnf, ref.dnf);
    EXPECT_EQ(count_models(t, order).model_count, ref.dnf.model_count());
    EXPECT_EQ(BigInt(enumerate_models(ref.dnf).size()), ref.dnf.model_count());
  }
}

TEST(EvalFull, ChunksConcatenate) {
  std::mt19937 rng(5);
  const int v = 9;
  const auto order = support::letters(v);
  const BoolTerm t = support::random_term(rng, v, 7);
  const auto full = eval_full(t, order).dnf.bits().to_string();
  for (int k : {2, 6, 7}) {
    std::string glued;
    for (std::uint64_t j = 0; j < (1ull << (v - k)); ++j) glued += eval_chunk(t, order, j, k).to_string();
    EXPECT_EQ(glued, full) << k;
  }
}

TEST(ForEachModel, MatchesMaterialized) {
  std::mt19937 rng(9);
  for (int round = 0; round < 10; ++round) {
    const int v = 4 + round;
    const auto order = support::letters(v);
    const BoolTerm t = support::random_term(rng, v, 6);
    std::vector<std::uint64_t> seen;
    EngineOptions o;
    o.workers = 2;
    o.log_chunk = 6;
    for_each_model(t, order, o, [&](std::uint64_t i) {
      seen.push_back(i);
      return true;
    });
    EXPECT_EQ(seen, enumerate_models(eval_full(t, order).dnf));
  }
}

TEST(ForEachModel, StopsEarly) {
  const auto order = support::letters(8);
  int visits = 0;
  for_each_model(BoolTerm::constant(true), order, {}, [&](std::uint64_t) { return ++visits < 5; });
  EXPECT_EQ(visits, 5);
}

TEST(Stats, Estimates) {
  EXPECT_EQ(estimate_cycles(7, 4, 4).estimated_ops, 7);
  EXPECT_EQ(estimate_cycles(3, 10, 5).estimated_ops, 96);
  EXPECT_EQ(estimate_cycles(1, 6, 6).estimated_ops, 1);
  const auto r = eval_full(X(0), support::letters(8));
  EXPECT_EQ(r.stats.v, 8);
  EXPECT_EQ(r.stats.estimated_ops, BigInt(r.stats.node_count) << (8 - r.stats.k));
}

TEST(BitVector, RoundTrip) {
  const auto b = BitVector::from_string("0110100");
  EXPECT_EQ(b.to_string(), "0110100");
  EXPECT_EQ(b.popcount(), 3u);
  EXPECT_THROW(BitVector::from_string("01x"), tba::Error);
}

}  // namespace
