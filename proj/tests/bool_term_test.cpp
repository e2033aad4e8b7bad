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

#include "tba/bool_term.hpp"

#include <gtest/gtest.h>

#include <random>

#include "support.hpp"
#include "tba/error.hpp"

namespace {

using tba::Assignment;
using tba::BoolOp;
using tba::BoolTerm;
using tba::LetterName;
using support::x;

const BoolTerm X = BoolTerm::var(LetterName("x"));
const BoolTerm Y = BoolTerm::var(LetterName("y"));
const BoolTerm Z = BoolTerm::var(LetterName("z"));

TEST(BoolTerm, NaryNodesNeedTwoChildren) {
  EXPECT_THROW(BoolTerm::all_of({X}), tba::Error);
  EXPECT_THROW(BoolTerm::any_of({}), tba::Error);
  EXPECT_EQ(tba::conjunction({}), BoolTerm::constant(true));
  EXPECT_EQ(tba::disjunction({}), BoolTerm::constant(false));
  EXPECT_EQ(tba::conjunction({X}), X);
}

TEST(BoolTerm, ReduceIdentityAndAbsorbing) {
  EXPECT_EQ(tba::reduce_constants(BoolTerm::all_of({X, BoolTerm::constant(true)})), X);
  EXPECT_EQ(tba::reduce_constants(BoolTerm::any_of({X, BoolTerm::constant(true)})),
            BoolTerm::constant(true));
  EXPECT_EQ(tba::reduce_constants(BoolTerm::exclusive_or(BoolTerm::constant(true), Z)),
            BoolTerm::negate(Z));
}

TEST(BoolTerm, ReduceDoubleNegation) {
  EXPECT_EQ(tba::reduce_constants(BoolTerm::negate(BoolTerm::negate(X))), X);
  EXPECT_EQ(tba::reduce_constants(BoolTerm::iff(X, BoolTerm::constant(false))),
            BoolTerm::negate(X));
  EXPECT_EQ(tba::reduce_constants(BoolTerm::implies(X, BoolTerm::constant(false))),
            BoolTerm::negate(X));
}

TEST(BoolTerm, Substitute) {
  EXPECT_EQ(tba::substitute(BoolTerm::all_of({X, Y}), {{LetterName("x"), true}}),
            BoolTerm::all_of({BoolTerm::constant(true), Y}));
  EXPECT_EQ(tba::substitute(X, {}), X);
  const Assignment a{{LetterName("x"), false}, {LetterName("y"), true}};
  EXPECT_EQ(tba::reduce_constants(tba::substitute(BoolTerm::implies(X, Y), a)),
            BoolTerm::constant(true));
}

TEST(BoolTerm, EvalNaive) {
  EXPECT_FALSE(tba::eval_naive(BoolTerm::exclusive_or(X, Y),
                               {{LetterName("x"), true}, {LetterName("y"), true}}));
  EXPECT_TRUE(tba::eval_naive(BoolTerm::constant(true), {}));
  EXPECT_TRUE(tba::eval_naive(BoolTerm::all_of({X, BoolTerm::negate(Y)}),
                              {{LetterName("x"), true}, {LetterName("y"), false}}));
}

TEST(BoolTerm, EvalNaiveNamesMissingLetter) {
  try {
    tba::eval_naive(BoolTerm::all_of({X, Y}), {{LetterName("x"), true}});
    FAIL();
  } catch (const tba::Error& e) {
    EXPECT_EQ(e.code(), tba::ErrorCode::kUnbound);
    EXPECT_NE(std::string(e.what()).find("y"), std::string::npos);
  }
}

TEST(BoolTerm, VarsAndNodeCount) {
  const auto p01 = BoolTerm::var(LetterName("p", {0, 1}));
  const auto p10 = BoolTerm::var(LetterName("p", {1, 0}));
  const auto v = tba::vars(BoolTerm::all_of({p10, p01, p10}));
  ASSERT_EQ(v.size(), 2u);
  EXPECT_EQ(v[0].str(), "p(0,1)");
  EXPECT_EQ(v[1].str(), "p(1,0)");
  EXPECT_EQ(tba::node_count(X), 1u);
  EXPECT_EQ(tba::node_count(BoolTerm::all_of({X, Y, Z})), 5u);
  EXPECT_EQ(tba::node_count(BoolTerm::negate(X)), 2u);
}

TEST(BoolTerm, CanonicalLetterOrder) {
  EXPECT_LT(LetterName("R", {0, 5}), LetterName("R", {1, 0}));
  EXPECT_LT(LetterName("R", {9, 9}), LetterName("S", {0, 0}));
  EXPECT_EQ(LetterName("u").str(), "u");
}

TEST(BoolTerm, ValuationIndexConvention) {
  const auto order = support::letters(3);
  const auto mu = tba::valuation_at(order, 4);
  EXPECT_TRUE(mu.at(x(0)));
  EXPECT_FALSE(mu.at(x(1)));
  EXPECT_FALSE(mu.at(x(2)));
  for (std::uint64_t i = 0; i < 8; ++i)
    EXPECT_EQ(tba::valuation_index(order, tba::valuation_at(order, i)), i);
}

class ReductionProperty : public ::testing::TestWithParam<int> {};

TEST_P(ReductionProperty, EquivalentIdempotentNotLarger) {
  std::mt19937 rng(1000 + GetParam());
  const int v = 4;
  const auto order = support::letters(v);
  for (int round = 0; round < 25; ++round) {
    const BoolTerm t = support::random_term(rng, v, 6);
    const BoolTerm r = tba::reduce_constants(t);
    EXPECT_EQ(tba::reduce_constants(r), r);
    EXPECT_LE(tba::node_count(r), tba::node_count(t));
    if (!r.is_const()) {
      const auto vs = tba::vars(r);
      for (const auto& l : vs) EXPECT_TRUE(std::binary_search(order.begin(), order.end(), l));
    }
    for (std::uint64_t i = 0; i < (1u << v); ++i) {
      const auto mu = tba::valuation_at(order, i);
      ASSERT_EQ(tba::eval_naive(r, mu), tba::eval_naive(t, mu)) << t.str();
    }
  }
}

TEST_P(ReductionProperty, SubstituteAgreesWithExtendedValuation) {
  std::mt19937 rng(2000 + GetParam());
  const int v = 5;
  const auto order = support::letters(v);
  for (int round = 0; round < 20; ++round) {
    const BoolTerm t = support::random_term(rng, v, 5);
    Assignment a{{x(0), static_cast<bool>(rng() & 1)}, {x(3), static_cast<bool>(rng() & 1)}};
    const BoolTerm s = tba::substitute(t, a);
    for (std::uint64_t i = 0; i < (1u << v); ++i) {
      auto mu = tba::valuation_at(order, i);
      for (const auto& [l, b] : a) mu[l] = b;
      ASSERT_EQ(tba::eval_naive(s, mu), tba::eval_naive(t, mu));
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, ReductionProperty, ::testing::Range(0, 4));

}  // namespace
