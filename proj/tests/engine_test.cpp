// Copyright 2026 The regis Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "regis/engine.hpp"

using namespace regis;

namespace {

SimplifyConfig at_height(unsigned h) {
  SimplifyConfig c;
  c.max_height = h;
  c.wall_timeout = 30;
  return c;
}

std::vector<RewriteRule> two_rules() { return load_rules(REGIS_DATA_DIR "/two_rule.rules"); }

} // namespace

TEST(Engine, StarOfStar) {
  auto r = simplify(parse("a**"), at_height(2));
  EXPECT_EQ(print(r.best), "a*");
  EXPECT_TRUE(r.global_min_proved);
  EXPECT_EQ(r.halt, HaltReason::Proved);
  EXPECT_EQ(r.cost_best, Cost(45));
  EXPECT_EQ(r.cost_in, Cost(45 * 45));
}

TEST(Engine, TwoRulesLearn) {
  auto c = at_height(2);
  c.rules = two_rules();
  auto r = simplify(parse("(1+a*a)**"), c);
  EXPECT_EQ(print(r.best), "a*");
  EXPECT_TRUE(r.global_min_proved);
  EXPECT_GE(r.learned.size(), 1u);
  for (auto& w : r.learned) EXPECT_TRUE(oracle::equivalent(w.lhs, w.rhs)) << print_rule(w);
  EXPECT_TRUE(r.warnings.size() == 1);
}

TEST(Engine, Deepening) {
  SimplifyConfig c;
  c.wall_timeout = 30;
  c.rules = two_rules();
  auto r = simplify(parse("(1+a*a)**"), c);
  EXPECT_EQ(print(r.best), "a*");
  EXPECT_TRUE(r.global_min_proved);
  EXPECT_GE(r.stats.runs, 1u);
}

TEST(Engine, AlreadyMinimal) {
  for (const char* s : {"a", "0", "1", "a*", "ab"}) {
    auto r = simplify(parse(s), at_height(std::max(1u, height(parse(s)))));
    EXPECT_EQ(print(r.best), s);
    EXPECT_TRUE(r.global_min_proved) << s;
  }
}

TEST(Engine, EnumOnly) {
  auto c = at_height(2);
  c.mode = Mode::EnumOnly;
  auto r = simplify(parse("a**"), c);
  EXPECT_EQ(print(r.best), "a*");
  EXPECT_TRUE(r.global_min_proved);
  EXPECT_EQ(r.stats.rewrites, 0u);
}

TEST(Engine, RewriteOnlySaturates) {
  auto c = at_height(2);
  c.mode = Mode::RewriteOnly;
  c.rules = two_rules();
  auto r = simplify(parse("a**"), c);
  EXPECT_EQ(print(r.best), "a*");
  EXPECT_EQ(r.halt, HaltReason::Saturated);
  EXPECT_FALSE(r.global_min_proved);
  c.assume_complete = true;
  EXPECT_TRUE(simplify(parse("a**"), c).global_min_proved);
}

TEST(Engine, FirstStepRewrites) {
  auto c = at_height(2);
  Machine m(parse("a**"), c, 2);
  EXPECT_EQ(m.step(), Step::Rewrite);
  EXPECT_GT(m.pending_equalities(), 0u);
  EXPECT_EQ(m.step(), Step::Union1);
}

TEST(Engine, Union2BeforeAnythingElse) {
  // enumeration reaches a* while rewriting is off; once a* is the cheapest
  // unrefuted target and in the source class, the machine stops at once
  auto c = at_height(2);
  c.mode = Mode::EnumOnly;
  Machine m(parse("a**"), c, 2);
  Step last = Step::Halt;
  while (!m.halted()) last = m.step();
  EXPECT_EQ(last, Step::Union2);
  EXPECT_EQ(m.pending_equalities(), 0u);
}

TEST(Engine, TinyBudgetStillTerminates) {
  auto c = at_height(2);
  c.eq_budget_unit = 1;
  c.mode = Mode::EnumOnly;
  auto r = simplify(parse("a**"), c);
  EXPECT_EQ(print(r.best), "a*");
  EXPECT_GT(r.stats.eq_timeouts, 0u);
}

TEST(Engine, ThreadsAgree) {
  for (const char* s : {"a**", "(a+1)*", "a*a*+1", "0+a1"}) {
    auto c = at_height(2);
    auto one = simplify(parse(s), c);
    c.threads = 3;
    auto three = simplify(parse(s), c);
    EXPECT_EQ(one.cost_best, three.cost_best) << s;
    EXPECT_EQ(one.global_min_proved, three.global_min_proved) << s;
  }
}

TEST(Engine, ResultIsEquivalent) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 30; ++i) {
    Regex e = oracle::random_regex(rng, 3, "ab");
    auto c = at_height(std::max(1u, height(e)));
    c.wall_timeout = 2;
    auto r = simplify(e, c);
    ASSERT_TRUE(oracle::equivalent(e, r.best)) << print(e) << " -> " << print(r.best);
    ASSERT_LE(r.cost_best, r.cost_in);
  }
}
