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

#include <set>

#include "oracles.hpp"
#include "regis/enumerator.hpp"

using namespace regis;

namespace {

std::vector<Regex> drain(Enumerator& e, std::size_t cap = 1000000) {
  std::vector<Regex> out;
  while (out.size() < cap) {
    auto r = e.next_candidate();
    if (!r) break;
    out.push_back(*r);
  }
  return out;
}

std::multiset<std::string> texts(const std::vector<Regex>& v) {
  std::multiset<std::string> s;
  for (auto& r : v) s.insert(print(r));
  return s;
}

} // namespace

TEST(Enumerator, FirstEmissions) {
  Enumerator e(CostParams::make(2, 1), {'a'}, 2);
  EXPECT_EQ(print(*e.next_candidate()), "0");
  EXPECT_EQ(print(*e.next_candidate()), "1");
  EXPECT_EQ(print(*e.next_candidate()), "a");
}

TEST(Enumerator, CompleteForHeightTwo) {
  auto params = CostParams::make(2, 1);
  Enumerator e(params, {'a'}, 2);
  auto got = drain(e);
  auto want = oracle::all_up_to_height(oracle::leaves("a"), 2);
  ASSERT_EQ(got.size(), 1179u);
  EXPECT_EQ(texts(got), texts(want));
  for (std::size_t i = 1; i < got.size(); ++i) {
    Cost a = cost(got[i - 1], params), b = cost(got[i], params);
    ASSERT_LE(a, b);
    if (a == b) ASSERT_LT(print(got[i - 1]), print(got[i]));
  }
}

TEST(Enumerator, CompleteForTwoSymbols) {
  Enumerator e(CostParams::make(2, 2), {'b', 'a'}, 2);
  EXPECT_EQ(texts(drain(e)), texts(oracle::all_up_to_height(oracle::leaves("ab"), 2)));
}

TEST(Enumerator, UpperBoundIsExclusive) {
  Enumerator e(CostParams::make(2, 1), {'a'}, 2, 2);
  auto got = drain(e);
  EXPECT_EQ(got.size(), 3u);
}

TEST(Enumerator, Tighten) {
  auto params = CostParams::make(2, 1);
  Enumerator e(params, {'a'}, 2);
  e.tighten(parse("a*"));
  EXPECT_EQ(e.upper(), Cost(45));
  EXPECT_EQ(e.height_bound(), 1u);
  for (auto& r : drain(e)) {
    EXPECT_LT(cost(r, params), Cost(45));
    EXPECT_LE(height(r), 1u);
  }
  e.tighten_bounds(100, 5);
  EXPECT_EQ(e.upper(), Cost(45));
  EXPECT_EQ(e.height_bound(), 1u);
}

TEST(Enumerator, TightenMidStream) {
  auto params = CostParams::make(2, 1);
  Enumerator a(params, {'a'}, 2), b(params, {'a'}, 2, 20);
  auto first = drain(a, 50);
  a.tighten_bounds(20, 2);
  auto rest = drain(a);
  first.insert(first.end(), rest.begin(), rest.end());
  std::vector<Regex> capped;
  for (auto& r : first)
    if (cost(r, params) < 20) capped.push_back(r);
  EXPECT_EQ(texts(capped), texts(drain(b)));
}

TEST(Enumerator, StrategiesAgree) {
  for (unsigned h : {1u, 2u}) {
    auto params = CostParams::make(h, 2);
    Enumerator x(params, {'a', 'b'}, h, 200, EnumStrategy::Explicit);
    Enumerator y(params, {'a', 'b'}, h, 200, EnumStrategy::Solver);
    auto gx = drain(x), gy = drain(y);
    ASSERT_EQ(gx.size(), gy.size());
    for (std::size_t i = 0; i < gx.size(); ++i) ASSERT_EQ(print(gx[i]), print(gy[i]));
  }
}

TEST(Constraints, ModelsRoundTrip) {
  auto params = CostParams::make(2, 1);
  auto prog = encode_constraints(params, {'a'}, 2, 1, kCostInf);
  auto models = solve_all(prog);
  EXPECT_EQ(models.size(), 1179u);
  for (auto& m : models) {
    ASSERT_TRUE(satisfies(prog, m));
    ASSERT_EQ(to_model(prog, decode(prog, m)), m);
  }
  Model bad(prog.num_nodes(), ConstraintProgram::None);
  EXPECT_FALSE(satisfies(prog, bad));
}

TEST(Constraints, BandsAndUnsat) {
  auto params = CostParams::make(2, 1);
  EXPECT_EQ(max_cost(params, 2), Cost(45 * 45));
  auto prog = encode_constraints(params, {'a'}, 2, max_cost(params, 2) + 1, kCostInf);
  EXPECT_TRUE(solve_all(prog).empty());
  auto band = encode_constraints(params, {'a'}, 2, 45, 46);
  auto ms = solve_all(band);
  std::set<std::string> got;
  for (auto& m : ms) got.insert(print(decode(band, m)));
  EXPECT_EQ(got, (std::set<std::string>{"0*", "1*", "a*"}));
}

TEST(Constraints, SmtText) {
  auto prog = encode_constraints(CostParams::make(1, 1), {'a'}, 1, 1, 10);
  std::string s = prog.smtlib();
  EXPECT_NE(s.find("(set-logic QF_UFLIA)"), std::string::npos);
  EXPECT_NE(s.find("(check-sat)"), std::string::npos);
  EXPECT_NE(s.find("(< (ncost 0) 10)"), std::string::npos);
}
