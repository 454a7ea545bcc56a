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

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "regis/rewrite.hpp"

using namespace regis;

namespace {

bool contains(const std::vector<Regex>& v, const std::string& text) {
  Regex r = parse(text);
  return std::any_of(v.begin(), v.end(), [&](const Regex& x) { return equal(x, r); });
}

const RewriteRule& rule_named(const std::vector<RewriteRule>& rs, const std::string& name) {
  for (auto& r : rs)
    if (r.name == name) return r;
  throw std::runtime_error("no rule " + name);
}

} // namespace

TEST(Rules, KleeneSetShape) {
  auto rs = kleene_rules();
  ASSERT_EQ(rs.size(), 17u);
  EXPECT_EQ(directed(rs).size(), 32u);
  EXPECT_FALSE(rule_named(rs, "left-annihilator").bidirectional);
  EXPECT_FALSE(rule_named(rs, "right-annihilator").bidirectional);
}

TEST(Rules, DataFileMatchesBuiltin) {
  auto file = load_rules(REGIS_DATA_DIR "/kleene.rules");
  auto builtin = kleene_rules();
  ASSERT_EQ(file.size(), builtin.size());
  for (std::size_t i = 0; i < file.size(); ++i) EXPECT_EQ(print_rule(file[i]), print_rule(builtin[i]));
  EXPECT_EQ(load_rules(REGIS_DATA_DIR "/two_rule.rules").size(), 2u);
}

TEST(Rules, ParseErrors) {
  EXPECT_THROW(parse_rules("bad: ?x <-> ?y"), RuleError);
  EXPECT_THROW(parse_rules("no separator here"), std::exception);
  EXPECT_EQ(parse_rules("# only a comment\n\n").size(), 0u);
}

TEST(Apply, Examples) {
  auto rs = kleene_rules();
  EXPECT_TRUE(contains(apply_rule(rule_named(rs, "star-sat"), parse("a**")), "a*"));
  EXPECT_TRUE(contains(apply_rule(rule_named(rs, "star-idem"), parse("a*a*")), "a*"));
  EXPECT_TRUE(contains(apply_rule(rule_named(rs, "commut-plus"), parse("a+b")), "b+a"));
  EXPECT_TRUE(contains(apply_rule(rule_named(rs, "unroll-left"), parse("a*")), "1+aa*"));
  EXPECT_TRUE(contains(apply_rule(rule_named(rs, "unroll-left"), parse("1+aa*")), "a*"));
  EXPECT_TRUE(contains(apply_rule(rule_named(rs, "left-annihilator"), parse("0a")), "0"));
  // forward only
  EXPECT_TRUE(apply_rule(rule_named(rs, "left-annihilator"), parse("0")).empty());
  // root level only
  EXPECT_TRUE(apply_rule(rule_named(rs, "star-sat"), parse("a**b")).empty());
}

TEST(Apply, DirectionSymmetry) {
  // r rewrites to r' by a rule iff r' rewrites back to r by its reverse
  auto rs = kleene_rules();
  auto exprs = oracle::all_up_to_height(oracle::leaves("a"), 2);
  for (auto& w : rs) {
    if (!w.bidirectional) continue;
    RewriteRule rev{w.name + "-rev", w.rhs, w.lhs, true};
    for (auto& e : exprs)
      for (auto& out : apply_rule(w, e)) ASSERT_TRUE(contains(apply_rule(rev, out), print(e))) << w.name;
  }
}

TEST(Apply, SoundOnSmallExpressions) {
  auto rs = kleene_rules();
  for (auto& e : oracle::all_up_to_height(oracle::leaves("ab"), 2))
    for (auto& w : rs)
      for (auto& out : apply_rule(w, e))
        ASSERT_TRUE(oracle::equivalent(e, out)) << w.name << ": " << print(e) << " -> " << print(out);
}

TEST(Apply, AllDeduplicates) {
  auto out = apply_all({parse("a+a")}, kleene_rules());
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = i + 1; j < out.size(); ++j) EXPECT_FALSE(equal(out[i], out[j]));
  EXPECT_TRUE(contains(out, "a"));
}
