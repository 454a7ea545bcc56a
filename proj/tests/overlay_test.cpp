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

#include "regis/overlay.hpp"

using namespace regis;

TEST(Overlay, OneEntryPerClass) {
  Overlay o;
  EXPECT_TRUE(o.add_source(parse("a"), 1).has_value());
  EXPECT_FALSE(o.add_source(parse("a+a"), 1).has_value());
  EXPECT_TRUE(o.add_target(parse("a"), 1).has_value());
  EXPECT_FALSE(o.add_target(parse("1a"), 1).has_value());
}

TEST(Overlay, EdgesFromEverySource) {
  Overlay o;
  o.add_source(parse("a"), 1);
  o.add_source(parse("b"), 2);
  o.add_source(parse("c"), 3);
  o.add_target(parse("x"), 7, [](ClassId c) { return c != 2; });
  EXPECT_EQ(o.num_edges(), 2u);
  EXPECT_TRUE(o.has_edge(0, 0));
  EXPECT_FALSE(o.has_edge(1, 0));
}

TEST(Overlay, PickOrder) {
  Overlay o;
  o.add_source(parse("a"), 1);
  o.add_source(parse("b"), 2);
  o.add_target(parse("x"), 7);
  auto e = o.pick_min_edge();
  ASSERT_TRUE(e);
  EXPECT_EQ(e->src, 0u);
  o.double_expense(0, 0);
  e = o.pick_min_edge();
  EXPECT_EQ(e->src, 1u);
  auto both = o.pick_min_edges(5);
  ASSERT_EQ(both.size(), 2u);
  EXPECT_EQ(both[1].expense, 2u);
  o.remove_edge(1, 0);
  o.remove_edge(0, 0);
  EXPECT_FALSE(o.pick_min_edge());
}

TEST(Overlay, RemoveBetweenClasses) {
  Overlay o;
  o.add_source(parse("a"), 1);
  o.add_target(parse("x"), 7);
  o.add_source(parse("y"), 7);
  o.add_target(parse("z"), 1);
  // sources only get edges to targets added after them
  EXPECT_EQ(o.num_edges(), 3u);
  o.remove_edges_between(7, 1);
  EXPECT_EQ(o.num_edges(), 1u);
  EXPECT_TRUE(o.has_edge(0, 1));
}

TEST(Overlay, MergeCollapsesEntries) {
  Overlay o;
  o.add_source(parse("a"), 1);
  o.add_source(parse("b"), 2);
  o.add_target(parse("x"), 7);
  o.add_target(parse("y"), 8);
  o.double_expense(1, 1);
  o.merge_on_union(1, 2);
  EXPECT_TRUE(o.sources()[0].live);
  EXPECT_FALSE(o.sources()[1].live);
  EXPECT_EQ(o.source_of_class(1), 0u);
  EXPECT_FALSE(o.source_of_class(2));
  EXPECT_EQ(o.num_edges(), 2u);
  // the cheaper of the two parallel edges survives
  for (auto& e : o.pick_min_edges(4)) EXPECT_EQ(e.expense, 1u);
  // a merge into a class with no entry just relabels
  o.merge_on_union(9, 8);
  EXPECT_EQ(o.target_of_class(9), 1u);
}

TEST(Overlay, Normalization) {
  Overlay o;
  o.add_target(parse("x"), 1);
  o.add_target(parse("y"), 2);
  o.add_target(parse("z"), 3);
  o.merge_on_union(1, 2);
  o.normalize_k([](ClassId c) { return c == 1; });
  EXPECT_EQ(o.k(), 2u);
  o.advance_k();
  EXPECT_EQ(o.k(), 3u);
  o.advance_k();
  EXPECT_EQ(o.k(), 3u);
}
