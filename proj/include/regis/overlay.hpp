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

#ifndef REGIS_OVERLAY_HPP
#define REGIS_OVERLAY_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "egraph.hpp"
#include "regex.hpp"

namespace regis {

// Bipartite bookkeeping between source classes and enumerated target classes.
// Each live entry owns a distinct class; an edge means "these two classes
// still need an equality check", weighted by how expensive the next attempt is.
class Overlay {
public:
  struct Entry {
    Regex expr;
    ClassId cls;
    bool live = true;
  };

  struct Edge {
    std::uint32_t src;
    std::uint32_t tgt;
    std::uint64_t expense;
    std::uint64_t seq;
  };

  // Rejected when the class already has a live source.
  std::optional<std::uint32_t> add_source(const Regex& e, ClassId cls) {
    if (src_by_class_.count(cls)) return std::nullopt;
    auto i = static_cast<std::uint32_t>(sources_.size());
    sources_.push_back({e, cls, true});
    src_by_class_[cls] = i;
    out_.emplace_back();
    return i;
  }

  // Rejected when the class already has a live target. Otherwise one unit edge
  // is created from every live source for which `wants_edge(source class)` holds.
  std::optional<std::uint32_t> add_target(const Regex& e, ClassId cls,
                                          const std::function<bool(ClassId)>& wants_edge = {}) {
    if (tgt_by_class_.count(cls)) return std::nullopt;
    auto j = static_cast<std::uint32_t>(targets_.size());
    targets_.push_back({e, cls, true});
    tgt_by_class_[cls] = j;
    in_.emplace_back();
    for (std::uint32_t i = 0; i < sources_.size(); ++i) {
      if (!sources_[i].live) continue;
      if (wants_edge && !wants_edge(sources_[i].cls)) continue;
      insert_edge(i, j, 1, next_seq_++);
    }
    return j;
  }

  // Minimum expense, ties broken by creation order.
  std::optional<Edge> pick_min_edge() const {
    if (queue_.empty()) return std::nullopt;
    auto [expense, seq, s, t] = *queue_.begin();
    return Edge{s, t, expense, seq};
  }

  // The `n` cheapest edges in pick order.
  std::vector<Edge> pick_min_edges(std::size_t n) const {
    std::vector<Edge> out;
    for (auto it = queue_.begin(); it != queue_.end() && out.size() < n; ++it) {
      auto [expense, seq, s, t] = *it;
      out.push_back({s, t, expense, seq});
    }
    return out;
  }

  bool has_edge(std::uint32_t s, std::uint32_t t) const { return edges_.count({s, t}) > 0; }

  void remove_edge(std::uint32_t s, std::uint32_t t) {
    auto it = edges_.find({s, t});
    if (it == edges_.end()) return;
    queue_.erase({it->second.first, it->second.second, s, t});
    edges_.erase(it);
    out_[s].erase(t);
    in_[t].erase(s);
  }

  // A timed out check is retried later with twice the budget.
  void double_expense(std::uint32_t s, std::uint32_t t) {
    auto it = edges_.find({s, t});
    if (it == edges_.end()) return;
    auto [expense, seq] = it->second;
    queue_.erase({expense, seq, s, t});
    expense *= 2;
    it->second = {expense, seq};
    queue_.insert({expense, seq, s, t});
  }

  // Removes every edge joining the two classes (in either role).
  void remove_edges_between(ClassId a, ClassId b) {
    auto drop = [this](ClassId s, ClassId t) {
      auto si = src_by_class_.find(s);
      auto ti = tgt_by_class_.find(t);
      if (si != src_by_class_.end() && ti != tgt_by_class_.end()) remove_edge(si->second, ti->second);
    };
    drop(a, b);
    drop(b, a);
  }

  // Called after the e-graph merged `gone` into `keep`: entries of both classes
  // collapse onto the lowest index and their edges are merged, keeping the
  // smaller expense.
  void merge_on_union(ClassId keep, ClassId gone) {
    collapse(sources_, src_by_class_, keep, gone, true);
    collapse(targets_, tgt_by_class_, keep, gone, false);
  }

  const std::vector<Entry>& sources() const { return sources_; }
  const std::vector<Entry>& targets() const { return targets_; }
  std::size_t num_edges() const { return edges_.size(); }
  std::size_t k() const { return k_; }

  std::optional<std::uint32_t> source_of_class(ClassId c) const {
    auto it = src_by_class_.find(c);
    if (it == src_by_class_.end()) return std::nullopt;
    return it->second;
  }
  std::optional<std::uint32_t> target_of_class(ClassId c) const {
    auto it = tgt_by_class_.find(c);
    if (it == tgt_by_class_.end()) return std::nullopt;
    return it->second;
  }

  // Moves k past dead targets and targets for which `known_unequal` holds.
  void normalize_k(const std::function<bool(ClassId)>& known_unequal) {
    while (k_ < targets_.size() && (!targets_[k_].live || known_unequal(targets_[k_].cls))) ++k_;
  }

  void advance_k() {
    if (k_ < targets_.size()) ++k_;
  }

private:
  std::vector<Entry> sources_, targets_;
  std::unordered_map<ClassId, std::uint32_t> src_by_class_, tgt_by_class_;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::pair<std::uint64_t, std::uint64_t>> edges_;
  std::set<std::tuple<std::uint64_t, std::uint64_t, std::uint32_t, std::uint32_t>> queue_;
  std::vector<std::set<std::uint32_t>> out_; // per source: targets
  std::vector<std::set<std::uint32_t>> in_;  // per target: sources
  std::uint64_t next_seq_ = 0;
  std::size_t k_ = 0;

  void insert_edge(std::uint32_t s, std::uint32_t t, std::uint64_t expense, std::uint64_t seq) {
    auto it = edges_.find({s, t});
    if (it != edges_.end()) {
      auto [e0, q0] = it->second;
      if (e0 <= expense && q0 <= seq) return;
      queue_.erase({e0, q0, s, t});
      expense = std::min(expense, e0);
      seq = std::min(seq, q0);
      it->second = {expense, seq};
    } else {
      edges_.emplace(std::make_pair(s, t), std::make_pair(expense, seq));
      out_[s].insert(t);
      in_[t].insert(s);
    }
    queue_.insert({expense, seq, s, t});
  }

  void collapse(std::vector<Entry>& list, std::unordered_map<ClassId, std::uint32_t>& by_class, ClassId keep,
                ClassId gone, bool is_source) {
    auto ik = by_class.find(keep);
    auto ig = by_class.find(gone);
    if (ig == by_class.end()) return;
    std::uint32_t g = ig->second;
    by_class.erase(ig);
    if (ik == by_class.end()) {
      list[g].cls = keep;
      by_class[keep] = g;
      return;
    }
    std::uint32_t a = ik->second;
    std::uint32_t win = std::min(a, g), lose = std::max(a, g);
    list[win].cls = keep;
    list[lose].live = false;
    by_class[keep] = win;
    // move the loser's edges onto the winner
    if (is_source) {
      std::vector<std::uint32_t> ts(out_[lose].begin(), out_[lose].end());
      for (auto t : ts) {
        auto [expense, seq] = edges_.at({lose, t});
        remove_edge(lose, t);
        insert_edge(win, t, expense, seq);
      }
    } else {
      std::vector<std::uint32_t> ss(in_[lose].begin(), in_[lose].end());
      for (auto s : ss) {
        auto [expense, seq] = edges_.at({s, lose});
        remove_edge(s, lose);
        insert_edge(s, win, expense, seq);
      }
    }
  }
};

} // namespace regis

#endif
