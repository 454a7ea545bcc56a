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

#ifndef REGIS_ENUMERATOR_HPP
#define REGIS_ENUMERATOR_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "constraints.hpp"
#include "cost.hpp"
#include "regex.hpp"

namespace regis {

enum class EnumStrategy { Explicit, Solver };

inline const char* to_string(EnumStrategy s) { return s == EnumStrategy::Explicit ? "explicit" : "solver"; }

// Proper subexpressions of a source, post-order and without duplicates.
inline std::vector<Regex> source_subexprs(const Regex& e) { return subexprs(e); }

// Bottom-up enumeration in order of increasing cost, ties broken by printed
// form. `upper` is an exclusive cost bound and `height_bound` an inclusive
// height bound; both only ever shrink.
class Enumerator {
public:
  Enumerator(CostParams params, std::vector<char> alphabet, unsigned height_bound, Cost upper = kCostInf,
             EnumStrategy strategy = EnumStrategy::Explicit)
      : params_(params), height_bound_(height_bound), upper_(upper), strategy_(strategy) {
    std::sort(alphabet.begin(), alphabet.end());
    alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());
    alphabet_ = std::move(alphabet);
    if (strategy_ == EnumStrategy::Explicit) {
      std::vector<Item> leaves{{empty(), 1, 0, "0"}, {epsilon(), 1, 0, "1"}};
      for (char a : alphabet_) leaves.push_back({chr(a), 1, 0, std::string(1, a)});
      start_level(1, std::move(leaves));
    } else {
      band_lo_ = 1;
      band_hi_ = 2;
    }
  }

  std::optional<Regex> next_candidate() {
    for (;;) {
      while (pos_ < level_.size()) {
        Item& it = level_[pos_++];
        if (it.height > height_bound_ || it.cost >= upper_) continue;
        ++emitted_;
        if (strategy_ == EnumStrategy::Explicit) done_.push_back(it);
        return it.expr;
      }
      if (!advance()) return std::nullopt;
    }
  }

  // The new minimum's cost becomes the exclusive bound; its height caps the
  // search height when height pruning is on.
  void tighten(const Regex& new_min, bool prune_height = true) {
    tighten_bounds(saturating_cost(new_min, params_), prune_height ? height(new_min) : height_bound_);
  }

  void tighten_bounds(Cost upper, unsigned height_bound) {
    upper_ = std::min(upper_, upper);
    height_bound_ = std::min(height_bound_, height_bound);
  }

  Cost upper() const { return upper_; }
  unsigned height_bound() const { return height_bound_; }
  std::uint64_t emitted() const { return emitted_; }
  const CostParams& params() const { return params_; }
  const std::vector<char>& alphabet() const { return alphabet_; }

private:
  struct Item {
    Regex expr;
    Cost cost;
    std::uint32_t height;
    std::string text;
  };

  CostParams params_;
  std::vector<char> alphabet_;
  unsigned height_bound_;
  Cost upper_;
  EnumStrategy strategy_;
  std::uint64_t emitted_ = 0;

  std::vector<Item> level_;
  std::size_t pos_ = 0;
  Cost level_cost_ = 0;
  std::vector<Item> done_;                   // emitted items of the current level
  std::map<Cost, std::vector<Item>> levels_; // finished levels
  std::set<Cost> pending_;                   // costs some combination can reach
  Cost band_lo_ = 0, band_hi_ = 0;

  void start_level(Cost c, std::vector<Item> items) {
    std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) { return a.text < b.text; });
    level_ = std::move(items);
    pos_ = 0;
    level_cost_ = c;
  }

  void note(Cost c) {
    if (c < upper_ && c > level_cost_) pending_.insert(c);
  }

  bool advance() {
    return strategy_ == EnumStrategy::Explicit ? advance_explicit() : advance_solver();
  }

  bool advance_explicit() {
    if (!done_.empty()) {
      Cost v = level_cost_;
      levels_[v] = std::move(done_);
      done_.clear();
      for (auto& [w, items] : levels_) {
        note(sat_alt_cost(v, w));
        note(sat_cat_cost(params_, v, w));
      }
      note(sat_star_cost(params_, v));
    }
    while (!pending_.empty()) {
      Cost c = *pending_.begin();
      pending_.erase(pending_.begin());
      if (c >= upper_) {
        pending_.clear();
        return false;
      }
      auto items = materialize(c);
      if (!items.empty()) {
        start_level(c, std::move(items));
        return true;
      }
      level_cost_ = c;
    }
    return false;
  }

  void combine(Kind k, const std::vector<Item>& xs, const std::vector<Item>& ys, Cost c, std::vector<Item>& out) {
    for (auto& x : xs) {
      if (x.height + 1 > height_bound_) continue;
      for (auto& y : ys) {
        if (y.height + 1 > height_bound_) continue;
        Regex r = k == Kind::Alt ? alt(x.expr, y.expr) : cat(x.expr, y.expr);
        out.push_back({r, c, r->height, print(r)});
      }
    }
  }

  std::vector<Item> materialize(Cost c) {
    std::vector<Item> out;
    for (auto& [v, xs] : levels_) {
      if (v >= c) break;
      auto it = levels_.find(c - v);
      if (it != levels_.end()) combine(Kind::Alt, xs, it->second, c, out);
    }
    if (c % params_.k1 == 0) {
      Cost s = c / params_.k1;
      for (auto& [v, xs] : levels_) {
        if (v >= s) break;
        auto it = levels_.find(s - v);
        if (it != levels_.end()) combine(Kind::Cat, xs, it->second, c, out);
      }
    }
    if (c % params_.k2 == 0) {
      auto it = levels_.find(c / params_.k2);
      if (it != levels_.end())
        for (auto& x : it->second) {
          if (x.height + 1 > height_bound_) continue;
          Regex r = star(x.expr);
          out.push_back({r, c, r->height, print(r)});
        }
    }
    return out;
  }

  // Solver strategy: models are requested for doubling cost bands and each
  // band is emitted in (cost, text) order.
  bool advance_solver() {
    Cost ceiling = max_cost(params_, height_bound_);
    while (band_lo_ < upper_ && band_lo_ <= ceiling) {
      Cost hi = std::min(band_hi_, upper_);
      auto prog = encode_constraints(params_, alphabet_, height_bound_, band_lo_, hi);
      std::vector<Item> items;
      for (auto& m : solve_all(prog)) {
        Regex r = decode(prog, m);
        items.push_back({r, saturating_cost(r, params_), r->height, print(r)});
      }
      band_lo_ = band_hi_;
      band_hi_ = sat_mul(band_hi_, 2);
      if (items.empty()) continue;
      std::sort(items.begin(), items.end(),
                [](const Item& a, const Item& b) { return a.cost != b.cost ? a.cost < b.cost : a.text < b.text; });
      level_ = std::move(items);
      pos_ = 0;
      return true;
    }
    return false;
  }
};

} // namespace regis

#endif
