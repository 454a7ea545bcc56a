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

#ifndef REGIS_COST_HPP
#define REGIS_COST_HPP

#include <algorithm>
#include <stdexcept>
#include <string>

#include "regex.hpp"

namespace regis {

using Cost = unsigned __int128;

inline constexpr Cost kCostInf = ~Cost(0);

class CostOverflow : public std::overflow_error {
public:
  using std::overflow_error::overflow_error;
};

inline std::string to_string(Cost c) {
  if (c == 0) return "0";
  std::string s;
  while (c > 0) {
    s += static_cast<char>('0' + static_cast<int>(c % 10));
    c /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

inline Cost checked_add(Cost a, Cost b) {
  if (a > kCostInf - b) throw CostOverflow("cost overflow in addition");
  return a + b;
}

inline Cost checked_mul(Cost a, Cost b) {
  if (a != 0 && b > kCostInf / a) throw CostOverflow("cost overflow in multiplication");
  return a * b;
}

// Saturating variants; kCostInf absorbs.
inline Cost sat_add(Cost a, Cost b) { return a > kCostInf - b ? kCostInf : a + b; }
inline Cost sat_mul(Cost a, Cost b) { return (a != 0 && b > kCostInf / a) ? kCostInf : a * b; }

// K1 = |A| * (2^h - 1) and K2 = K1^h * (K1 + 2). Alternation adds, concatenation
// scales by K1 and star scales by K2, so for expressions of height at most h every
// star outweighs any star-free expression and concatenation outweighs alternation.
struct CostParams {
  unsigned height = 1;
  unsigned alphabet_size = 1;
  Cost k1 = 1;
  Cost k2 = 3;

  static CostParams make(unsigned h, unsigned alphabet_size) {
    if (h < 1) throw std::invalid_argument("cost parameters need height >= 1");
    if (alphabet_size < 1) throw std::invalid_argument("cost parameters need a non-empty alphabet");
    if (h >= 127) throw CostOverflow("height too large for 128-bit costs");
    CostParams p;
    p.height = h;
    p.alphabet_size = alphabet_size;
    p.k1 = checked_mul(alphabet_size, (Cost(1) << h) - 1);
    Cost pow = 1;
    for (unsigned i = 0; i < h; ++i) pow = checked_mul(pow, p.k1);
    p.k2 = checked_mul(pow, checked_add(p.k1, 2));
    return p;
  }

  bool operator==(const CostParams& o) const { return height == o.height && alphabet_size == o.alphabet_size; }
};

inline Cost leaf_cost() { return 1; }
inline Cost alt_cost(Cost l, Cost r) { return checked_add(l, r); }
inline Cost cat_cost(const CostParams& p, Cost l, Cost r) { return checked_mul(p.k1, checked_add(l, r)); }
inline Cost star_cost(const CostParams& p, Cost x) { return checked_mul(p.k2, x); }

inline Cost sat_alt_cost(Cost l, Cost r) { return sat_add(l, r); }
inline Cost sat_cat_cost(const CostParams& p, Cost l, Cost r) { return sat_mul(p.k1, sat_add(l, r)); }
inline Cost sat_star_cost(const CostParams& p, Cost x) { return sat_mul(p.k2, x); }

inline Cost cost(const Regex& r, const CostParams& p) {
  switch (r->kind) {
  case Kind::Alt: return alt_cost(cost(r->left, p), cost(r->right, p));
  case Kind::Cat: return cat_cost(p, cost(r->left, p), cost(r->right, p));
  case Kind::Star: return star_cost(p, cost(r->left, p));
  case Kind::Var: throw std::invalid_argument("cost of a pattern variable");
  default: return leaf_cost();
  }
}

// Same as cost() but returns kCostInf instead of throwing.
inline Cost saturating_cost(const Regex& r, const CostParams& p) {
  switch (r->kind) {
  case Kind::Alt: return sat_alt_cost(saturating_cost(r->left, p), saturating_cost(r->right, p));
  case Kind::Cat: return sat_cat_cost(p, saturating_cost(r->left, p), saturating_cost(r->right, p));
  case Kind::Star: return sat_star_cost(p, saturating_cost(r->left, p));
  default: return leaf_cost();
  }
}

} // namespace regis

#endif
