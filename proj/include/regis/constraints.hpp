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

#ifndef REGIS_CONSTRAINTS_HPP
#define REGIS_CONSTRAINTS_HPP

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cost.hpp"
#include "regex.hpp"

namespace regis {

// Candidate expressions of height <= h as models over a complete binary tree.
// Node N has children 2N+1 and 2N+2; ntype(N) picks the operator at N and
// ncost(N) is the cost of the subtree rooted there. The program is kept in a
// structured form and can be printed as SMT-LIB (QF_UFLIA) for an external
// solver; solve_all() enumerates its models directly.
struct ConstraintProgram {
  enum Type : int { None = 0, EmptyT = 1, EpsT = 2, AltT = 3, CatT = 4, StarT = 5, CharBase = 6 };

  CostParams params;
  std::vector<char> alphabet;
  unsigned height = 0;
  Cost lo = 1;  // inclusive
  Cost hi = 2;  // exclusive

  std::size_t num_nodes() const { return (std::size_t(1) << (height + 1)) - 1; }
  int num_types() const { return CharBase + static_cast<int>(alphabet.size()); }

  std::string smtlib() const {
    std::ostringstream os;
    std::size_t n = num_nodes();
    os << "(set-logic QF_UFLIA)\n";
    os << "(declare-fun ntype (Int) Int)\n(declare-fun ncost (Int) Int)\n";
    for (std::size_t i = 0; i < n; ++i) {
      bool leaf_level = 2 * i + 1 >= n;
      os << "; node " << i << "\n";
      os << "(assert (and (>= (ntype " << i << ") 0) (< (ntype " << i << ") " << num_types() << ")))\n";
      if (i == 0) os << "(assert (not (= (ntype 0) " << None << ")))\n";
      if (leaf_level) {
        os << "(assert (not (or (= (ntype " << i << ") " << AltT << ") (= (ntype " << i << ") " << CatT
           << ") (= (ntype " << i << ") " << StarT << "))))\n";
      } else {
        std::size_t l = 2 * i + 1, r = 2 * i + 2;
        // operators need their children; leaves and unused nodes have none
        os << "(assert (=> (or (= (ntype " << i << ") " << AltT << ") (= (ntype " << i << ") " << CatT
           << ")) (and (not (= (ntype " << l << ") " << None << ")) (not (= (ntype " << r << ") " << None
           << ")))))\n";
        os << "(assert (=> (= (ntype " << i << ") " << StarT << ") (and (not (= (ntype " << l << ") " << None
           << ")) (= (ntype " << r << ") " << None << "))))\n";
        os << "(assert (=> (not (or (= (ntype " << i << ") " << AltT << ") (= (ntype " << i << ") " << CatT
           << ") (= (ntype " << i << ") " << StarT << "))) (and (= (ntype " << l << ") " << None
           << ") (= (ntype " << r << ") " << None << "))))\n";
      }
      os << "(assert (= (ncost " << i << ") ";
      if (leaf_level) {
        os << "(ite (= (ntype " << i << ") " << None << ") 0 1)";
      } else {
        std::size_t l = 2 * i + 1, r = 2 * i + 2;
        os << "(ite (= (ntype " << i << ") " << AltT << ") (+ (ncost " << l << ") (ncost " << r << ")) "
           << "(ite (= (ntype " << i << ") " << CatT << ") (* " << to_string(params.k1) << " (+ (ncost " << l
           << ") (ncost " << r << "))) "
           << "(ite (= (ntype " << i << ") " << StarT << ") (* " << to_string(params.k2) << " (ncost " << l
           << ")) (ite (= (ntype " << i << ") " << None << ") 0 1))))";
      }
      os << "))\n";
    }
    os << "(assert (>= (ncost 0) " << to_string(lo) << "))\n";
    os << "(assert (< (ncost 0) " << to_string(hi) << "))\n";
    os << "(check-sat)\n(get-value (";
    for (std::size_t i = 0; i < n; ++i) os << (i ? " " : "") << "(ntype " << i << ")";
    os << "))\n";
    return os.str();
  }
};

using Model = std::vector<int>; // ntype per tree node

inline ConstraintProgram encode_constraints(const CostParams& params, std::vector<char> alphabet, unsigned height,
                                            Cost lo, Cost hi) {
  if (height > 20) throw std::invalid_argument("constraint tree too deep");
  std::sort(alphabet.begin(), alphabet.end());
  ConstraintProgram p;
  p.params = params;
  p.alphabet = std::move(alphabet);
  p.height = height;
  p.lo = lo;
  p.hi = hi;
  return p;
}

namespace detail {

inline Regex decode_at(const ConstraintProgram& p, const Model& m, std::size_t i) {
  if (i >= m.size()) throw std::invalid_argument("model is missing node " + std::to_string(i));
  switch (m[i]) {
  case ConstraintProgram::EmptyT: return empty();
  case ConstraintProgram::EpsT: return epsilon();
  case ConstraintProgram::AltT: return alt(decode_at(p, m, 2 * i + 1), decode_at(p, m, 2 * i + 2));
  case ConstraintProgram::CatT: return cat(decode_at(p, m, 2 * i + 1), decode_at(p, m, 2 * i + 2));
  case ConstraintProgram::StarT: return star(decode_at(p, m, 2 * i + 1));
  case ConstraintProgram::None: throw std::invalid_argument("model leaves node " + std::to_string(i) + " unused");
  default: {
    std::size_t c = static_cast<std::size_t>(m[i] - ConstraintProgram::CharBase);
    if (c >= p.alphabet.size()) throw std::invalid_argument("model uses an unknown symbol");
    return chr(p.alphabet[c]);
  }
  }
}

inline void model_at(const ConstraintProgram& p, const Regex& r, std::size_t i, Model& m) {
  if (i >= m.size()) throw std::invalid_argument("expression is taller than the constraint tree");
  switch (r->kind) {
  case Kind::Empty: m[i] = ConstraintProgram::EmptyT; break;
  case Kind::Epsilon: m[i] = ConstraintProgram::EpsT; break;
  case Kind::Char: {
    auto it = std::find(p.alphabet.begin(), p.alphabet.end(), r->sym);
    if (it == p.alphabet.end()) throw std::invalid_argument("symbol outside the alphabet");
    m[i] = ConstraintProgram::CharBase + static_cast<int>(it - p.alphabet.begin());
    break;
  }
  case Kind::Alt:
  case Kind::Cat:
    m[i] = r->kind == Kind::Alt ? ConstraintProgram::AltT : ConstraintProgram::CatT;
    model_at(p, r->left, 2 * i + 1, m);
    model_at(p, r->right, 2 * i + 2, m);
    break;
  case Kind::Star:
    m[i] = ConstraintProgram::StarT;
    model_at(p, r->left, 2 * i + 1, m);
    break;
  default: throw std::invalid_argument("pattern variable in a model");
  }
}

struct Sub {
  Regex r;
  Cost c;
};

// All subtrees of height <= h whose cost stays below `hi`.
inline std::vector<Sub> subtrees(const ConstraintProgram& p, unsigned h, Cost hi) {
  std::vector<Sub> out;
  if (hi <= 1) return out;
  out.push_back({empty(), 1});
  out.push_back({epsilon(), 1});
  for (char a : p.alphabet) out.push_back({chr(a), 1});
  if (h == 0) return out;
  auto kids = subtrees(p, h - 1, hi);
  for (auto& x : kids) {
    Cost s = sat_star_cost(p.params, x.c);
    if (s < hi) out.push_back({star(x.r), s});
  }
  for (auto& x : kids)
    for (auto& y : kids) {
      Cost a = sat_alt_cost(x.c, y.c);
      if (a < hi) out.push_back({alt(x.r, y.r), a});
      Cost c = sat_cat_cost(p.params, x.c, y.c);
      if (c < hi) out.push_back({cat(x.r, y.r), c});
    }
  return out;
}

} // namespace detail

inline Regex decode(const ConstraintProgram& p, const Model& m) { return detail::decode_at(p, m, 0); }

inline Model to_model(const ConstraintProgram& p, const Regex& r) {
  Model m(p.num_nodes(), ConstraintProgram::None);
  detail::model_at(p, r, 0, m);
  return m;
}

// Checks a valuation against every constraint of the program.
inline bool satisfies(const ConstraintProgram& p, const Model& m) {
  std::size_t n = p.num_nodes();
  if (m.size() != n) return false;
  std::vector<Cost> c(n, 0);
  for (std::size_t k = n; k-- > 0;) {
    int t = m[k];
    if (t < 0 || t >= p.num_types()) return false;
    bool leaf_level = 2 * k + 1 >= n;
    bool op = t == ConstraintProgram::AltT || t == ConstraintProgram::CatT || t == ConstraintProgram::StarT;
    if (leaf_level && op) return false;
    if (!leaf_level) {
      int l = m[2 * k + 1], r = m[2 * k + 2];
      if ((t == ConstraintProgram::AltT || t == ConstraintProgram::CatT) &&
          (l == ConstraintProgram::None || r == ConstraintProgram::None))
        return false;
      if (t == ConstraintProgram::StarT && (l == ConstraintProgram::None || r != ConstraintProgram::None)) return false;
      if (!op && (l != ConstraintProgram::None || r != ConstraintProgram::None)) return false;
    }
    switch (t) {
    case ConstraintProgram::None: c[k] = 0; break;
    case ConstraintProgram::AltT: c[k] = sat_alt_cost(c[2 * k + 1], c[2 * k + 2]); break;
    case ConstraintProgram::CatT: c[k] = sat_cat_cost(p.params, c[2 * k + 1], c[2 * k + 2]); break;
    case ConstraintProgram::StarT: c[k] = sat_star_cost(p.params, c[2 * k + 1]); break;
    default: c[k] = 1;
    }
  }
  return m[0] != ConstraintProgram::None && c[0] >= p.lo && c[0] < p.hi;
}

// Every model of the program. Finite domain, so plain enumeration with cost
// pruning (costs grow strictly from child to parent) stands in for a solver.
inline std::vector<Model> solve_all(const ConstraintProgram& p) {
  std::vector<Model> out;
  for (auto& s : detail::subtrees(p, p.height, p.hi))
    if (s.c >= p.lo) out.push_back(to_model(p, s.r));
  return out;
}

// Largest cost any expression of height <= h can have.
inline Cost max_cost(const CostParams& params, unsigned h) {
  Cost m = 1;
  for (unsigned d = 0; d < h; ++d)
    m = std::max({sat_alt_cost(m, m), sat_cat_cost(params, m, m), sat_star_cost(params, m)});
  return m;
}

} // namespace regis

#endif
