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

#ifndef REGIS_NFA_HPP
#define REGIS_NFA_HPP

#include <algorithm>
#include <cstdint>
#include <deque>
#include <iterator>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "regex.hpp"

namespace regis {

using State = std::uint32_t;

inline constexpr int kEpsilonLabel = -1;

struct Transition {
  State to;
  int label;              // kEpsilonLabel or an unsigned char value
  bool loop_back = false; // star back edge from the body's final state to the star entry
};

// Thompson automaton. Immutable after construction; epsilon closures are
// computed once up front so concurrent checks can share an instance.
struct Nfa {
  State initial = 0;
  std::vector<State> accepting;
  std::vector<std::vector<Transition>> out;
  std::vector<bool> is_accepting;
  std::vector<std::vector<State>> closure;
  std::vector<int> symbols;

  std::size_t num_states() const { return out.size(); }
  std::size_t num_transitions() const {
    std::size_t n = 0;
    for (auto& v : out) n += v.size();
    return n;
  }
};

namespace detail {

class ThompsonBuilder {
public:
  struct Frag {
    State start, final;
  };

  explicit ThompsonBuilder(Nfa& nfa) : nfa_(nfa) {}

  State fresh() {
    nfa_.out.emplace_back();
    return static_cast<State>(nfa_.out.size() - 1);
  }
  void edge(State a, State b, int label, bool back = false) { nfa_.out[a].push_back({b, label, back}); }

  Frag build(const Regex& r) {
    switch (r->kind) {
    case Kind::Empty: {
      State s = fresh(), f = fresh();
      return {s, f};
    }
    case Kind::Epsilon: {
      State s = fresh(), f = fresh();
      edge(s, f, kEpsilonLabel);
      return {s, f};
    }
    case Kind::Char: {
      State s = fresh(), f = fresh();
      edge(s, f, static_cast<unsigned char>(r->sym));
      return {s, f};
    }
    case Kind::Alt: {
      State s = fresh();
      Frag l = build(r->left);
      Frag rr = build(r->right);
      State f = fresh();
      edge(s, l.start, kEpsilonLabel);
      edge(s, rr.start, kEpsilonLabel);
      edge(l.final, f, kEpsilonLabel);
      edge(rr.final, f, kEpsilonLabel);
      return {s, f};
    }
    case Kind::Cat: {
      Frag l = build(r->left);
      Frag rr = build(r->right);
      edge(l.final, rr.start, kEpsilonLabel);
      return {l.start, rr.final};
    }
    case Kind::Star: {
      // entry s, hub m, exit f; the body is tried before leaving
      State s = fresh(), m = fresh();
      Frag body = build(r->left);
      State f = fresh();
      edge(s, m, kEpsilonLabel);
      edge(m, body.start, kEpsilonLabel);
      edge(m, f, kEpsilonLabel);
      edge(body.final, s, kEpsilonLabel, true);
      return {s, f};
    }
    case Kind::Var:
      break;
    }
    throw std::invalid_argument("cannot build an automaton for a pattern variable");
  }

private:
  Nfa& nfa_;
};

inline void compute_closures(Nfa& nfa) {
  std::size_t n = nfa.out.size();
  nfa.closure.assign(n, {});
  std::vector<char> seen(n, 0);
  for (State q = 0; q < n; ++q) {
    std::fill(seen.begin(), seen.end(), 0);
    std::vector<State> stack{q};
    seen[q] = 1;
    auto& c = nfa.closure[q];
    while (!stack.empty()) {
      State p = stack.back();
      stack.pop_back();
      c.push_back(p);
      for (auto& t : nfa.out[p])
        if (t.label == kEpsilonLabel && !seen[t.to]) {
          seen[t.to] = 1;
          stack.push_back(t.to);
        }
    }
    std::sort(c.begin(), c.end());
  }
}

} // namespace detail

inline Nfa thompson(const Regex& r) {
  Nfa nfa;
  detail::ThompsonBuilder b(nfa);
  auto frag = b.build(r);
  nfa.initial = frag.start;
  nfa.accepting = {frag.final};
  nfa.is_accepting.assign(nfa.out.size(), false);
  nfa.is_accepting[frag.final] = true;
  std::set<int> syms;
  for (auto& v : nfa.out)
    for (auto& t : v)
      if (t.label != kEpsilonLabel) syms.insert(t.label);
  nfa.symbols.assign(syms.begin(), syms.end());
  detail::compute_closures(nfa);
  return nfa;
}

using StateSet = std::vector<State>; // sorted, duplicate free

inline StateSet close(const Nfa& nfa, const StateSet& s) {
  StateSet out;
  for (State q : s) out.insert(out.end(), nfa.closure[q].begin(), nfa.closure[q].end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline StateSet initial_set(const Nfa& nfa) { return nfa.closure[nfa.initial]; }

inline StateSet step(const Nfa& nfa, const StateSet& s, int symbol) {
  StateSet next;
  for (State q : s)
    for (auto& t : nfa.out[q])
      if (t.label == symbol) next.push_back(t.to);
  if (next.empty()) return next;
  return close(nfa, next);
}

inline bool any_accepting(const Nfa& nfa, const StateSet& s) {
  for (State q : s)
    if (nfa.is_accepting[q]) return true;
  return false;
}

inline bool accepts(const Nfa& nfa, std::string_view word) {
  StateSet cur = initial_set(nfa);
  for (char c : word) {
    cur = step(nfa, cur, static_cast<unsigned char>(c));
    if (cur.empty()) return false;
  }
  return any_accepting(nfa, cur);
}

enum class Verdict { Equal, NotEqual, Timeout };

inline const char* to_string(Verdict v) {
  switch (v) {
  case Verdict::Equal: return "equal";
  case Verdict::NotEqual: return "not-equal";
  default: return "timeout";
  }
}

struct BisimResult {
  Verdict verdict;
  std::uint64_t explored = 0;
};

namespace detail {

struct SetHash {
  std::size_t operator()(const StateSet& s) const {
    std::size_t h = s.size();
    for (State q : s) h = mix(h, q);
    return h;
  }
};

class SetInterner {
public:
  std::uint32_t id(const StateSet& s) {
    auto [it, fresh] = ids_.emplace(s, static_cast<std::uint32_t>(sets_.size()));
    if (fresh) sets_.push_back(&it->first);
    return it->second;
  }
  const StateSet& get(std::uint32_t i) const { return *sets_[i]; }

private:
  std::unordered_map<StateSet, std::uint32_t, SetHash> ids_;
  std::vector<const StateSet*> sets_;
};

} // namespace detail

// Language equality by exploring the product of the two determinized automata
// breadth first. `budget` bounds the number of expanded subset pairs.
inline BisimResult bisim_equal(const Nfa& a, const Nfa& b, std::uint64_t budget) {
  std::vector<int> sigma;
  std::set_union(a.symbols.begin(), a.symbols.end(), b.symbols.begin(), b.symbols.end(), std::back_inserter(sigma));
  detail::SetInterner ia, ib;
  std::unordered_set<std::uint64_t> seen;
  std::deque<std::pair<std::uint32_t, std::uint32_t>> queue;
  auto key = [](std::uint32_t x, std::uint32_t y) { return (std::uint64_t(x) << 32) | y; };

  auto discover = [&](const StateSet& sa, const StateSet& sb) -> bool {
    if (any_accepting(a, sa) != any_accepting(b, sb)) return false;
    std::uint32_t x = ia.id(sa), y = ib.id(sb);
    if (seen.insert(key(x, y)).second) queue.emplace_back(x, y);
    return true;
  };

  BisimResult res{Verdict::Equal, 0};
  if (!discover(initial_set(a), initial_set(b))) return {Verdict::NotEqual, 0};
  while (!queue.empty()) {
    if (res.explored >= budget) {
      res.verdict = Verdict::Timeout;
      return res;
    }
    auto [x, y] = queue.front();
    queue.pop_front();
    ++res.explored;
    StateSet sa = ia.get(x), sb = ib.get(y);
    // both sides dead: every extension is rejected by both
    if (sa.empty() && sb.empty()) continue;
    for (int c : sigma) {
      if (!discover(step(a, sa, c), step(b, sb, c))) {
        res.verdict = Verdict::NotEqual;
        return res;
      }
    }
  }
  return res;
}

inline BisimResult bisim_equal(const Regex& a, const Regex& b, std::uint64_t budget) {
  return bisim_equal(thompson(a), thompson(b), budget);
}

inline std::string to_dot(const Nfa& nfa) {
  std::ostringstream os;
  os << "digraph nfa {\n  rankdir=LR;\n  start [shape=point];\n";
  for (State q = 0; q < nfa.num_states(); ++q)
    os << "  q" << q << " [shape=" << (nfa.is_accepting[q] ? "doublecircle" : "circle") << "];\n";
  os << "  start -> q" << nfa.initial << ";\n";
  for (State q = 0; q < nfa.num_states(); ++q)
    for (auto& t : nfa.out[q]) {
      os << "  q" << q << " -> q" << t.to << " [label=\"";
      if (t.label == kEpsilonLabel)
        os << "eps";
      else
        os << static_cast<char>(t.label);
      os << "\"" << (t.loop_back ? ", style=dashed" : "") << "];\n";
    }
  os << "}\n";
  return os.str();
}

} // namespace regis

#endif
