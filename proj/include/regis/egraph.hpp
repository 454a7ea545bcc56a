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

#ifndef REGIS_EGRAPH_HPP
#define REGIS_EGRAPH_HPP

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "cost.hpp"
#include "regex.hpp"
#include "rewrite.hpp"

namespace regis {

using ClassId = std::uint32_t;
inline constexpr ClassId kNoClass = std::numeric_limits<ClassId>::max();

struct ENode {
  Kind op;
  char sym = 0;
  ClassId a = kNoClass;
  ClassId b = kNoClass;

  bool operator==(const ENode& o) const { return op == o.op && sym == o.sym && a == o.a && b == o.b; }
  bool operator<(const ENode& o) const {
    return std::tie(op, sym, a, b) < std::tie(o.op, o.sym, o.a, o.b);
  }
};

struct ENodeHash {
  std::size_t operator()(const ENode& n) const {
    std::size_t h = detail::mix(static_cast<std::size_t>(n.op), static_cast<unsigned char>(n.sym));
    h = detail::mix(h, n.a);
    return detail::mix(h, n.b);
  }
};

class ContradictionError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

// A rule compiled for matching against classes: variables become slot numbers.
struct CompiledRule {
  struct PNode {
    Kind op;
    char sym = 0;
    int var = -1;
    int left = -1;
    int right = -1;
  };
  std::string name;
  std::vector<PNode> lhs, rhs;
  int lhs_root = -1, rhs_root = -1;
  int num_vars = 0;
  unsigned depth = 0;
  bool ground = false;
  Regex lhs_expr, rhs_expr;
};

namespace detail {

inline int compile_pattern(const Regex& r, std::vector<CompiledRule::PNode>& out, std::map<std::string, int>& slots) {
  CompiledRule::PNode p{r->kind, r->sym};
  if (r->kind == Kind::Var) {
    auto it = slots.find(r->name);
    if (it == slots.end()) it = slots.emplace(r->name, static_cast<int>(slots.size())).first;
    p.var = it->second;
  }
  if (r->left) p.left = compile_pattern(r->left, out, slots);
  if (r->right) p.right = compile_pattern(r->right, out, slots);
  out.push_back(p);
  return static_cast<int>(out.size() - 1);
}

struct IdVecHash {
  std::size_t operator()(const std::vector<std::uint32_t>& v) const {
    std::size_t h = v.size();
    for (auto x : v) h = mix(h, x);
    return h;
  }
};

} // namespace detail

inline CompiledRule compile_rule(const DirectedRule& d) {
  CompiledRule c;
  c.name = d.name;
  std::map<std::string, int> slots;
  c.lhs_root = detail::compile_pattern(d.lhs, c.lhs, slots);
  c.rhs_root = detail::compile_pattern(d.rhs, c.rhs, slots);
  c.num_vars = static_cast<int>(slots.size());
  c.depth = d.lhs->height;
  c.ground = c.num_vars == 0;
  c.lhs_expr = d.lhs;
  c.rhs_expr = d.rhs;
  return c;
}

inline std::vector<CompiledRule> compile_rules(const std::vector<RewriteRule>& rules) {
  std::vector<CompiledRule> out;
  for (auto& d : directed(rules)) out.push_back(compile_rule(d));
  return out;
}

// A rule match found in the graph; applying it merges `lhs` with the
// instantiated right-hand side.
struct RuleMatch {
  ClassId lhs;
  std::uint32_t rule;
  std::vector<ClassId> binding;
};

struct PassOptions {
  bool merge_only = false;   // skip matches whose right-hand side is not in the graph yet
  bool incremental = false;  // only look at roots near classes touched since the last pass
  std::size_t match_limit = 0; // per rule and pass; 0 means unlimited
};

class EGraph {
public:
  struct Best {
    Cost cost = kCostInf;
    std::uint32_t height = std::numeric_limits<std::uint32_t>::max();
    Regex rep;
  };

  explicit EGraph(CostParams params) : params_(params) {}

  const CostParams& params() const { return params_; }

  ClassId find(ClassId c) const {
    while (parent_[c] != c) {
      parent_[c] = parent_[parent_[c]];
      c = parent_[c];
    }
    return c;
  }

  bool same(ClassId a, ClassId b) const { return find(a) == find(b); }

  ClassId add(const Regex& e) {
    switch (e->kind) {
    case Kind::Alt:
    case Kind::Cat: {
      ClassId l = add(e->left), r = add(e->right);
      return add_node({e->kind, 0, l, r});
    }
    case Kind::Star: return add_node({Kind::Star, 0, add(e->left), kNoClass});
    case Kind::Var: throw std::invalid_argument("cannot add a pattern variable to the e-graph");
    default: return add_node({e->kind, e->sym, kNoClass, kNoClass});
    }
  }

  std::optional<ClassId> lookup(const Regex& e) const {
    ENode n{e->kind, e->sym};
    if (e->left) {
      auto l = lookup(e->left);
      if (!l) return std::nullopt;
      n.a = *l;
    }
    if (e->right) {
      auto r = lookup(e->right);
      if (!r) return std::nullopt;
      n.b = *r;
    }
    return lookup_node(n);
  }

  std::optional<ClassId> lookup_node(ENode n) const {
    n = canonical(n);
    auto it = memo_.find(n);
    if (it == memo_.end()) return std::nullopt;
    return find(it->second);
  }

  ClassId add_node(ENode n) {
    n = canonical(n);
    auto it = memo_.find(n);
    if (it != memo_.end()) return find(it->second);
    ClassId id = static_cast<ClassId>(parent_.size());
    parent_.push_back(id);
    classes_.emplace_back();
    classes_[id].nodes.push_back(n);
    memo_.emplace(n, id);
    if (n.a != kNoClass) classes_[n.a].parents.emplace_back(n, id);
    if (n.b != kNoClass && n.b != n.a) classes_[n.b].parents.emplace_back(n, id);
    classes_[id].best = node_best(n);
    ++num_nodes_;
    ++live_classes_;
    ++version_;
    touched_.push_back(id);
    return id;
  }

  // Merges two classes. Congruence is restored by rebuild().
  ClassId merge(ClassId a, ClassId b) {
    a = find(a);
    b = find(b);
    if (a == b) return a;
    if (are_unequal(a, b))
      throw ContradictionError("merging classes recorded as unequal: " + print(emin(a)) + " and " + print(emin(b)));
    // larger class absorbs the smaller one; ties keep the older id
    if (classes_[a].nodes.size() < classes_[b].nodes.size() ||
        (classes_[a].nodes.size() == classes_[b].nodes.size() && b < a))
      std::swap(a, b);
    parent_[b] = a;
    auto& ca = classes_[a];
    auto& cb = classes_[b];
    ca.nodes.insert(ca.nodes.end(), cb.nodes.begin(), cb.nodes.end());
    ca.parents.insert(ca.parents.end(), cb.parents.begin(), cb.parents.end());
    if (better(cb.best, ca.best)) ca.best = cb.best;
    cb.nodes.clear();
    cb.nodes.shrink_to_fit();
    cb.parents.clear();
    cb.parents.shrink_to_fit();
    --live_classes_;
    pending_.push_back(a);
    improved_.push_back(a);
    touched_.push_back(a);
    merges_.emplace_back(a, b);
    if (!diseq_.empty()) diseq_dirty_ = true;
    ++version_;
    return a;
  }

  // Restores congruence closure, the hash-cons table and the extraction cache.
  void rebuild() {
    while (!pending_.empty()) {
      std::vector<ClassId> todo;
      todo.swap(pending_);
      for (ClassId& c : todo) c = find(c);
      std::sort(todo.begin(), todo.end());
      todo.erase(std::unique(todo.begin(), todo.end()), todo.end());
      for (ClassId c : todo) repair(c);
    }
    for (ClassId& c : renorm_) c = find(c);
    std::sort(renorm_.begin(), renorm_.end());
    renorm_.erase(std::unique(renorm_.begin(), renorm_.end()), renorm_.end());
    for (ClassId c : renorm_) {
      auto& nodes = classes_[c].nodes;
      for (auto& n : nodes) n = canonical(n);
      std::sort(nodes.begin(), nodes.end());
      nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    }
    renorm_.clear();
    if (diseq_dirty_) {
      std::set<std::pair<ClassId, ClassId>> next;
      for (auto [x, y] : diseq_) {
        ClassId fx = find(x), fy = find(y);
        if (fx == fy) throw ContradictionError("classes recorded as unequal were merged by congruence");
        next.emplace(std::min(fx, fy), std::max(fx, fy));
      }
      diseq_.swap(next);
      diseq_dirty_ = false;
    }
    propagate_best();
    recount_nodes();
  }

  void add_diseq(ClassId a, ClassId b) {
    a = find(a);
    b = find(b);
    if (a == b) throw ContradictionError("recording a class as unequal to itself");
    diseq_.emplace(std::min(a, b), std::max(a, b));
  }

  bool are_unequal(ClassId a, ClassId b) const {
    if (diseq_.empty()) return false;
    a = find(a);
    b = find(b);
    if (!diseq_dirty_) return diseq_.count({std::min(a, b), std::max(a, b)}) > 0;
    for (auto [x, y] : diseq_) {
      ClassId fx = find(x), fy = find(y);
      if ((fx == a && fy == b) || (fx == b && fy == a)) return true;
    }
    return false;
  }

  std::size_t diseq_size() const { return diseq_.size(); }

  const Best& best(ClassId c) const { return classes_[find(c)].best; }
  Regex emin(ClassId c) const { return best(c).rep; }
  Cost min_cost(ClassId c) const { return best(c).cost; }

  std::vector<ClassId> classes() const {
    std::vector<ClassId> out;
    for (ClassId c = 0; c < parent_.size(); ++c)
      if (parent_[c] == c) out.push_back(c);
    return out;
  }

  const std::vector<ENode>& nodes(ClassId c) const { return classes_[find(c)].nodes; }

  std::size_t num_nodes() const { return num_nodes_; }
  std::size_t num_classes() const { return live_classes_; }
  std::uint64_t version() const { return version_; }

  // (surviving root, absorbed root) for every merge since the last call.
  std::vector<std::pair<ClassId, ClassId>> take_merges() {
    std::vector<std::pair<ClassId, ClassId>> out;
    out.swap(merges_);
    return out;
  }

  // ---- rewriting ------------------------------------------------------------

  std::vector<RuleMatch> find_matches(const std::vector<CompiledRule>& rules, PassOptions opt = {}) {
    std::vector<ClassId> roots = opt.incremental ? incremental_roots(rules) : classes();
    touched_.clear();
    truncated_ = false;
    std::vector<RuleMatch> out;
    std::vector<ClassId> binding;
    for (std::uint32_t ri = 0; ri < rules.size(); ++ri) {
      const CompiledRule& rule = rules[ri];
      std::size_t first = out.size();
      if (rule.ground) {
        // ground rules only fire where their left side already occurs
        auto l = lookup(rule.lhs_expr);
        if (!l) continue;
        consider(rule, ri, *l, {}, opt, out);
        continue;
      }
      // the same binding can be reached through different nodes
      std::unordered_set<std::vector<ClassId>, detail::IdVecHash> seen;
      std::size_t limit = opt.match_limit ? opt.match_limit : std::numeric_limits<std::size_t>::max();
      for (ClassId root : roots) {
        root = find(root);
        binding.assign(rule.num_vars, kNoClass);
        std::vector<std::pair<int, ClassId>> goals{{rule.lhs_root, root}};
        solve(rule, goals, 0, binding, [&](const std::vector<ClassId>& b) {
          if (out.size() - first >= limit) {
            truncated_ = true;
            return false;
          }
          std::vector<ClassId> key(b);
          key.push_back(root);
          if (seen.insert(std::move(key)).second) consider(rule, ri, root, b, opt, out);
          return true;
        });
        if (truncated_ && out.size() - first >= limit) break;
      }
    }
    // revisit everything next time so that nothing is lost
    if (truncated_) touched_.insert(touched_.end(), roots.begin(), roots.end());
    return out;
  }

  // Whether the last find_matches() dropped matches because of match_limit.
  bool last_pass_truncated() const { return truncated_; }

  // Adds the instantiated right-hand side and merges it with the matched class.
  void apply(const CompiledRule& rule, const RuleMatch& m) {
    ClassId r = instantiate(rule, rule.rhs_root, m.binding);
    merge(m.lhs, r);
  }

  // Like apply(), but only when no new node is needed.
  bool apply_if_present(const CompiledRule& rule, const RuleMatch& m) {
    auto r = lookup_instance(rule, rule.rhs_root, m.binding);
    if (!r) return false;
    merge(m.lhs, *r);
    return true;
  }

  bool is_saturated(const std::vector<CompiledRule>& rules) {
    auto saved = touched_;
    bool sat = find_matches(rules).empty();
    touched_ = saved;
    return sat;
  }

  // One full rewriting pass, reported as pairs of expressions (nothing is merged).
  std::vector<std::pair<Regex, Regex>> rewrite_step(const std::vector<RewriteRule>& rules) {
    auto compiled = compile_rules(rules);
    auto saved = touched_;
    auto matches = find_matches(compiled);
    touched_ = saved;
    std::vector<std::pair<Regex, Regex>> out;
    for (auto& m : matches) {
      Subst s;
      auto names = vars(compiled[m.rule].lhs_expr);
      std::map<std::string, int> slots;
      std::vector<CompiledRule::PNode> scratch;
      detail::compile_pattern(compiled[m.rule].lhs_expr, scratch, slots);
      for (auto& [name, slot] : slots) s[name] = emin(m.binding[slot]);
      out.emplace_back(emin(m.lhs), substitute(compiled[m.rule].rhs_expr, s));
    }
    return out;
  }

  std::string to_dot() const {
    std::ostringstream os;
    os << "digraph egraph {\n  compound=true;\n  node [shape=box];\n";
    auto label = [](const ENode& n) -> std::string {
      switch (n.op) {
      case Kind::Empty: return "0";
      case Kind::Epsilon: return "1";
      case Kind::Char: return std::string(1, n.sym);
      case Kind::Alt: return "+";
      case Kind::Cat: return ".";
      case Kind::Star: return "*";
      default: return "?";
      }
    };
    for (ClassId c : classes()) {
      os << "  subgraph cluster_" << c << " {\n    style=dashed;\n    label=\"" << c << ": " << print(emin(c))
         << "\";\n";
      for (std::size_t i = 0; i < classes_[c].nodes.size(); ++i)
        os << "    n" << c << "_" << i << " [label=\"" << label(classes_[c].nodes[i]) << "\"];\n";
      os << "  }\n";
    }
    for (ClassId c : classes())
      for (std::size_t i = 0; i < classes_[c].nodes.size(); ++i) {
        const ENode& n = classes_[c].nodes[i];
        for (ClassId k : {n.a, n.b}) {
          if (k == kNoClass) continue;
          ClassId t = find(k);
          os << "  n" << c << "_" << i << " -> n" << t << "_0 [lhead=cluster_" << t << "];\n";
        }
      }
    os << "}\n";
    return os.str();
  }

private:
  struct EClass {
    std::vector<ENode> nodes;
    std::vector<std::pair<ENode, ClassId>> parents;
    Best best;
  };

  CostParams params_;
  mutable std::vector<ClassId> parent_;
  std::vector<EClass> classes_;
  std::unordered_map<ENode, ClassId, ENodeHash> memo_;
  std::vector<ClassId> pending_;
  std::vector<ClassId> improved_;
  std::vector<ClassId> renorm_;
  std::vector<ClassId> touched_;
  std::vector<std::pair<ClassId, ClassId>> merges_;
  std::set<std::pair<ClassId, ClassId>> diseq_;
  bool diseq_dirty_ = false;
  std::size_t num_nodes_ = 0;
  std::size_t live_classes_ = 0;
  std::uint64_t version_ = 0;
  bool truncated_ = false;

  ENode canonical(ENode n) const {
    if (n.a != kNoClass) n.a = find(n.a);
    if (n.b != kNoClass) n.b = find(n.b);
    return n;
  }

  void repair(ClassId c) {
    auto parents = std::move(classes_[c].parents);
    classes_[c].parents.clear();
    for (auto& [pn, pc] : parents) {
      memo_.erase(pn);
      renorm_.push_back(pc);
    }
    std::unordered_map<ENode, ClassId, ENodeHash> seen;
    for (auto& [pn, pc] : parents) {
      ENode n = canonical(pn);
      auto it = seen.find(n);
      if (it != seen.end()) {
        if (find(it->second) != find(pc)) merge(it->second, pc);
      } else {
        seen.emplace(n, find(pc));
      }
      auto m = memo_.find(n);
      if (m != memo_.end()) {
        if (find(m->second) != find(pc)) merge(m->second, pc);
      } else {
        memo_.emplace(n, find(pc));
      }
    }
    ClassId root = find(c);
    for (auto& [n, pc] : seen) classes_[root].parents.emplace_back(n, find(pc));
    // parents were rewritten in place; keep a stable order for determinism
    std::sort(classes_[root].parents.begin(), classes_[root].parents.end(),
              [](auto& x, auto& y) { return x.first < y.first || (x.first == y.first && x.second < y.second); });
  }

  void recount_nodes() {
    std::size_t n = 0;
    for (ClassId c = 0; c < parent_.size(); ++c)
      if (parent_[c] == c) n += classes_[c].nodes.size();
    num_nodes_ = n;
  }

  Best node_best(const ENode& n) const {
    Best b;
    switch (n.op) {
    case Kind::Alt:
    case Kind::Cat: {
      const Best& l = classes_[find(n.a)].best;
      const Best& r = classes_[find(n.b)].best;
      if (!l.rep || !r.rep) return b;
      b.cost = n.op == Kind::Alt ? sat_alt_cost(l.cost, r.cost) : sat_cat_cost(params_, l.cost, r.cost);
      b.height = std::max(l.height, r.height) + 1;
      b.rep = n.op == Kind::Alt ? alt(l.rep, r.rep) : cat(l.rep, r.rep);
      return b;
    }
    case Kind::Star: {
      const Best& x = classes_[find(n.a)].best;
      if (!x.rep) return b;
      b.cost = sat_star_cost(params_, x.cost);
      b.height = x.height + 1;
      b.rep = star(x.rep);
      return b;
    }
    case Kind::Empty: b.rep = empty(); break;
    case Kind::Epsilon: b.rep = epsilon(); break;
    default: b.rep = chr(n.sym); break;
    }
    b.cost = 1;
    b.height = 0;
    return b;
  }

  // Strict order on representatives: cost, then height, then printed form.
  static bool better(const Best& x, const Best& y) {
    if (!x.rep) return false;
    if (!y.rep) return true;
    if (x.cost != y.cost) return x.cost < y.cost;
    if (x.height != y.height) return x.height < y.height;
    return print(x.rep) < print(y.rep);
  }

  // Cheap precheck before building a candidate representative.
  bool may_improve(const ENode& n, const Best& cur) const {
    if (!cur.rep) return true;
    Cost c;
    std::uint32_t h;
    switch (n.op) {
    case Kind::Alt:
    case Kind::Cat: {
      const Best& l = classes_[find(n.a)].best;
      const Best& r = classes_[find(n.b)].best;
      c = n.op == Kind::Alt ? sat_alt_cost(l.cost, r.cost) : sat_cat_cost(params_, l.cost, r.cost);
      h = std::max(l.height, r.height) + 1;
      break;
    }
    case Kind::Star: {
      const Best& x = classes_[find(n.a)].best;
      c = sat_star_cost(params_, x.cost);
      h = x.height + 1;
      break;
    }
    default:
      c = 1;
      h = 0;
    }
    if (c != cur.cost) return c < cur.cost;
    return h <= cur.height;
  }

  void propagate_best() {
    while (!improved_.empty()) {
      ClassId c = find(improved_.back());
      improved_.pop_back();
      for (auto& [pn, pc] : classes_[c].parents) {
        ClassId p = find(pc);
        Best& cur = classes_[p].best;
        if (!may_improve(pn, cur)) continue;
        Best cand = node_best(canonical(pn));
        if (better(cand, cur)) {
          cur = std::move(cand);
          improved_.push_back(p);
        }
      }
    }
  }

  // ---- matching -------------------------------------------------------------

  std::vector<ClassId> incremental_roots(const std::vector<CompiledRule>& rules) {
    unsigned depth = 0;
    for (auto& r : rules) depth = std::max(depth, r.depth);
    std::vector<char> mark(parent_.size(), 0);
    std::vector<ClassId> frontier;
    for (ClassId t : touched_) {
      t = find(t);
      if (!mark[t]) {
        mark[t] = 1;
        frontier.push_back(t);
      }
    }
    std::vector<ClassId> all = frontier;
    for (unsigned d = 0; d < depth && !frontier.empty(); ++d) {
      std::vector<ClassId> next;
      for (ClassId c : frontier)
        for (auto& [pn, pc] : classes_[c].parents) {
          ClassId p = find(pc);
          if (!mark[p]) {
            mark[p] = 1;
            next.push_back(p);
          }
        }
      all.insert(all.end(), next.begin(), next.end());
      frontier.swap(next);
    }
    std::sort(all.begin(), all.end());
    return all;
  }

  // Depth-first matching of pattern goals; emit() returns false to stop.
  template <class F>
  bool solve(const CompiledRule& rule, std::vector<std::pair<int, ClassId>>& goals, std::size_t i,
             std::vector<ClassId>& binding, F&& emit) {
    if (i == goals.size()) return emit(binding);
    auto [pi, cls] = goals[i];
    const auto& p = rule.lhs[pi];
    cls = find(cls);
    if (p.op == Kind::Var) {
      ClassId& slot = binding[p.var];
      bool go = true;
      if (slot == kNoClass) {
        slot = cls;
        go = solve(rule, goals, i + 1, binding, emit);
        slot = kNoClass;
      } else if (find(slot) == cls) {
        go = solve(rule, goals, i + 1, binding, emit);
      }
      return go;
    }
    // node lists do not change while matching
    const auto& nodes = classes_[cls].nodes;
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      const ENode& n = nodes[k];
      if (n.op != p.op || n.sym != p.sym) continue;
      std::size_t mark = goals.size();
      if (p.left >= 0) goals.emplace_back(p.left, n.a);
      if (p.right >= 0) goals.emplace_back(p.right, n.b);
      bool go = solve(rule, goals, i + 1, binding, emit);
      goals.resize(mark);
      if (!go) return false;
    }
    return true;
  }

  std::optional<ClassId> lookup_instance(const CompiledRule& rule, int pi, const std::vector<ClassId>& b) const {
    const auto& p = rule.rhs[pi];
    if (p.op == Kind::Var) return find(b[p.var]);
    ENode n{p.op, p.sym};
    if (p.left >= 0) {
      auto l = lookup_instance(rule, p.left, b);
      if (!l) return std::nullopt;
      n.a = *l;
    }
    if (p.right >= 0) {
      auto r = lookup_instance(rule, p.right, b);
      if (!r) return std::nullopt;
      n.b = *r;
    }
    return lookup_node(n);
  }

  ClassId instantiate(const CompiledRule& rule, int pi, const std::vector<ClassId>& b) {
    const auto& p = rule.rhs[pi];
    if (p.op == Kind::Var) return find(b[p.var]);
    ENode n{p.op, p.sym};
    if (p.left >= 0) n.a = instantiate(rule, p.left, b);
    if (p.right >= 0) n.b = instantiate(rule, p.right, b);
    return add_node(n);
  }

  void consider(const CompiledRule& rule, std::uint32_t ri, ClassId root, const std::vector<ClassId>& b,
                const PassOptions& opt, std::vector<RuleMatch>& out) const {
    auto existing = lookup_instance(rule, rule.rhs_root, b);
    if (existing && *existing == find(root)) return;
    if (!existing && opt.merge_only) return;
    out.push_back({find(root), ri, b});
  }
};

} // namespace regis

#endif
