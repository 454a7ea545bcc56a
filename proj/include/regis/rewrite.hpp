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

#ifndef REGIS_REWRITE_HPP
#define REGIS_REWRITE_HPP

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "regex.hpp"

namespace regis {

// lhs <-> rhs when bidirectional, lhs -> rhs otherwise.
struct RewriteRule {
  std::string name;
  Regex lhs;
  Regex rhs;
  bool bidirectional = true;
};

// One orientation of a rule, as used by the matcher.
struct DirectedRule {
  std::string name;
  Regex lhs;
  Regex rhs;
};

class RuleError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline bool subset(const std::set<std::string>& a, const std::set<std::string>& b) {
  for (auto& x : a)
    if (!b.count(x)) return false;
  return true;
}

inline RewriteRule make_rule(std::string name, Regex lhs, Regex rhs, bool bidirectional = true) {
  auto lv = vars(lhs), rv = vars(rhs);
  if (!subset(rv, lv)) throw RuleError("rule '" + name + "': right side uses a variable the left side does not bind");
  if (bidirectional && !subset(lv, rv))
    throw RuleError("rule '" + name + "': left side has a variable the right side lacks, so it cannot be bidirectional");
  return {std::move(name), std::move(lhs), std::move(rhs), bidirectional};
}

inline std::vector<DirectedRule> directed(const std::vector<RewriteRule>& rules) {
  std::vector<DirectedRule> out;
  for (auto& r : rules) {
    out.push_back({r.name, r.lhs, r.rhs});
    if (r.bidirectional) out.push_back({r.name + "-rev", r.rhs, r.lhs});
  }
  return out;
}

inline std::string print_rule(const RewriteRule& r) {
  return r.name + ": " + print(r.lhs) + (r.bidirectional ? " <-> " : " -> ") + print(r.rhs);
}

// One rule per line: `name: lhs <-> rhs` or `name: lhs -> rhs`. Blank lines and
// lines starting with '#' are ignored.
inline std::vector<RewriteRule> parse_rules(std::string_view text) {
  std::vector<RewriteRule> rules;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    auto where = [&](const std::string& msg) { return RuleError("line " + std::to_string(lineno) + ": " + msg); };
    auto colon = line.find(':');
    if (colon == std::string::npos) throw where("expected 'name: lhs <-> rhs'");
    std::string name = line.substr(first, colon - first);
    while (!name.empty() && (name.back() == ' ' || name.back() == '\t')) name.pop_back();
    if (name.empty()) throw where("missing rule name");
    std::string body = line.substr(colon + 1);
    bool bidir = true;
    auto arrow = body.find("<->");
    std::size_t len = 3;
    if (arrow == std::string::npos) {
      arrow = body.find("->");
      len = 2;
      bidir = false;
    }
    if (arrow == std::string::npos) throw where("missing '<->' or '->'");
    try {
      Regex lhs = parse_pattern(body.substr(0, arrow));
      Regex rhs = parse_pattern(body.substr(arrow + len));
      rules.push_back(make_rule(name, lhs, rhs, bidir));
    } catch (const ParseError& e) {
      throw where(e.what());
    } catch (const RuleError& e) {
      throw where(e.what());
    }
  }
  return rules;
}

inline std::vector<RewriteRule> load_rules(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw RuleError("cannot open rule file " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_rules(ss.str());
}

// The Kleene algebra axioms used for simplification. The two annihilator rules
// are one-way: read backwards they would have to invent the erased operand.
inline constexpr std::string_view kKleeneRuleText = R"(# Kleene algebra rewrite rules
assoc-plus: ?x+(?y+?z) <-> ?x+?y+?z
commut-plus: ?x+?y <-> ?y+?x
identity-plus: ?x+0 <-> ?x
idem-plus: ?x+?x <-> ?x
assoc-cat: ?x(?y?z) <-> ?x?y?z
left-identity-cat: 1?x <-> ?x
right-identity-cat: ?x.1 <-> ?x
left-distrib: ?x(?y+?z) <-> ?x?y+?x?z
right-distrib: (?x+?y)?z <-> ?x?z+?y?z
left-annihilator: 0?x -> 0
right-annihilator: ?x.0 -> 0
unroll-left: 1+?x?x* <-> ?x*
unroll-right: 1+?x*?x <-> ?x*
star-idem: ?x*?x* <-> ?x*
star-sat: ?x** <-> ?x*
star-one: 1* <-> 1
star-zero: 0* <-> 1
)";

inline std::vector<RewriteRule> kleene_rules() { return parse_rules(kKleeneRuleText); }

inline void add_unique(std::vector<Regex>& out, const Regex& r) {
  for (auto& x : out)
    if (equal(x, r)) return;
  out.push_back(r);
}

inline void apply_directed(const DirectedRule& d, const Regex& e, std::vector<Regex>& out) {
  Subst s;
  if (match(d.lhs, e, s)) add_unique(out, substitute(d.rhs, s));
}

// Root-level application; both orientations for bidirectional rules.
inline std::vector<Regex> apply_rule(const RewriteRule& w, const Regex& e) {
  std::vector<Regex> out;
  for (auto& d : directed({w})) apply_directed(d, e, out);
  return out;
}

inline std::vector<Regex> apply_all(const std::vector<Regex>& exprs, const std::vector<RewriteRule>& rules) {
  std::vector<Regex> out;
  RegexSet seen;
  for (auto& e : exprs)
    for (auto& w : rules)
      for (auto& r : apply_rule(w, e))
        if (seen.insert(r).second) out.push_back(r);
  return out;
}

} // namespace regis

#endif
