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

#ifndef REGIS_REGEX_HPP
#define REGIS_REGEX_HPP

#include <cctype>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

namespace regis {

enum class Kind : std::uint8_t { Empty, Epsilon, Char, Alt, Cat, Star, Var };

struct Node;
using Regex = std::shared_ptr<const Node>;

// Immutable tree node. Var only occurs inside rewrite patterns.
struct Node {
  Kind kind;
  char sym = 0;
  std::string name;
  Regex left;
  Regex right;
  std::size_t hash = 0;
  std::uint32_t height = 0;
  std::uint32_t size = 1;
};

class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " at position " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const { return pos_; }

private:
  std::size_t pos_;
};

namespace detail {

inline std::size_t mix(std::size_t h, std::size_t v) {
  std::uint64_t x = h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
  x ^= x >> 31;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  return static_cast<std::size_t>(x);
}

inline Regex make(Kind k, char sym, std::string name, Regex l, Regex r) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->sym = sym;
  n->name = std::move(name);
  std::size_t h = mix(static_cast<std::size_t>(k) + 1, static_cast<unsigned char>(sym));
  for (char c : n->name) h = mix(h, static_cast<unsigned char>(c));
  if (l) {
    h = mix(h, l->hash);
    n->height = l->height + 1;
    n->size += l->size;
  }
  if (r) {
    h = mix(h, r->hash);
    n->height = std::max(n->height, r->height + 1);
    n->size += r->size;
  }
  n->hash = h;
  n->left = std::move(l);
  n->right = std::move(r);
  return n;
}

inline bool is_reserved(char c) {
  switch (c) {
  case '0': case '1': case '(': case ')': case '+': case '*': case '.':
  case ' ': case '\t': case '\n': case '\r':
    return true;
  default:
    return false;
  }
}

} // namespace detail

inline Regex empty() {
  static const Regex r = detail::make(Kind::Empty, 0, {}, nullptr, nullptr);
  return r;
}
inline Regex epsilon() {
  static const Regex r = detail::make(Kind::Epsilon, 0, {}, nullptr, nullptr);
  return r;
}
inline Regex chr(char c) {
  if (detail::is_reserved(c) || c == '?')
    throw std::invalid_argument(std::string("reserved character '") + c + "'");
  return detail::make(Kind::Char, c, {}, nullptr, nullptr);
}
inline Regex alt(Regex a, Regex b) { return detail::make(Kind::Alt, 0, {}, std::move(a), std::move(b)); }
inline Regex cat(Regex a, Regex b) { return detail::make(Kind::Cat, 0, {}, std::move(a), std::move(b)); }
inline Regex star(Regex a) { return detail::make(Kind::Star, 0, {}, std::move(a), nullptr); }
inline Regex var(std::string name) { return detail::make(Kind::Var, 0, std::move(name), nullptr, nullptr); }

inline bool is_leaf(const Regex& r) { return !r->left; }
inline std::uint32_t height(const Regex& r) { return r->height; }
inline std::uint32_t size(const Regex& r) { return r->size; }

inline bool equal(const Regex& a, const Regex& b) {
  if (a.get() == b.get()) return true;
  if (a->hash != b->hash || a->kind != b->kind || a->sym != b->sym || a->size != b->size) return false;
  if (a->kind == Kind::Var && a->name != b->name) return false;
  if (a->left && !equal(a->left, b->left)) return false;
  if (a->right && !equal(a->right, b->right)) return false;
  return true;
}

struct RegexHash {
  std::size_t operator()(const Regex& r) const { return r->hash; }
};
struct RegexEq {
  bool operator()(const Regex& a, const Regex& b) const { return equal(a, b); }
};
using RegexSet = std::unordered_set<Regex, RegexHash, RegexEq>;

// ---- printing ------------------------------------------------------------

namespace detail {

inline int prec(const Regex& r) {
  switch (r->kind) {
  case Kind::Alt: return 1;
  case Kind::Cat: return 2;
  default: return 3;
  }
}

inline void print_into(const Regex& r, std::string& out) {
  auto child = [&out](const Regex& c, bool paren) {
    if (paren) out += '(';
    print_into(c, out);
    if (paren) out += ')';
  };
  switch (r->kind) {
  case Kind::Empty: out += '0'; break;
  case Kind::Epsilon: out += '1'; break;
  case Kind::Char: out += r->sym; break;
  case Kind::Var: out += '?'; out += r->name; break;
  case Kind::Alt:
    child(r->left, false);
    out += '+';
    child(r->right, prec(r->right) <= 1);
    break;
  case Kind::Cat: {
    child(r->left, prec(r->left) < 2);
    std::string rhs;
    bool paren = prec(r->right) <= 2;
    if (paren) rhs += '(';
    print_into(r->right, rhs);
    if (paren) rhs += ')';
    // a variable followed by a name character would read as one longer name
    std::size_t i = out.size();
    while (i > 0 && (std::isalnum(static_cast<unsigned char>(out[i - 1])) || out[i - 1] == '_')) --i;
    if (i > 0 && out[i - 1] == '?' && (std::isalnum(static_cast<unsigned char>(rhs[0])) || rhs[0] == '_'))
      out += '.';
    out += rhs;
    break;
  }
  case Kind::Star:
    child(r->left, prec(r->left) < 3);
    out += '*';
    break;
  }
}

inline void sexpr_into(const Regex& r, std::string& out) {
  switch (r->kind) {
  case Kind::Empty: out += '0'; break;
  case Kind::Epsilon: out += '1'; break;
  case Kind::Char: out += r->sym; break;
  case Kind::Var: out += '?'; out += r->name; break;
  case Kind::Alt:
  case Kind::Cat:
    out += r->kind == Kind::Alt ? "(+ " : "(. ";
    sexpr_into(r->left, out);
    out += ' ';
    sexpr_into(r->right, out);
    out += ')';
    break;
  case Kind::Star:
    out += "(* ";
    sexpr_into(r->left, out);
    out += ')';
    break;
  }
}

} // namespace detail

// Canonical infix text, minimally parenthesized. Alt and Cat associate to the left.
inline std::string print(const Regex& r) {
  std::string out;
  detail::print_into(r, out);
  return out;
}

inline std::string print_sexpr(const Regex& r) {
  std::string out;
  detail::sexpr_into(r, out);
  return out;
}

// ---- parsing -------------------------------------------------------------

namespace detail {

class Parser {
public:
  Parser(std::string_view text, bool allow_vars) : s_(text), vars_(allow_vars) {}

  Regex parse() {
    skip();
    if (pos_ >= s_.size()) throw ParseError("empty expression", pos_);
    Regex r = looks_like_sexpr() ? sexpr() : alternation();
    skip();
    if (pos_ < s_.size()) throw ParseError(std::string("unexpected '") + s_[pos_] + "'", pos_);
    return r;
  }

private:
  std::string_view s_;
  bool vars_;
  std::size_t pos_ = 0;

  void skip() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\n' || s_[pos_] == '\r'))
      ++pos_;
  }
  bool at_end() { skip(); return pos_ >= s_.size(); }
  char peek() { skip(); return pos_ < s_.size() ? s_[pos_] : '\0'; }

  bool looks_like_sexpr() {
    if (peek() != '(') return false;
    std::size_t p = pos_ + 1;
    while (p < s_.size() && (s_[p] == ' ' || s_[p] == '\t' || s_[p] == '\n')) ++p;
    return p < s_.size() && (s_[p] == '+' || s_[p] == '.' || s_[p] == '*');
  }

  static bool name_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
  }

  Regex variable() {
    std::size_t start = pos_;
    ++pos_;
    if (!vars_) throw ParseError("variables are only allowed in patterns", start);
    std::size_t b = pos_;
    while (pos_ < s_.size() && name_char(s_[pos_])) ++pos_;
    if (pos_ == b) throw ParseError("missing variable name", b);
    return var(std::string(s_.substr(b, pos_ - b)));
  }

  Regex atom() {
    char c = peek();
    std::size_t at = pos_;
    if (c == '\0') throw ParseError("unexpected end of input", at);
    if (c == '?') return variable();
    if (c == '0') { ++pos_; return empty(); }
    if (c == '1') { ++pos_; return epsilon(); }
    if (detail::is_reserved(c)) throw ParseError(std::string("unexpected '") + c + "'", at);
    ++pos_;
    return chr(c);
  }

  Regex alternation() {
    Regex r = concatenation();
    while (peek() == '+') {
      ++pos_;
      r = alt(r, concatenation());
    }
    return r;
  }

  bool starts_primary() {
    char c = peek();
    if (c == '\0' || c == ')' || c == '+' || c == '*' || c == '.') return false;
    return true;
  }

  Regex concatenation() {
    Regex r = postfix();
    for (;;) {
      if (peek() == '.') {
        ++pos_;
        r = cat(r, postfix());
      } else if (starts_primary()) {
        r = cat(r, postfix());
      } else {
        return r;
      }
    }
  }

  Regex postfix() {
    Regex r = primary();
    while (peek() == '*') {
      ++pos_;
      r = star(r);
    }
    return r;
  }

  Regex primary() {
    if (peek() == '(') {
      std::size_t open = pos_;
      ++pos_;
      Regex r = alternation();
      if (peek() != ')') throw ParseError("missing ')' for '(' at " + std::to_string(open), pos_);
      ++pos_;
      return r;
    }
    return atom();
  }

  Regex sexpr() {
    if (peek() != '(') return atom();
    std::size_t open = pos_;
    ++pos_;
    char op = peek();
    ++pos_;
    std::vector<Regex> args;
    while (peek() != ')') {
      if (at_end()) throw ParseError("missing ')' for '(' at " + std::to_string(open), pos_);
      args.push_back(sexpr());
    }
    ++pos_;
    if (op == '*') {
      if (args.size() != 1) throw ParseError("'*' takes one argument", open);
      return star(args[0]);
    }
    if (args.size() < 2) throw ParseError(std::string("'") + op + "' takes at least two arguments", open);
    Regex r = args[0];
    for (std::size_t i = 1; i < args.size(); ++i) r = op == '+' ? alt(r, args[i]) : cat(r, args[i]);
    return r;
  }
};

} // namespace detail

// Accepts infix syntax or an s-expression such as "(+ a (* b))".
inline Regex parse(std::string_view text) { return detail::Parser(text, false).parse(); }
inline Regex parse_pattern(std::string_view text) { return detail::Parser(text, true).parse(); }

// ---- structural utilities ---------------------------------------------------

// Proper subexpressions in post-order, without duplicates.
inline std::vector<Regex> subexprs(const Regex& root) {
  std::vector<Regex> out;
  RegexSet seen;
  std::function<void(const Regex&)> walk = [&](const Regex& r) {
    if (r->left) walk(r->left);
    if (r->right) walk(r->right);
    if (r != root && seen.insert(r).second) out.push_back(r);
  };
  walk(root);
  return out;
}

inline void collect_alphabet(const Regex& r, std::set<char>& out) {
  if (r->kind == Kind::Char) out.insert(r->sym);
  if (r->left) collect_alphabet(r->left, out);
  if (r->right) collect_alphabet(r->right, out);
}

inline std::set<char> alphabet(const Regex& r) {
  std::set<char> out;
  collect_alphabet(r, out);
  return out;
}

inline void collect_vars(const Regex& r, std::set<std::string>& out) {
  if (r->kind == Kind::Var) out.insert(r->name);
  if (r->left) collect_vars(r->left, out);
  if (r->right) collect_vars(r->right, out);
}

inline std::set<std::string> vars(const Regex& r) {
  std::set<std::string> out;
  collect_vars(r, out);
  return out;
}

inline bool is_ground(const Regex& r) { return vars(r).empty(); }

using Subst = std::map<std::string, Regex>;

// Syntactic matching; repeated variables must bind structurally equal terms.
inline bool match(const Regex& pat, const Regex& term, Subst& s) {
  if (pat->kind == Kind::Var) {
    auto it = s.find(pat->name);
    if (it == s.end()) {
      s.emplace(pat->name, term);
      return true;
    }
    return equal(it->second, term);
  }
  if (pat->kind != term->kind || pat->sym != term->sym) return false;
  if (pat->left && !match(pat->left, term->left, s)) return false;
  if (pat->right && !match(pat->right, term->right, s)) return false;
  return true;
}

inline Regex substitute(const Regex& pat, const Subst& s) {
  switch (pat->kind) {
  case Kind::Var: {
    auto it = s.find(pat->name);
    if (it == s.end()) throw std::invalid_argument("unbound variable ?" + pat->name);
    return it->second;
  }
  case Kind::Alt: return alt(substitute(pat->left, s), substitute(pat->right, s));
  case Kind::Cat: return cat(substitute(pat->left, s), substitute(pat->right, s));
  case Kind::Star: return star(substitute(pat->left, s));
  default: return pat;
  }
}

// Total order used for tie-breaks: by canonical print.
inline bool print_less(const Regex& a, const Regex& b) { return print(a) < print(b); }

} // namespace regis

#endif
