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

#ifndef REGIS_ENGINE_HPP
#define REGIS_ENGINE_HPP

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <deque>
#include <future>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "cost.hpp"
#include "egraph.hpp"
#include "enumerator.hpp"
#include "nfa.hpp"
#include "overlay.hpp"
#include "regex.hpp"
#include "rewrite.hpp"

namespace regis {

enum class Mode { Regis, EnumOnly, RewriteOnly };

inline const char* to_string(Mode m) {
  switch (m) {
  case Mode::Regis: return "regis";
  case Mode::EnumOnly: return "enum_only";
  default: return "rewrite_only";
  }
}

struct SimplifyConfig {
  // Unset: deepen the height bound from 1 up to height(source), stopping at the
  // first proved run. Set: a single run with exactly this bound.
  std::optional<unsigned> max_height;
  std::vector<RewriteRule> rules = kleene_rules();
  Mode mode = Mode::Regis;
  unsigned threads = 1;
  double wall_timeout = 3.0; // seconds
  std::uint64_t max_steps = 0; // machine steps; 0 means no limit. Unlike the wall clock this is reproducible
  std::uint64_t eq_budget_unit = 10000;
  EnumStrategy enum_strategy = EnumStrategy::Explicit;
  std::optional<std::vector<char>> alphabet; // default: symbols of the source
  bool assume_complete = false;
  bool height_pruning = true;
  std::size_t egraph_node_limit = 400;
  std::size_t rule_match_limit = 1000; // per rule and rewrite pass
  unsigned rewrite_burst = 1;          // rewrite passes before search gets a turn
};

enum class HaltReason { None, Proved, Saturated, Exhausted, Timeout, StepLimit, RewriteLimit };

inline const char* to_string(HaltReason h) {
  switch (h) {
  case HaltReason::None: return "running";
  case HaltReason::Proved: return "proved";
  case HaltReason::Saturated: return "saturated";
  case HaltReason::Exhausted: return "exhausted";
  case HaltReason::Timeout: return "timeout";
  case HaltReason::StepLimit: return "step-limit";
  default: return "rewrite-limit";
  }
}

// The transition a machine step took.
enum class Step { Union2, Union1, Union3, Saturate, Rewrite, Equality, Inequality, Timeout, Enumerate, Halt };

inline const char* to_string(Step t) {
  switch (t) {
  case Step::Union2: return "union2";
  case Step::Union1: return "union1";
  case Step::Union3: return "union3";
  case Step::Saturate: return "saturate";
  case Step::Rewrite: return "rewrite";
  case Step::Equality: return "equality";
  case Step::Inequality: return "inequality";
  case Step::Timeout: return "timeout";
  case Step::Enumerate: return "enumerate";
  default: return "halt";
  }
}

struct Stats {
  std::uint64_t steps = 0;
  std::uint64_t eq_checks_run = 0;
  std::uint64_t eq_checks_skipped = 0;
  std::uint64_t eq_timeouts = 0;
  std::uint64_t unions = 0;
  std::uint64_t rewrites = 0;
  std::uint64_t rewrite_passes = 0;
  std::uint64_t targets = 0;
  std::uint64_t targets_rejected = 0;
  std::uint64_t final_k = 0;
  std::uint64_t learned_rules = 0;
  std::uint64_t egraph_nodes = 0;
  std::uint64_t egraph_classes = 0;
  std::uint64_t runs = 0;
  double wall_seconds = 0;
};

struct SimplifyResult {
  Regex source;
  Regex best;
  Cost cost_in = 0;
  Cost cost_best = 0;
  bool global_min_proved = false;
  HaltReason halt = HaltReason::None;
  unsigned max_height = 0;
  CostParams params;
  std::vector<char> alphabet;
  Mode mode = Mode::Regis;
  Stats stats;
  std::vector<RewriteRule> learned;
  std::vector<std::string> warnings;
};

// One run of the simplification machine at a fixed height bound.
class Machine {
public:
  Machine(const Regex& source, const SimplifyConfig& cfg, unsigned max_height)
      : cfg_(cfg), source_(source), max_height_(std::max(1u, max_height)),
        alphabet_(pick_alphabet(source, cfg)),
        params_(CostParams::make(max_height_, std::max<std::size_t>(1, alphabet_.size()))), egraph_(params_),
        enumerator_(params_, alphabet_, max_height_, kCostInf, cfg.enum_strategy),
        started_(std::chrono::steady_clock::now()) {
    if (cfg_.max_height && *cfg_.max_height < height(source))
      warnings_.push_back("max_height " + std::to_string(*cfg_.max_height) + " is below the source height " +
                          std::to_string(height(source)));
    rules_ = compile_rules(cfg_.rules);
    s0_ = egraph_.add(source);
    overlay_.add_source(source, s0_);
    // the Source rule, applied eagerly: every proper subexpression is a source
    if (cfg_.mode == Mode::Regis)
      for (auto& sub : source_subexprs(source)) {
        ClassId c = egraph_.add(sub);
        overlay_.add_source(sub, c);
      }
    best_cost_ = egraph_.min_cost(s0_);
    enumerator_.tighten_bounds(sat_add(best_cost_, 1), cfg_.height_pruning ? height(source) : max_height_);
  }

  bool halted() const { return halt_ != HaltReason::None; }
  HaltReason halt_reason() const { return halt_; }

  Step step() {
    if (halted()) return Step::Halt;
    ++stats_.steps;
    if (elapsed() > cfg_.wall_timeout) return stop(HaltReason::Timeout);
    if (cfg_.max_steps && stats_.steps > cfg_.max_steps) return stop(HaltReason::StepLimit);

    // Union2: the cheapest unrefuted target is equal to the source
    if (union2_enabled()) return stop(HaltReason::Proved, Step::Union2);

    if (!equalities_.empty()) {
      union1();
      return Step::Union1;
    }
    if (!inequalities_.empty()) {
      union3();
      return Step::Union3;
    }
    if (cfg_.mode != Mode::EnumOnly) {
      bool quiet = egraph_.version() == quiet_version_;
      if (quiet && cfg_.assume_complete && !incomplete_) return stop(HaltReason::Saturated, Step::Saturate);
      if (!quiet && burst_ < cfg_.rewrite_burst && rewrite()) {
        ++burst_;
        return Step::Rewrite;
      }
    }
    if (cfg_.mode == Mode::RewriteOnly)
      return stop(incomplete_ ? HaltReason::RewriteLimit : HaltReason::Saturated);

    burst_ = 0;
    if (auto t = process_edges()) return *t;
    if (enumerate()) return Step::Enumerate;
    // nothing left to search; let rewriting finish its work
    if (cfg_.mode != Mode::EnumOnly && egraph_.version() != quiet_version_ && rewrite()) return Step::Rewrite;
    return stop(HaltReason::Exhausted);
  }

  SimplifyResult run() {
    while (!halted()) step();
    return result();
  }

  SimplifyResult result() const {
    SimplifyResult r;
    r.source = source_;
    r.best = egraph_.emin(s0_);
    r.cost_in = saturating_cost(source_, params_);
    r.cost_best = egraph_.min_cost(s0_);
    r.halt = halt_;
    r.global_min_proved = halt_ == HaltReason::Proved || (halt_ == HaltReason::Saturated && cfg_.assume_complete);
    r.max_height = max_height_;
    r.params = params_;
    r.alphabet = alphabet_;
    r.mode = cfg_.mode;
    r.stats = stats_;
    r.stats.final_k = overlay_.k();
    r.stats.egraph_nodes = egraph_.num_nodes();
    r.stats.egraph_classes = egraph_.num_classes();
    r.stats.wall_seconds = elapsed();
    r.stats.runs = 1;
    r.learned = learned_;
    r.warnings = warnings_;
    return r;
  }

  const EGraph& egraph() const { return egraph_; }
  const Overlay& overlay() const { return overlay_; }
  const Enumerator& enumerator() const { return enumerator_; }
  ClassId source_class() const { return egraph_.find(s0_); }
  std::size_t pending_equalities() const { return equalities_.size(); }
  std::size_t pending_inequalities() const { return inequalities_.size(); }

private:
  struct Fact {
    bool from_rule;
    ClassId lhs = kNoClass;
    std::uint32_t rule = 0;
    std::vector<ClassId> binding;
    ClassId a = kNoClass, b = kNoClass;
  };

  SimplifyConfig cfg_;
  Regex source_;
  unsigned max_height_;
  std::vector<char> alphabet_;
  CostParams params_;
  EGraph egraph_;
  Overlay overlay_;
  Enumerator enumerator_;
  std::vector<CompiledRule> rules_;
  ClassId s0_ = kNoClass;
  std::deque<Fact> equalities_;
  std::deque<std::pair<ClassId, ClassId>> inequalities_;
  std::vector<RewriteRule> learned_;
  std::vector<std::string> warnings_;
  Stats stats_;
  HaltReason halt_ = HaltReason::None;
  Cost best_cost_ = kCostInf;
  std::uint64_t quiet_version_ = ~std::uint64_t(0);
  bool incomplete_ = false;
  bool enum_done_ = false;
  unsigned burst_ = 0;
  std::chrono::steady_clock::time_point started_;
  std::unordered_map<const Node*, std::pair<Regex, std::shared_ptr<const Nfa>>> nfa_cache_;

  static std::vector<char> pick_alphabet(const Regex& source, const SimplifyConfig& cfg) {
    if (cfg.alphabet) {
      auto a = *cfg.alphabet;
      std::sort(a.begin(), a.end());
      a.erase(std::unique(a.begin(), a.end()), a.end());
      return a;
    }
    auto s = alphabet(source);
    return {s.begin(), s.end()};
  }

  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - started_).count();
  }

  Step stop(HaltReason h, Step t = Step::Halt) {
    halt_ = h;
    return t;
  }

  bool union2_enabled() const {
    std::size_t k = overlay_.k();
    return k < overlay_.targets().size() && overlay_.targets()[k].live &&
           egraph_.find(overlay_.targets()[k].cls) == egraph_.find(s0_);
  }

  void union1() {
    Fact f = std::move(equalities_.front());
    equalities_.pop_front();
    ClassId before = egraph_.num_classes();
    if (f.from_rule) {
      const CompiledRule& rule = rules_[f.rule];
      if (egraph_.num_nodes() >= cfg_.egraph_node_limit) {
        incomplete_ = true;
        egraph_.apply_if_present(rule, {f.lhs, f.rule, f.binding});
      } else {
        egraph_.apply(rule, {f.lhs, f.rule, f.binding});
      }
      ++stats_.rewrites;
    } else {
      egraph_.merge(f.a, f.b);
    }
    if (egraph_.num_classes() < before) ++stats_.unions;
    if (equalities_.empty()) settle();
  }

  // Restores invariants after a batch of merges.
  void settle() {
    egraph_.rebuild();
    for (auto [keep, gone] : egraph_.take_merges()) overlay_.merge_on_union(egraph_.find(keep), gone);
    normalize_k();
    Cost c = egraph_.min_cost(s0_);
    if (c < best_cost_) {
      best_cost_ = c;
      Regex m = egraph_.emin(s0_);
      enumerator_.tighten_bounds(sat_add(c, 1), cfg_.height_pruning ? height(m) : max_height_);
    }
  }

  void normalize_k() {
    ClassId s = egraph_.find(s0_);
    overlay_.normalize_k([&](ClassId c) { return egraph_.are_unequal(c, s); });
  }

  void union3() {
    auto [a, b] = inequalities_.front();
    inequalities_.pop_front();
    a = egraph_.find(a);
    b = egraph_.find(b);
    if (a == b) throw ContradictionError("a refuted pair ended up in one class");
    egraph_.add_diseq(a, b);
    overlay_.remove_edges_between(a, b);
    ClassId s = egraph_.find(s0_);
    std::size_t k = overlay_.k();
    if (k < overlay_.targets().size()) {
      ClassId t = egraph_.find(overlay_.targets()[k].cls);
      if ((a == s && b == t) || (a == t && b == s)) overlay_.advance_k();
    }
    normalize_k();
  }

  bool rewrite() {
    PassOptions opt;
    opt.incremental = true;
    opt.merge_only = egraph_.num_nodes() >= cfg_.egraph_node_limit;
    opt.match_limit = cfg_.rule_match_limit;
    if (opt.merge_only) incomplete_ = true;
    auto matches = egraph_.find_matches(rules_, opt);
    ++stats_.rewrite_passes;
    if (matches.empty()) {
      quiet_version_ = egraph_.version();
      return false;
    }
    for (auto& m : matches) equalities_.push_back({true, m.lhs, m.rule, std::move(m.binding)});
    return true;
  }

  std::shared_ptr<const Nfa> automaton(const Regex& r) {
    auto it = nfa_cache_.find(r.get());
    if (it != nfa_cache_.end()) return it->second.second;
    if (nfa_cache_.size() > 8192) nfa_cache_.clear();
    auto n = std::make_shared<const Nfa>(thompson(r));
    nfa_cache_.emplace(r.get(), std::make_pair(r, n));
    return n;
  }

  // Drops edges that no longer need a check; returns the next live one.
  bool moot(const Overlay::Edge& e) const {
    const auto& s = overlay_.sources()[e.src];
    const auto& t = overlay_.targets()[e.tgt];
    if (!s.live || !t.live) return true;
    ClassId a = egraph_.find(s.cls), b = egraph_.find(t.cls);
    return a == b || egraph_.are_unequal(a, b);
  }

  std::optional<Step> process_edges() {
    std::vector<Overlay::Edge> batch;
    std::size_t want = std::max(1u, cfg_.threads);
    while (batch.size() < want) {
      auto picks = overlay_.pick_min_edges(want - batch.size());
      if (picks.empty()) break;
      bool dropped = false;
      for (auto& e : picks) {
        if (moot(e)) {
          overlay_.remove_edge(e.src, e.tgt);
          ++stats_.eq_checks_skipped;
          dropped = true;
        } else if (std::none_of(batch.begin(), batch.end(),
                                [&](auto& x) { return x.src == e.src && x.tgt == e.tgt; })) {
          batch.push_back(e);
        }
      }
      if (!dropped) break;
    }
    if (batch.empty()) return std::nullopt;

    struct Job {
      Overlay::Edge edge;
      Regex lhs, rhs;
      std::shared_ptr<const Nfa> a, b;
      std::uint64_t budget;
      BisimResult res{Verdict::Timeout, 0};
    };
    std::vector<Job> jobs;
    for (auto& e : batch) {
      Regex l = egraph_.emin(overlay_.sources()[e.src].cls);
      Regex r = egraph_.emin(overlay_.targets()[e.tgt].cls);
      Cost b = sat_mul(cfg_.eq_budget_unit, e.expense);
      std::uint64_t budget = b > ~std::uint64_t(0) ? ~std::uint64_t(0) : static_cast<std::uint64_t>(b);
      jobs.push_back({e, l, r, automaton(l), automaton(r), budget});
    }
    if (jobs.size() == 1) {
      jobs[0].res = bisim_equal(*jobs[0].a, *jobs[0].b, jobs[0].budget);
    } else {
      std::vector<std::future<BisimResult>> fut;
      for (auto& j : jobs)
        fut.push_back(std::async(std::launch::async, [&j] { return bisim_equal(*j.a, *j.b, j.budget); }));
      for (std::size_t i = 0; i < jobs.size(); ++i) jobs[i].res = fut[i].get();
    }

    Step last = Step::Timeout;
    for (auto& j : jobs) {
      ++stats_.eq_checks_run;
      ClassId a = overlay_.sources()[j.edge.src].cls, b = overlay_.targets()[j.edge.tgt].cls;
      switch (j.res.verdict) {
      case Verdict::Equal:
        overlay_.remove_edge(j.edge.src, j.edge.tgt);
        equalities_.push_back({false, kNoClass, 0, {}, a, b});
        learn(j.lhs, j.rhs);
        last = Step::Equality;
        break;
      case Verdict::NotEqual:
        overlay_.remove_edge(j.edge.src, j.edge.tgt);
        inequalities_.emplace_back(a, b);
        last = Step::Inequality;
        break;
      case Verdict::Timeout:
        overlay_.double_expense(j.edge.src, j.edge.tgt);
        ++stats_.eq_timeouts;
        last = Step::Timeout;
        break;
      }
    }
    return last;
  }

  void learn(const Regex& l, const Regex& r) {
    RewriteRule w{"learned-" + std::to_string(learned_.size() + 1), l, r, true};
    learned_.push_back(w);
    ++stats_.learned_rules;
    if (cfg_.mode == Mode::Regis)
      for (auto& d : directed({w})) rules_.push_back(compile_rule(d));
  }

  bool enumerate() {
    if (enum_done_) return false;
    auto e = enumerator_.next_candidate();
    if (!e) {
      enum_done_ = true;
      return false;
    }
    ++stats_.targets;
    ClassId c = egraph_.add(*e);
    auto added = overlay_.add_target(*e, c, [&](ClassId s) {
      ClassId fs = egraph_.find(s);
      return fs != c && !egraph_.are_unequal(fs, c);
    });
    if (!added) ++stats_.targets_rejected;
    normalize_k();
    return true;
  }
};

inline SimplifyResult simplify(const Regex& source, const SimplifyConfig& cfg) {
  if (cfg.max_height) return Machine(source, cfg, *cfg.max_height).run();
  // deepen the height bound and stop at the first run that proves its result;
  // the report carries the bound that run used
  auto start = std::chrono::steady_clock::now();
  unsigned top = std::max(1u, height(source));
  SimplifyResult last;
  std::uint64_t runs = 0, steps = 0;
  for (unsigned h = 1; h <= top; ++h) {
    SimplifyConfig c = cfg;
    double used = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    c.wall_timeout = std::max(0.0, cfg.wall_timeout - used);
    c.max_height = h;
    if (cfg.max_steps) {
      if (steps >= cfg.max_steps) break;
      c.max_steps = cfg.max_steps - steps;
    }
    last = Machine(source, c, h).run();
    steps += last.stats.steps;
    // lower bounds are expected here, not a user override
    last.warnings.clear();
    ++runs;
    if (last.global_min_proved || last.halt == HaltReason::Timeout || last.halt == HaltReason::StepLimit ||
        cfg.mode == Mode::RewriteOnly)
      break;
  }
  last.stats.runs = runs;
  last.stats.steps = steps;
  last.stats.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return last;
}

} // namespace regis

#endif
