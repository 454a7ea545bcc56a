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

#include <spdlog/spdlog.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "regis/backtrack.hpp"
#include "regis/report.hpp"

using namespace regis;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitParse = 2;
constexpr int kExitTimeout = 3;
constexpr int kExitUnverified = 4;

// "3", "3s", "2.5s", "500ms", "1m"
double parse_duration(const std::string& text) {
  std::size_t used = 0;
  double v = std::stod(text, &used);
  std::string unit = text.substr(used);
  if (unit.empty() || unit == "s") return v;
  if (unit == "ms") return v / 1000.0;
  if (unit == "m") return v * 60.0;
  throw std::invalid_argument("unknown duration unit '" + unit + "'");
}

struct EngineFlags {
  int max_height = 0;
  std::string rules;
  std::string mode = "regis";
  unsigned threads = 1;
  std::string timeout = "3s";
  std::uint64_t max_steps = 0;
  std::uint64_t eq_budget = 10000;
  std::string enum_strategy = "explicit";
  std::string alphabet;
  bool no_pruning = false;
  bool assume_complete = false;

  void attach(CLI::App* app) {
    app->add_option("--max-height", max_height, "Height bound for enumeration (default: deepen up to the input height)");
    app->add_option("--rules", rules, "Rewrite rule file (default: the built-in Kleene rules)");
    app->add_option("--mode", mode, "regis, enum_only or rewrite_only")
        ->check(CLI::IsMember({"regis", "enum_only", "rewrite_only"}));
    app->add_option("--threads", threads, "Concurrent equality checks")->check(CLI::Range(1u, 256u));
    app->add_option("--timeout", timeout, "Wall clock limit, e.g. 3s or 500ms");
    app->add_option("--max-steps", max_steps, "Machine step limit, reproducible unlike --timeout (0: none)");
    app->add_option("--eq-budget", eq_budget, "Bisimulation budget per unit of edge expense");
    app->add_option("--enum-strategy", enum_strategy, "explicit or solver")
        ->check(CLI::IsMember({"explicit", "solver"}));
    app->add_option("--alphabet", alphabet, "Symbols to enumerate over (default: those of the input)");
    app->add_flag("--no-height-pruning", no_pruning, "Keep the height bound fixed");
    app->add_flag("--assume-complete", assume_complete, "Treat a saturated e-graph as a proof");
  }

  SimplifyConfig config() const {
    SimplifyConfig c;
    if (max_height > 0) c.max_height = static_cast<unsigned>(max_height);
    if (!rules.empty()) c.rules = load_rules(rules);
    c.mode = mode == "enum_only" ? Mode::EnumOnly : mode == "rewrite_only" ? Mode::RewriteOnly : Mode::Regis;
    c.threads = threads;
    c.wall_timeout = parse_duration(timeout);
    c.max_steps = max_steps;
    c.eq_budget_unit = eq_budget;
    c.enum_strategy = enum_strategy == "solver" ? EnumStrategy::Solver : EnumStrategy::Explicit;
    if (!alphabet.empty()) c.alphabet = std::vector<char>(alphabet.begin(), alphabet.end());
    c.height_pruning = !no_pruning;
    c.assume_complete = assume_complete;
    return c;
  }
};

std::optional<Regex> parse_or_report(const std::string& text) {
  try {
    return parse(text);
  } catch (const ParseError& e) {
    std::cerr << "regis: parse error: " << e.what() << "\n";
    return std::nullopt;
  }
}

void configure_logging() {
  spdlog::set_level(spdlog::level::warn);
  if (const char* lvl = std::getenv("REGIS_LOG")) spdlog::set_level(spdlog::level::from_str(lvl));
  spdlog::set_pattern("[%l] %v");
}

int cmd_simplify(const std::string& input, const EngineFlags& flags, bool stats, const std::string& out,
                 bool verify, bool sexpr) {
  auto source = parse_or_report(input);
  if (!source) return kExitParse;
  SimplifyConfig cfg = flags.config();
  spdlog::info("simplifying {} in {} mode", print(*source), to_string(cfg.mode));
  SimplifyResult r = simplify(*source, cfg);
  for (auto& w : r.warnings) spdlog::warn("{}", w);
  spdlog::info("halted: {} after {} steps", to_string(r.halt), r.stats.steps);

  Regex shown = r.best;
  if (verify) {
    auto v = bisim_equal(*source, r.best, std::uint64_t(1) << 26);
    if (v.verdict == Verdict::NotEqual) {
      std::cerr << "regis: internal error: result " << print(r.best) << " is not equivalent to the input\n";
      return kExitUnverified;
    }
    if (v.verdict == Verdict::Timeout) {
      spdlog::warn("could not verify {}; printing the input unchanged", print(r.best));
      shown = *source;
    }
  }
  std::cout << (sexpr ? print_sexpr(shown) : print(shown)) << "\n";

  std::string report = report_string(r, cfg);
  if (!out.empty()) {
    std::ofstream f(out);
    if (!f) {
      std::cerr << "regis: cannot write " << out << "\n";
      return kExitUsage;
    }
    f << report << "\n";
  } else if (stats) {
    std::cerr << report << "\n";
  }
  bool out_of_time = r.halt == HaltReason::Timeout || r.halt == HaltReason::StepLimit;
  if (out_of_time && r.cost_best == r.cost_in) return kExitTimeout;
  return kExitOk;
}

std::vector<Regex> exhaustive(unsigned h, const std::string& sigma) {
  std::vector<Regex> level{empty(), epsilon()};
  for (char c : sigma) level.push_back(chr(c));
  for (unsigned d = 0; d < h; ++d) {
    std::vector<Regex> next = {empty(), epsilon()};
    for (char c : sigma) next.push_back(chr(c));
    for (auto& x : level) next.push_back(star(x));
    for (auto& x : level)
      for (auto& y : level) {
        next.push_back(alt(x, y));
        next.push_back(cat(x, y));
      }
    level.swap(next);
  }
  return level;
}

int cmd_bench(const std::string& corpus, bool exh, unsigned height, const std::string& sigma,
              const std::string& modes, const EngineFlags& flags) {
  std::vector<std::string> inputs;
  if (exh) {
    for (auto& r : exhaustive(height, sigma.empty() ? "a" : sigma)) inputs.push_back(print(r));
  } else {
    std::ifstream f(corpus);
    if (!f) {
      std::cerr << "regis: cannot read " << corpus << "\n";
      return kExitUsage;
    }
    std::string line;
    while (std::getline(f, line)) {
      auto b = line.find_first_not_of(" \t\r");
      if (b == std::string::npos || line[b] == '#') continue;
      auto e = line.find_last_not_of(" \t\r");
      inputs.push_back(line.substr(b, e - b + 1));
    }
  }
  std::vector<std::string> mode_list;
  std::stringstream ms(modes);
  for (std::string m; std::getline(ms, m, ',');) mode_list.push_back(m);

  std::cout << "input,mode,cost_in,cost_out,proved,eq_checks,wall_ms\n";
  for (auto& text : inputs) {
    for (auto& m : mode_list) {
      EngineFlags f = flags;
      f.mode = m;
      try {
        Regex src = parse(text);
        SimplifyConfig cfg = f.config();
        SimplifyResult r = simplify(src, cfg);
        std::cout << '"' << text << "\"," << m << ',' << to_string(r.cost_in) << ',' << to_string(r.cost_best) << ','
                  << (r.global_min_proved ? 1 : 0) << ',' << r.stats.eq_checks_run << ','
                  << static_cast<long long>(r.stats.wall_seconds * 1000.0) << "\n";
      } catch (const std::exception& e) {
        spdlog::error("{}: {}", text, e.what());
        std::cout << '"' << text << "\"," << m << ",,,0,,\n";
      }
    }
  }
  return kExitOk;
}

int cmd_steps(const std::string& input, const std::string& pump, const std::string& tail, unsigned n,
              const std::string& memo) {
  auto r = parse_or_report(input);
  if (!r) return kExitParse;
  if (pump.size() != 1) {
    std::cerr << "regis: --char takes a single character\n";
    return kExitUsage;
  }
  MemoPolicy policy = memo == "cycle" ? MemoPolicy::CycleGuard : MemoPolicy::PerAttempt;
  std::cout << "n,steps,matched\n";
  for (auto& row : growth_series(*r, n, policy, std::uint64_t(1) << 32, pump[0], tail))
    std::cout << row.n << ',' << row.steps << ',' << (row.matched ? 1 : 0) << "\n";
  return kExitOk;
}

int cmd_dump_egraph(const std::string& input, const EngineFlags& flags, unsigned passes) {
  auto r = parse_or_report(input);
  if (!r) return kExitParse;
  SimplifyConfig cfg = flags.config();
  unsigned h = cfg.max_height.value_or(std::max(1u, height(*r)));
  auto sigma = alphabet(*r);
  EGraph g(CostParams::make(h, std::max<std::size_t>(1, sigma.size())));
  g.add(*r);
  auto rules = compile_rules(cfg.rules);
  for (unsigned i = 0; i < passes; ++i) {
    PassOptions opt;
    opt.match_limit = cfg.rule_match_limit;
    auto ms = g.find_matches(rules, opt);
    if (ms.empty()) break;
    for (auto& m : ms) g.apply(rules[m.rule], m);
    g.rebuild();
  }
  std::cout << g.to_dot();
  return kExitOk;
}

int cmd_dump_nfa(const std::string& input) {
  auto r = parse_or_report(input);
  if (!r) return kExitParse;
  std::cout << to_dot(thompson(*r));
  return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
  configure_logging();
  CLI::App app{"regis: rewrite-guided regular expression simplification"};
  app.require_subcommand(1);

  std::string input;
  EngineFlags eflags;

  auto* simp = app.add_subcommand("simplify", "Find a cheaper equivalent expression");
  bool stats = false, verify = true, sexpr = false;
  std::string out;
  simp->add_option("regex", input, "Input expression")->required();
  eflags.attach(simp);
  simp->add_flag("--stats", stats, "Print the JSON report to stderr");
  simp->add_option("--out", out, "Write the JSON report to a file");
  simp->add_flag("--verify,!--no-verify", verify, "Check the result by bisimulation (default on)");
  simp->add_flag("--sexpr", sexpr, "Print the result as an s-expression");

  auto* bench = app.add_subcommand("bench", "Run a corpus under several modes and print CSV");
  std::string corpus, modes = "regis,enum_only", sigma;
  bool exh = false;
  unsigned bh = 2;
  EngineFlags bflags;
  bench->add_option("corpus", corpus, "File with one expression per line");
  bench->add_flag("--exhaustive", exh, "Use every expression up to --height over --alphabet");
  bench->add_option("--height", bh, "Height of the exhaustive set");
  bench->add_option("--modes", modes, "Comma separated modes");
  bflags.attach(bench);
  bench->get_option("--alphabet")->description("Alphabet of the exhaustive set; also the enumeration alphabet");

  auto* steps = app.add_subcommand("steps", "Backtracking step counts on pumped inputs, as CSV");
  std::string pump = "a", tail = "b", memo = "attempt";
  unsigned n = 10;
  steps->add_option("regex", input, "Input expression")->required();
  steps->add_option("--char", pump, "Character repeated n times");
  steps->add_option("--suffix", tail, "Suffix after the repeated characters");
  steps->add_option("--n", n, "Largest repetition count");
  steps->add_option("--memo", memo, "attempt or cycle")->check(CLI::IsMember({"attempt", "cycle"}));

  auto* degraph = app.add_subcommand("dump-egraph", "Print the e-graph after some rewrite passes as DOT");
  unsigned passes = 1;
  EngineFlags gflags;
  degraph->add_option("regex", input, "Input expression")->required();
  degraph->add_option("--passes", passes, "Rewrite passes to run first");
  gflags.attach(degraph);

  auto* dnfa = app.add_subcommand("dump-nfa", "Print the Thompson automaton as DOT");
  dnfa->add_option("regex", input, "Input expression")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*simp) return cmd_simplify(input, eflags, stats, out, verify, sexpr);
    if (*bench) {
      if (!exh && corpus.empty()) {
        std::cerr << "regis: bench needs a corpus file or --exhaustive\n";
        return kExitUsage;
      }
      if (exh) sigma = bflags.alphabet;
      return cmd_bench(corpus, exh, bh, sigma, modes, bflags);
    }
    if (*steps) return cmd_steps(input, pump, tail, n, memo);
    if (*degraph) return cmd_dump_egraph(input, gflags, passes);
    if (*dnfa) return cmd_dump_nfa(input);
  } catch (const RuleError& e) {
    std::cerr << "regis: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "regis: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}
