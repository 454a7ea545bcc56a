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

#include "regis/report.hpp"

#include <limits>

namespace regis {

using nlohmann::ordered_json;

ordered_json cost_json(Cost c) {
  if (c <= std::numeric_limits<std::uint64_t>::max()) return static_cast<std::uint64_t>(c);
  return to_string(c);
}

ordered_json config_json(const SimplifyConfig& cfg) {
  ordered_json j;
  if (cfg.max_height)
    j["max_height"] = *cfg.max_height;
  else
    j["max_height"] = nullptr;
  j["mode"] = to_string(cfg.mode);
  j["rules"] = cfg.rules.size();
  j["threads"] = cfg.threads;
  j["timeout_s"] = cfg.wall_timeout;
  j["max_steps"] = cfg.max_steps;
  j["eq_budget"] = cfg.eq_budget_unit;
  j["enum_strategy"] = to_string(cfg.enum_strategy);
  if (cfg.alphabet)
    j["alphabet"] = std::string(cfg.alphabet->begin(), cfg.alphabet->end());
  else
    j["alphabet"] = nullptr;
  j["assume_complete"] = cfg.assume_complete;
  j["height_pruning"] = cfg.height_pruning;
  j["egraph_node_limit"] = cfg.egraph_node_limit;
  j["rule_match_limit"] = cfg.rule_match_limit;
  j["rewrite_burst"] = cfg.rewrite_burst;
  return j;
}

ordered_json report_json(const SimplifyResult& r, const SimplifyConfig& cfg, bool with_timing) {
  ordered_json j;
  j["schema_version"] = kReportSchemaVersion;
  j["input"] = print(r.source);
  j["best"] = print(r.best);
  j["cost_in"] = cost_json(r.cost_in);
  j["cost_best"] = cost_json(r.cost_best);
  j["proved"] = r.global_min_proved;
  j["halt"] = to_string(r.halt);
  j["mode"] = to_string(r.mode);
  j["max_height"] = r.max_height;
  j["alphabet"] = std::string(r.alphabet.begin(), r.alphabet.end());
  j["k1"] = cost_json(r.params.k1);
  j["k2"] = cost_json(r.params.k2);

  const Stats& s = r.stats;
  ordered_json st;
  st["steps"] = s.steps;
  st["runs"] = s.runs;
  st["eq_checks"] = s.eq_checks_run;
  st["eq_checks_skipped"] = s.eq_checks_skipped;
  st["eq_timeouts"] = s.eq_timeouts;
  st["unions"] = s.unions;
  st["rewrites"] = s.rewrites;
  st["rewrite_passes"] = s.rewrite_passes;
  st["targets"] = s.targets;
  st["targets_rejected"] = s.targets_rejected;
  st["final_k"] = s.final_k;
  st["learned_rules"] = s.learned_rules;
  st["egraph_nodes"] = s.egraph_nodes;
  st["egraph_classes"] = s.egraph_classes;
  if (with_timing) st["wall_ms"] = s.wall_seconds * 1000.0;
  j["stats"] = st;

  ordered_json learned = ordered_json::array();
  for (auto& w : r.learned) learned.push_back(print_rule(w));
  j["learned"] = learned;
  j["warnings"] = r.warnings;
  j["config"] = config_json(cfg);
  return j;
}

std::string report_string(const SimplifyResult& r, const SimplifyConfig& cfg, bool with_timing) {
  return report_json(r, cfg, with_timing).dump(2);
}

} // namespace regis
