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

#ifndef REGIS_BACKTRACK_HPP
#define REGIS_BACKTRACK_HPP

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "nfa.hpp"

namespace regis {

// How the simulated matcher avoids looping forever.
//   PerAttempt: every (state, position) pair is visited at most once per attempt.
//   CycleGuard: no state memo; a star loop-back edge is refused when the loop
//               entry was last entered at the current input position, the way
//               backtracking engines stop empty iterations.
enum class MemoPolicy { PerAttempt, CycleGuard };

inline const char* to_string(MemoPolicy m) { return m == MemoPolicy::PerAttempt ? "attempt" : "cycle"; }

struct StepCount {
  std::uint64_t steps = 0;
  bool matched = false;
  std::uint64_t memo_skips = 0;
  bool truncated = false;
};

namespace detail {

class Backtracker {
public:
  Backtracker(const Nfa& nfa, std::string_view input, MemoPolicy policy, std::uint64_t ceiling)
      : nfa_(nfa), in_(input), policy_(policy), ceiling_(ceiling) {}

  StepCount run() {
    if (policy_ == MemoPolicy::PerAttempt) {
      visited_.assign(nfa_.num_states() * (in_.size() + 1), 0);
      mark(nfa_.initial, 0);
    } else {
      last_.assign(nfa_.num_states(), kNever);
      last_[nfa_.initial] = 0;
    }
    try {
      res_.matched = dfs(nfa_.initial, 0);
    } catch (const Ceiling&) {
      res_.truncated = true;
    }
    return res_;
  }

private:
  struct Ceiling {};
  static constexpr std::size_t kNever = std::numeric_limits<std::size_t>::max();

  const Nfa& nfa_;
  std::string_view in_;
  MemoPolicy policy_;
  std::uint64_t ceiling_;
  StepCount res_;
  std::vector<char> visited_;
  std::vector<std::size_t> last_;

  bool seen(State q, std::size_t pos) const { return visited_[pos * nfa_.num_states() + q]; }
  void mark(State q, std::size_t pos) { visited_[pos * nfa_.num_states() + q] = 1; }

  void count() {
    if (++res_.steps > ceiling_) throw Ceiling{};
  }

  bool dfs(State q, std::size_t pos) {
    if (nfa_.is_accepting[q] && pos == in_.size()) return true;
    for (const Transition& t : nfa_.out[q]) {
      if (t.label == kEpsilonLabel) {
        if (policy_ == MemoPolicy::PerAttempt) {
          if (seen(t.to, pos)) {
            ++res_.memo_skips;
            continue;
          }
          mark(t.to, pos);
          count();
          if (dfs(t.to, pos)) return true;
        } else {
          if (t.loop_back && last_[t.to] == pos) {
            ++res_.memo_skips;
            continue;
          }
          count();
          std::size_t saved = last_[t.to];
          last_[t.to] = pos;
          bool ok = dfs(t.to, pos);
          last_[t.to] = saved;
          if (ok) return true;
        }
        continue;
      }
      bool fits = pos < in_.size() && static_cast<unsigned char>(in_[pos]) == t.label;
      if (!fits) {
        count(); // failed attempt still costs a step
        continue;
      }
      if (policy_ == MemoPolicy::PerAttempt) {
        if (seen(t.to, pos + 1)) {
          ++res_.memo_skips;
          continue;
        }
        mark(t.to, pos + 1);
      }
      count();
      if (dfs(t.to, pos + 1)) return true;
    }
    return false;
  }
};

} // namespace detail

// Counts the transitions a greedy backtracking matcher attempts for a single
// anchored match of `input` against the automaton.
inline StepCount count_steps(const Nfa& nfa, std::string_view input, MemoPolicy policy = MemoPolicy::PerAttempt,
                             std::uint64_t ceiling = std::numeric_limits<std::uint64_t>::max()) {
  return detail::Backtracker(nfa, input, policy, ceiling).run();
}

inline StepCount count_steps(const Regex& r, std::string_view input, MemoPolicy policy = MemoPolicy::PerAttempt,
                             std::uint64_t ceiling = std::numeric_limits<std::uint64_t>::max()) {
  Nfa nfa = thompson(r);
  return count_steps(nfa, input, policy, ceiling);
}

struct GrowthRow {
  unsigned n;
  std::uint64_t steps;
  bool matched;
};

// Step counts on the inputs pump^n tail for n = 0..n_max. Stops early once a
// run exceeds the ceiling; the truncated run is not included.
inline std::vector<GrowthRow> growth_series(const Regex& r, unsigned n_max, MemoPolicy policy = MemoPolicy::PerAttempt,
                                            std::uint64_t ceiling = std::numeric_limits<std::uint64_t>::max(),
                                            char pump = 'a', std::string_view tail = "b") {
  Nfa nfa = thompson(r);
  std::vector<GrowthRow> rows;
  for (unsigned n = 0; n <= n_max; ++n) {
    std::string input(n, pump);
    input += tail;
    StepCount c = count_steps(nfa, input, policy, ceiling);
    if (c.truncated) break;
    rows.push_back({n, c.steps, c.matched});
  }
  return rows;
}

} // namespace regis

#endif
