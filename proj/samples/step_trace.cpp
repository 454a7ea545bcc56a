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

// Drives the search one step at a time and prints each step taken.
//   step_trace '(1+a*a)**' [max-height]

#include <cstdio>
#include <cstdlib>

#include "regis/engine.hpp"

int main(int argc, char** argv) {
  using namespace regis;
  if (argc < 2) {
    std::fprintf(stderr, "usage: %s REGEX [MAX_HEIGHT]\n", argv[0]);
    return 1;
  }
  Regex source = parse(argv[1]);
  unsigned h = argc > 2 ? static_cast<unsigned>(std::atoi(argv[2])) : height(source);

  SimplifyConfig cfg;
  Machine m(source, cfg, h);
  Step last = Step::Halt;
  unsigned run = 0;
  // collapse repeats so long enumeration stretches stay readable
  auto flush = [&] {
    if (run) std::printf("%-12s x%u\n", to_string(last), run);
  };
  while (!m.halted()) {
    Step s = m.step();
    if (s != last) {
      flush();
      last = s;
      run = 0;
    }
    ++run;
  }
  flush();

  SimplifyResult r = m.result();
  std::printf("\n%s -> %s  cost %s -> %s  (%s)\n", argv[1], print(r.best).c_str(), to_string(r.cost_in).c_str(),
              to_string(r.cost_best).c_str(), to_string(r.halt));
  return 0;
}
