// Copyright 2026 The tps Authors
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

// Runs acceptance criteria 1-10 (or the ids given as arguments) and prints
// one PASS/FAIL line per criterion.

#include <iostream>
#include <string>

#include "tps/app/acceptance.hpp"

int main(int argc, char** argv) {
  tps::app::AcceptanceOptions opts;
  for (int i = 1; i < argc; ++i) opts.only.push_back(std::stoi(argv[i]));
  opts.on_result = [](const tps::app::CriterionResult& r) {
    std::cout << tps::app::format_result_line(r) << std::endl;
  };
  int failed = 0;
  for (const auto& r : tps::app::run_acceptance(opts)) failed += r.pass ? 0 : 1;
  std::cout << (failed == 0 ? "all acceptance criteria passed" : std::to_string(failed) + " criteria failed")
            << std::endl;
  return failed == 0 ? 0 : 1;
}
