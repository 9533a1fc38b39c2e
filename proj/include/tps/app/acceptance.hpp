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

#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

namespace tps::app {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct AcceptanceOptions {
  std::filesystem::path scratch_dir;  // empty: a fresh directory under the system temp dir
  std::vector<int> only;              // empty: all criteria
  std::function<void(const CriterionResult&)> on_result;
};

/// Runs the acceptance criteria (1-10) in order.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts = {});

/// "PASS  3  sixty-six-times rule ... (0.12 s)"
std::string format_result_line(const CriterionResult& r);

}  // namespace tps::app
