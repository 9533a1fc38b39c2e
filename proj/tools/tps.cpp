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

// tps: frequency-resolved photon correlations from the command line.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tps/app/acceptance.hpp"
#include "tps/app/config.hpp"
#include "tps/app/output.hpp"
#include "tps/app/scan.hpp"
#include "tps/error.hpp"

namespace {

using nlohmann::json;
using namespace tps;

struct Common {
  std::string config_path;
  std::vector<std::string> overrides;
  std::optional<int> workers;
  std::optional<std::string> output;
  std::optional<std::string> backend;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("-c,--config", c.config_path, "JSON run configuration (defaults apply when omitted)");
  cmd->add_option("--set", c.overrides, "Override a config key, e.g. --set model.g=0.5 (repeatable)");
  cmd->add_option("--workers", c.workers, "Worker threads for map scans")->check(CLI::PositiveNumber);
  cmd->add_option("--output", c.output, "Output path prefix");
  cmd->add_option("--backend", c.backend, "semianalytic | sensors | both");
}

app::RunConfig resolve(const Common& c) {
  json doc = json::object();
  if (!c.config_path.empty()) {
    std::ifstream in(c.config_path);
    if (!in) throw Error(ErrorCode::io, "cannot open config " + c.config_path);
    try {
      doc = json::parse(in);
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::config, c.config_path + ": " + e.what());
    }
  }
  for (const auto& o : c.overrides) doc = app::apply_override(std::move(doc), o);
  if (c.workers) doc["workers"] = *c.workers;
  if (c.output) doc["output"] = *c.output;
  if (c.backend) doc["backend"] = *c.backend;
  return app::parse_config(doc);
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::config: return 2;
    case ErrorCode::io: return 3;
    default: return 10 + static_cast<int>(code);
  }
}

void report_error(const char* code, const std::string& message) {
  std::cerr << json{{"error", code}, {"message", message}}.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"tps: two-photon spectra of open quantum systems"};
  cli.require_subcommand(1);
  cli.set_version_flag("--version", std::string(app::kVersion));

  Common spectrum_opts, map_opts, point_opts, features_opts;
  auto* spectrum = cli.add_subcommand("spectrum", "Filtered one-photon spectrum -> <out>.1ps.csv");
  add_common(spectrum, spectrum_opts);
  auto* map = cli.add_subcommand("map", "Two-photon correlation map -> <out>.2ps.csv");
  add_common(map, map_opts);
  auto* point = cli.add_subcommand("point", "g2 at one frequency pair, printed as JSON");
  add_common(point, point_opts);
  double omega1 = 0.0, omega2 = 0.0;
  point->add_option("--omega1", omega1, "First filter frequency")->required();
  point->add_option("--omega2", omega2, "Second filter frequency")->required();
  auto* features = cli.add_subcommand("features", "Predicted feature lines -> <out>.features.csv");
  add_common(features, features_opts);
  auto* validate = cli.add_subcommand("validate", "Run the acceptance suite");
  std::vector<int> only;
  validate->add_option("--only", only, "Criterion ids to run (default: all)");

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return cli.exit(e);
  }

  try {
    if (*spectrum) {
      const auto cfg = resolve(spectrum_opts);
      std::cout << app::write_spectrum(cfg, app::run_spectrum(cfg)).string() << '\n';
    } else if (*map) {
      const auto cfg = resolve(map_opts);
      std::cout << app::write_map(cfg, app::run_map(cfg)).string() << '\n';
    } else if (*point) {
      const auto cfg = resolve(point_opts);
      std::cout << app::point_json(app::run_point(cfg, omega1, omega2)).dump() << '\n';
    } else if (*features) {
      const auto cfg = resolve(features_opts);
      const auto result = app::run_features(cfg);
      for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';
      std::cout << app::write_features(cfg, result).string() << '\n';
    } else if (*validate) {
      app::AcceptanceOptions opts;
      opts.only = only;
      opts.on_result = [](const app::CriterionResult& r) { std::cout << app::format_result_line(r) << std::endl; };
      const auto results = app::run_acceptance(opts);
      int failed = 0;
      for (const auto& r : results) failed += r.pass ? 0 : 1;
      std::cout << results.size() - failed << "/" << results.size() << " criteria passed\n";
      return failed == 0 ? 0 : 1;
    }
  } catch (const Error& e) {
    report_error(to_string(e.code()), e.what());
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    report_error("internal", e.what());
    return 9;
  }
  return 0;
}
