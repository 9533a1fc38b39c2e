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
#include <string>

#include <json.hpp>

#include "tps/models.hpp"

namespace tps::app {

inline constexpr int kSchemaVersion = 1;

enum class ModelName { single, coupled, driven_tls, jc_lasing };
enum class BackendChoice { semianalytic, sensors, both };

const char* to_string(ModelName m);
const char* to_string(BackendChoice b);

struct Axis {
  double min = -6.0;
  double max = 6.0;
  int count = 101;

  double at(int i) const { return min + (max - min) * i / (count - 1); }
};

struct RunConfig {
  int schema_version = kSchemaVersion;
  ModelName model = ModelName::single;
  SingleModeParams single;
  CoupledParams coupled;
  DrivenTlsParams driven;
  JcLasingParams lasing;

  int detect_mode = 1;  // 1 or 2; only coupled and jc_lasing have a second mode
  double gamma1 = 1.0;
  double gamma2 = 1.0;
  Axis omega1;
  Axis omega2;
  Axis spectrum{-6.0, 6.0, 601};
  BackendChoice backend = BackendChoice::semianalytic;
  double sensor_epsilon = 0.0;  // 0 selects 1e-3 * min(gamma1, gamma2)
  bool truncation_guard = true;
  std::string output = "tps_out";
  int workers = 1;

  void validate() const;
  double epsilon() const;
};

/// Parses a config document. Unknown keys, wrong types and a missing or
/// unsupported schema_version are errors (ErrorCode::config).
RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::filesystem::path& path);
/// The fully resolved config, defaults included; parse_config(to_json(c)) == c.
nlohmann::json to_json(const RunConfig& cfg);

/// Applies "path=value" overrides, path being a JSON pointer ("/filter/gamma")
/// or a dotted key ("filter.gamma"); value is parsed as JSON, falling back to a string.
nlohmann::json apply_override(nlohmann::json doc, const std::string& assignment);

/// The same config with every bosonic truncation raised by delta.
RunConfig with_raised_truncation(const RunConfig& cfg, int delta);
bool has_bosonic_mode(const RunConfig& cfg);

/// Builds the model and points `detect` at the selected mode.
OpenSystem build_system(const RunConfig& cfg);

/// Unit of all rates and frequencies and the origin of the frequency axis.
std::string units_of(const RunConfig& cfg);
std::string frame_of(const RunConfig& cfg);

}  // namespace tps::app
