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

#include "tps/app/scan.hpp"

namespace tps::app {

inline constexpr const char* kVersion = "1.0.0";

inline constexpr const char* kSpectrumHeader = "omega,intensity";
inline constexpr const char* kMapHeader = "omega1,omega2,g2,n1,n2";
inline constexpr const char* kFeaturesHeader = "kind,a,b,c,expected_sign,provenance,qualitative";

/// 12 significant digits, the precision of every number written to a CSV.
std::string format_number(double x);

/// Each writer produces <cfg.output>.<kind>.csv and <cfg.output>.meta and
/// returns the CSV path.
std::filesystem::path write_spectrum(const RunConfig& cfg, const SpectrumResult& r);
std::filesystem::path write_map(const RunConfig& cfg, const MapResult& r);
std::filesystem::path write_features(const RunConfig& cfg, const FeaturesResult& r);

/// One-line JSON summary printed by `tps point`.
nlohmann::json point_json(const PointResult& r);

/// Sidecar metadata. Everything except the "execution" block is a pure
/// function of the config.
nlohmann::json spectrum_meta(const RunConfig& cfg, const SpectrumResult& r);
nlohmann::json map_meta(const RunConfig& cfg, const MapResult& r);
nlohmann::json features_meta(const RunConfig& cfg, const FeaturesResult& r);

}  // namespace tps::app
