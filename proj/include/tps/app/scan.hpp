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

#include <optional>
#include <string>
#include <vector>

#include "tps/app/config.hpp"
#include "tps/features.hpp"

namespace tps::app {

/// Result of re-running a sample of the scan with every bosonic truncation
/// raised by `delta`. The scan is rejected when max_rel_change >= tolerance.
struct TruncationCheck {
  bool performed = false;
  int delta = 5;
  int samples = 0;
  double max_rel_change = 0.0;
  double tolerance = 1e-6;
};

struct SpectrumResult {
  std::vector<double> omega;
  std::vector<double> intensity;
  double steady_residual = 0.0;
  Index hilbert_dim = 0;
  TruncationCheck truncation;
  double seconds = 0.0;
};

struct MapResult {
  Axis omega1;
  Axis omega2;
  // Row-major: index i * omega2.count + j holds (omega1.at(i), omega2.at(j)).
  std::vector<double> g2;
  std::vector<double> n1;
  std::vector<double> n2;
  Backend backend = Backend::semianalytic;
  double steady_residual = 0.0;
  double max_imag_residue = 0.0;
  int clamped = 0;
  std::optional<double> max_backend_rel_diff;  // backend "both"
  std::optional<double> max_epsilon_rel_diff;  // sensor backend
  Index hilbert_dim = 0;
  TruncationCheck truncation;
  int workers = 1;
  double seconds = 0.0;

  double at(int i, int j) const { return g2[static_cast<std::size_t>(i) * omega2.count + j]; }
};

struct PointResult {
  double omega1 = 0.0;
  double omega2 = 0.0;
  std::optional<TwoPhotonResult> semianalytic;
  std::optional<TwoPhotonResult> sensors;
  std::optional<double> backend_rel_diff;
  TruncationCheck truncation;
};

struct FeaturesResult {
  std::vector<FeatureLine> lines;
  std::vector<std::string> warnings;
};

SpectrumResult run_spectrum(const RunConfig& cfg);
/// Rows are distributed over cfg.workers threads; the result does not depend
/// on the worker count.
MapResult run_map(const RunConfig& cfg);
PointResult run_point(const RunConfig& cfg, double omega1, double omega2);
FeaturesResult run_features(const RunConfig& cfg);

}  // namespace tps::app
