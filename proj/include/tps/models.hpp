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

#include "tps/liouville.hpp"

namespace tps {

/// Free mode H = omega O^dag O with decay, incoherent pump and (two-level
/// only) pure dephasing.
struct SingleModeParams {
  ModeKind kind = TwoLevel{};
  double omega = 0.0;
  double gamma = 1.0;
  double pump = 0.0;
  double dephasing = 0.0;

  void validate() const;
  /// Emission linewidth: gamma - pump (bosonic), gamma + pump + dephasing (two-level).
  double linewidth() const;
};

/// Two linearly coupled modes, H = w1 O1^dag O1 + w2 O2^dag O2 + g (O1^dag O2 + O2^dag O1).
struct CoupledParams {
  SingleModeParams mode1;
  SingleModeParams mode2;
  double g = 1.0;

  void validate() const;
};

/// Coherently driven two-level system in the laser frame,
/// H = delta sigma^dag sigma + omega_l (sigma + sigma^dag), delta = w_sigma - w_L.
struct DrivenTlsParams {
  double omega_l = 1.0;
  double delta = 0.0;
  double gamma_sigma = 1.0;
  double pump = 0.0;

  void validate() const;
  /// Mollow sideband position sqrt((2 omega_l)^2 + delta^2).
  double sideband() const;
};

/// Jaynes-Cummings laser: cavity (bosonic, first factor) coupled to an
/// incoherently pumped two-level emitter (second factor).
struct JcLasingParams {
  double p_sigma = 2.0;
  double g = 1.0;
  double gamma_a = 0.105;
  double gamma_sigma = 0.0;
  int n_max = 40;

  void validate() const;
  /// <n_a> ~ p_sigma / (2 gamma_a)
  double predicted_population() const;
  /// gamma_L ~ g^2 / (2 gamma_a <n_a>^2)
  double predicted_laser_linewidth() const;
  /// Omega_+ ~ 2 g sqrt(<n_a>)
  double predicted_sideband() const;
};

OpenSystem make_single(const SingleModeParams& p);
OpenSystem make_coupled(const CoupledParams& p);
OpenSystem make_driven_tls(const DrivenTlsParams& p);
/// Sensors attach to the emitter: detect = sigma, detect2 = a.
OpenSystem make_jc_lasing(const JcLasingParams& p);

/// Dressed-state energies of two coupled modes,
/// E(n) = sqrt(n g^2 - [(gamma_a - gamma_sigma)/4]^2).
struct DressedLadder {
  double g = 1.0;
  double gamma_a = 0.0;
  double gamma_sigma = 0.0;

  /// Complex root; the imaginary part is nonzero in weak coupling.
  cplx energy_complex(int n) const;
  /// Real part of E(n); E(0) = 0.
  double energy(int n) const;
  bool strong_coupling(int n) const;
  double rabi() const { return energy(1); }
};

DressedLadder ladder(double g, double gamma_a, double gamma_sigma);

}  // namespace tps
