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

#include "tps/models.hpp"

#include <cmath>

#include "tps/error.hpp"

namespace tps {

namespace {

void require(bool ok, ErrorCode code, const char* msg) {
  if (!ok) throw Error(code, msg);
}

void add_mode_channels(OpenSystem& sys, const SingleModeParams& p, const Operator& o) {
  if (p.gamma > 0.0) sys.channels.push_back({o, p.gamma});
  if (p.pump > 0.0) sys.channels.push_back({adjoint(o), p.pump});
  if (p.dephasing > 0.0) sys.channels.push_back({mul(adjoint(o), o), p.dephasing});
}

}  // namespace

void SingleModeParams::validate() const {
  require(std::isfinite(omega), ErrorCode::invalid_argument, "mode frequency must be finite");
  require(gamma >= 0.0 && pump >= 0.0 && dephasing >= 0.0, ErrorCode::invalid_argument,
          "decay, pump and dephasing must be nonnegative");
  if (is_bosonic(kind)) {
    require(dephasing == 0.0, ErrorCode::invalid_argument, "dephasing is only defined for two-level modes");
    require(pump < gamma, ErrorCode::no_steady_state, "bosonic pump >= decay: no steady state");
  }
}

double SingleModeParams::linewidth() const { return is_bosonic(kind) ? gamma - pump : gamma + pump + dephasing; }

void CoupledParams::validate() const {
  mode1.validate();
  mode2.validate();
  require(g > 0.0 && std::isfinite(g), ErrorCode::invalid_argument, "coupling g must be positive");
}

void DrivenTlsParams::validate() const {
  require(omega_l > 0.0, ErrorCode::invalid_argument, "drive amplitude must be positive");
  require(gamma_sigma >= 0.0 && pump >= 0.0, ErrorCode::invalid_argument, "rates must be nonnegative");
  require(gamma_sigma + pump > 0.0, ErrorCode::no_steady_state, "driven two-level system needs a dissipative channel");
  require(std::isfinite(delta), ErrorCode::invalid_argument, "detuning must be finite");
}

double DrivenTlsParams::sideband() const { return std::sqrt(4.0 * omega_l * omega_l + delta * delta); }

void JcLasingParams::validate() const {
  require(p_sigma > 0.0 && g > 0.0 && gamma_a > 0.0 && gamma_sigma >= 0.0, ErrorCode::invalid_argument,
          "lasing parameters must be positive");
  require(n_max >= 4.0 * predicted_population(), ErrorCode::truncation_guard,
          "n_max must be at least 4 p_sigma / (2 gamma_a)");
}

double JcLasingParams::predicted_population() const { return p_sigma / (2.0 * gamma_a); }

double JcLasingParams::predicted_laser_linewidth() const {
  const double n = predicted_population();
  return g * g / (2.0 * gamma_a * n * n);
}

double JcLasingParams::predicted_sideband() const { return 2.0 * g * std::sqrt(predicted_population()); }

OpenSystem make_single(const SingleModeParams& p) {
  p.validate();
  OpenSystem sys;
  sys.space = HilbertSpace({p.kind});
  const Operator o = annihilator(sys.space, 0);
  sys.hamiltonian = scale(p.omega, number(sys.space, 0));
  add_mode_channels(sys, p, o);
  sys.detect = o;
  return sys;
}

OpenSystem make_coupled(const CoupledParams& p) {
  p.validate();
  OpenSystem sys;
  sys.space = HilbertSpace({p.mode1.kind, p.mode2.kind});
  const Operator o1 = annihilator(sys.space, 0);
  const Operator o2 = annihilator(sys.space, 1);
  Operator h = scale(p.mode1.omega, number(sys.space, 0));
  h = add_scaled(h, p.mode2.omega, number(sys.space, 1));
  h = add_scaled(h, p.g, mul(adjoint(o1), o2) + mul(adjoint(o2), o1));
  sys.hamiltonian = h;
  add_mode_channels(sys, p.mode1, o1);
  add_mode_channels(sys, p.mode2, o2);
  sys.detect = o1;
  sys.detect2 = o2;
  return sys;
}

OpenSystem make_driven_tls(const DrivenTlsParams& p) {
  p.validate();
  OpenSystem sys;
  sys.space = HilbertSpace({TwoLevel{}});
  const Operator s = annihilator(sys.space, 0);
  Operator h = scale(p.delta, number(sys.space, 0));
  h = add_scaled(h, p.omega_l, s + adjoint(s));
  sys.hamiltonian = h;
  if (p.gamma_sigma > 0.0) sys.channels.push_back({s, p.gamma_sigma});
  if (p.pump > 0.0) sys.channels.push_back({adjoint(s), p.pump});
  sys.detect = s;
  return sys;
}

OpenSystem make_jc_lasing(const JcLasingParams& p) {
  p.validate();
  OpenSystem sys;
  sys.space = HilbertSpace({Bosonic{p.n_max}, TwoLevel{}});
  const Operator a = annihilator(sys.space, 0);
  const Operator s = annihilator(sys.space, 1);
  sys.hamiltonian = scale(p.g, mul(adjoint(a), s) + mul(adjoint(s), a));
  sys.channels.push_back({a, p.gamma_a});
  if (p.gamma_sigma > 0.0) sys.channels.push_back({s, p.gamma_sigma});
  sys.channels.push_back({adjoint(s), p.p_sigma});
  sys.detect = s;
  sys.detect2 = a;
  return sys;
}

cplx DressedLadder::energy_complex(int n) const {
  if (n <= 0) return 0.0;
  const double asym = (gamma_a - gamma_sigma) / 4.0;
  return std::sqrt(cplx(n * g * g - asym * asym, 0.0));
}

double DressedLadder::energy(int n) const { return energy_complex(n).real(); }

bool DressedLadder::strong_coupling(int n) const {
  const double asym = (gamma_a - gamma_sigma) / 4.0;
  return n * g * g > asym * asym;
}

DressedLadder ladder(double g, double gamma_a, double gamma_sigma) { return DressedLadder{g, gamma_a, gamma_sigma}; }

}  // namespace tps
