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

#include "tps/liouville.hpp"
#include "tps/resolvent.hpp"

namespace tps {

/// Detection frequencies and Lorentzian filter linewidths of the two sensors.
struct FilterPair {
  double omega1 = 0.0;
  double omega2 = 0.0;
  double gamma1 = 1.0;
  double gamma2 = 1.0;

  static FilterPair equal(double omega1, double omega2, double gamma) { return {omega1, omega2, gamma, gamma}; }
  FilterPair swapped() const { return {omega2, omega1, gamma2, gamma1}; }
  void validate() const;
};

struct SensorConfig {
  double epsilon = 1e-3;
  FilterPair filters;

  void validate() const;
};

enum class Backend { semianalytic, sensors };
const char* to_string(Backend b);

struct CorrelationDiagnostics {
  double imag_residue = 0.0;  // |Im| / |Re| of the coincidence bracket
  bool clamped = false;       // tiny negative coincidence set to zero
  double steady_residual = 0.0;
  // Sensor backend: g2 at the coarser coupling and the relative change.
  std::optional<double> g2_coarse;
  std::optional<double> epsilon_rel_diff;
  std::optional<double> epsilon;
};

/// Zero-delay frequency-resolved two-photon correlation.
///
/// n1, n2 are the sensor populations divided by epsilon^2 and n12 the
/// coincidence divided by epsilon^4, so g2 = n12 / (n1 n2).
struct TwoPhotonResult {
  double g2 = 0.0;
  double n1 = 0.0;
  double n2 = 0.0;
  double n12 = 0.0;
  Backend backend = Backend::semianalytic;
  CorrelationDiagnostics diagnostics;
};

/// Resolvent-chain evaluation of filtered intensities and coincidences for
/// one detected operator O on a fixed (M, rho_ss).
///
/// Insertions act on vectorized states: the "minus" insertion multiplies by
/// O from the left, the "plus" insertion multiplies by O^dag from the right.
/// The resolvent G(z) b solves (M + z) x = -b. The engine keeps a pointer to
/// M, which must outlive it.
class CorrelationEngine {
 public:
  CorrelationEngine(const Superoperator& m, const SteadyState& ss, const Operator& detect);

  /// Filtered intensity <n>/eps^2 at frequency omega, linewidth gamma.
  double one_photon(double omega, double gamma, ResolventCache& cache) const;

  TwoPhotonResult two_photon(const FilterPair& f, ResolventCache& cache) const;

  /// Factorizes the frequency-independent shifts -gamma for reuse across a sweep.
  void prepare_static_shifts(const FilterPair& f, ResolventCache& cache) const;

  /// Factorizes the shifts that depend on omega2 alone (the columns of a map).
  void prepare_column_shifts(const FilterPair& f, ResolventCache& cache) const;

  const Superoperator& superoperator() const { return *m_; }

 private:
  cplx coincidence_half(const FilterPair& f, ResolventCache& cache) const;
  Vector minus(const Vector& v) const { return insert_minus_ * v; }
  Vector plus(const Vector& v) const { return insert_plus_ * v; }
  cplx trace(const Vector& v) const { return trace_of(v, m_->dim); }

  const Superoperator* m_;
  SparseMatrix insert_minus_;
  SparseMatrix insert_plus_;
  Vector rho_;
  double steady_residual_ = 0.0;
};

double one_photon_point(const Superoperator& m, const SteadyState& ss, const Operator& detect, double omega,
                        double gamma);

TwoPhotonResult two_photon_point(const Superoperator& m, const SteadyState& ss, const Operator& detect,
                                 const FilterPair& filters);

struct SensorBackendOptions {
  Index max_enlarged_dim = 512;
  double epsilon_rel_tol = 1e-3;
};

/// Explicit sensors: two weakly coupled two-level systems appended to the
/// system and solved for the joint steady state at eps and eps/2.
TwoPhotonResult two_photon_sensor_backend(const OpenSystem& sys, const SensorConfig& cfg,
                                          const SensorBackendOptions& opts = {});

/// <O^dag O^dag O O> / <O^dag O>^2
double colorblind_g2(const SteadyState& ss, const Operator& detect);
/// <O1^dag O1 O2^dag O2> / (<O1^dag O1> <O2^dag O2>)
double cross_g2(const SteadyState& ss, const Operator& o1, const Operator& o2);

}  // namespace tps
