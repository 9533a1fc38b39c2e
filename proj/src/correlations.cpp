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

#include "tps/correlations.hpp"

#include <cmath>
#include <sstream>

#include "tps/error.hpp"

namespace tps {

const char* to_string(Backend b) { return b == Backend::semianalytic ? "semianalytic" : "sensors"; }

void FilterPair::validate() const {
  if (!(gamma1 > 0.0) || !(gamma2 > 0.0)) throw Error(ErrorCode::invalid_argument, "filter linewidths must be positive");
  if (!std::isfinite(omega1) || !std::isfinite(omega2) || !std::isfinite(gamma1) || !std::isfinite(gamma2))
    throw Error(ErrorCode::invalid_argument, "filter parameters must be finite");
}

void SensorConfig::validate() const {
  filters.validate();
  if (!(epsilon > 0.0)) throw Error(ErrorCode::invalid_argument, "sensor coupling must be positive");
  if (epsilon > 1e-2 * std::min(filters.gamma1, filters.gamma2))
    throw Error(ErrorCode::epsilon_guard, "sensor coupling must satisfy epsilon <= 1e-2 min(gamma1, gamma2)");
}

CorrelationEngine::CorrelationEngine(const Superoperator& m, const SteadyState& ss, const Operator& detect)
    : m_(&m),
      insert_minus_(left_multiply(detect.matrix())),
      insert_plus_(right_multiply(SparseMatrix(detect.matrix().adjoint()))),
      rho_(vectorize(ss.rho)),
      steady_residual_(ss.residual) {
  if (detect.dim() != m.dim || ss.rho.rows() != m.dim)
    throw Error(ErrorCode::space_mismatch, "detection operator, steady state and superoperator disagree in dimension");
}

double CorrelationEngine::one_photon(double omega, double gamma, ResolventCache& cache) const {
  if (!(gamma > 0.0)) throw Error(ErrorCode::invalid_argument, "filter linewidth must be positive");
  const cplx z(-0.5 * gamma, -omega);
  const Vector x = cache.solve(z, minus(rho_));
  return (2.0 / gamma) * trace(plus(x)).real();
}

namespace {

// Shifts of the coincidence chain. Shared by the chain and the prepare_*
// helpers so that cache keys match bit for bit.
cplx lower_shift(double w, double g) { return cplx(0.0, -w) - 0.5 * g; }
cplx raise_shift(double w, double g) { return cplx(0.0, w) - 0.5 * g; }
cplx outer_shift(double w2, double g1, double g2) { return cplx(0.0, -w2) - g1 - 0.5 * g2; }

}  // namespace

void CorrelationEngine::prepare_static_shifts(const FilterPair& f, ResolventCache& cache) const {
  cache.prepare(cplx(-f.gamma1, 0.0));
  cache.prepare(cplx(-f.gamma2, 0.0));
}

void CorrelationEngine::prepare_column_shifts(const FilterPair& f, ResolventCache& cache) const {
  cache.prepare(lower_shift(f.omega2, f.gamma2));
  cache.prepare(raise_shift(f.omega2, f.gamma2));
  cache.prepare(outer_shift(f.omega2, f.gamma1, f.gamma2));
}

// One ordering of the coincidence chain; the full value adds the copy with
// sensors 1 and 2 exchanged.
cplx CorrelationEngine::coincidence_half(const FilterPair& f, ResolventCache& cache) const {
  const double w1 = f.omega1, w2 = f.omega2, g1 = f.gamma1, g2 = f.gamma2;
  const cplx i1(0.0, 1.0);

  const Vector a = minus(rho_);
  const Vector b = plus(rho_);
  const Vector c1m = cache.solve(lower_shift(w1, g1), a);
  const Vector c1p = cache.solve(raise_shift(w1, g1), b);
  const Vector c2m = cache.solve(lower_shift(w2, g2), a);

  const Vector pop1 = minus(cache.solve(cplx(-g1, 0.0), plus(c1m) + minus(c1p)));
  const Vector mixed = minus(cache.solve(i1 * (w1 - w2) - 0.5 * (g1 + g2), minus(c1p) + plus(c2m)));
  const Vector pair = plus(cache.solve(-i1 * (w1 + w2) - 0.5 * (g1 + g2), minus(c2m + c1m)));

  const Vector outer = plus(cache.solve(outer_shift(w2, g1, g2), pop1 + mixed + pair));
  return (2.0 / (g1 + g2)) * trace(outer);
}

TwoPhotonResult CorrelationEngine::two_photon(const FilterPair& f, ResolventCache& cache) const {
  f.validate();
  TwoPhotonResult out;
  out.backend = Backend::semianalytic;
  out.n1 = one_photon(f.omega1, f.gamma1, cache);
  out.n2 = one_photon(f.omega2, f.gamma2, cache);
  const cplx bracket = coincidence_half(f, cache) + coincidence_half(f.swapped(), cache);
  out.n12 = bracket.real();
  out.diagnostics.steady_residual = steady_residual_;
  out.diagnostics.imag_residue = std::abs(bracket.real()) > 0.0 ? std::abs(bracket.imag()) / std::abs(bracket.real()) : 0.0;

  const double scale = out.n1 * out.n2;
  if (out.n12 < 0.0) {
    if (out.n12 < -1e-8 * std::abs(scale)) {
      std::ostringstream msg;
      msg << "negative coincidence n12 = " << out.n12 << " at (" << f.omega1 << ", " << f.omega2 << ")";
      throw Error(ErrorCode::negative_coincidence, msg.str());
    }
    out.n12 = 0.0;
    out.diagnostics.clamped = true;
  }
  if (!(scale > 0.0)) throw Error(ErrorCode::invalid_argument, "filtered intensity vanishes: system does not emit");
  out.g2 = out.n12 / scale;
  return out;
}

double one_photon_point(const Superoperator& m, const SteadyState& ss, const Operator& detect, double omega,
                        double gamma) {
  ResolventCache cache(m.matrix);
  return CorrelationEngine(m, ss, detect).one_photon(omega, gamma, cache);
}

TwoPhotonResult two_photon_point(const Superoperator& m, const SteadyState& ss, const Operator& detect,
                                 const FilterPair& filters) {
  ResolventCache cache(m.matrix);
  return CorrelationEngine(m, ss, detect).two_photon(filters, cache);
}

namespace {

struct SensorRun {
  double n1, n2, n12, residual;
};

SensorRun run_sensors(const OpenSystem& sys, const FilterPair& f, double eps) {
  const HilbertSpace big = sys.space.extended({TwoLevel{}, TwoLevel{}});
  const std::size_t s1 = sys.space.num_factors();
  const std::size_t s2 = s1 + 1;
  const Operator o = lift(sys.detect, big);
  const Operator od = adjoint(o);
  const Operator c1 = annihilator(big, s1);
  const Operator c2 = annihilator(big, s2);
  const Operator n1 = number(big, s1);
  const Operator n2 = number(big, s2);

  OpenSystem ext;
  ext.space = big;
  Operator h = lift(sys.hamiltonian, big);
  h = add_scaled(h, f.omega1, n1);
  h = add_scaled(h, f.omega2, n2);
  h = add_scaled(h, eps, mul(o, adjoint(c1)) + mul(od, c1));
  h = add_scaled(h, eps, mul(o, adjoint(c2)) + mul(od, c2));
  ext.hamiltonian = h;
  for (const auto& ch : sys.channels) ext.channels.push_back({lift(ch.collapse, big), ch.rate});
  ext.channels.push_back({c1, f.gamma1});
  ext.channels.push_back({c2, f.gamma2});
  ext.detect = c1;

  const Superoperator m = build_liouvillian(ext);
  SteadyStateOptions opts;
  opts.uniqueness_max_liouville_dim = 0;
  const SteadyState ss = steady_state(m, opts);
  return {ss.expectation(n1).real(), ss.expectation(n2).real(), ss.expectation(mul(n1, n2)).real(), ss.residual};
}

}  // namespace

TwoPhotonResult two_photon_sensor_backend(const OpenSystem& sys, const SensorConfig& cfg,
                                          const SensorBackendOptions& opts) {
  cfg.validate();
  sys.validate();
  if (4 * sys.space.dim() > opts.max_enlarged_dim) {
    std::ostringstream msg;
    msg << "sensor backend needs 4*D <= " << opts.max_enlarged_dim << " but D = " << sys.space.dim();
    throw Error(ErrorCode::size_guard, msg.str());
  }
  const double eps = cfg.epsilon;
  const SensorRun coarse = run_sensors(sys, cfg.filters, eps);
  const SensorRun fine = run_sensors(sys, cfg.filters, 0.5 * eps);
  const double g_coarse = coarse.n12 / (coarse.n1 * coarse.n2);
  const double g_fine = fine.n12 / (fine.n1 * fine.n2);
  const double rel = std::abs(g_fine - g_coarse) / std::max(std::abs(g_fine), 1e-300);

  TwoPhotonResult out;
  out.backend = Backend::sensors;
  const double e2 = 0.25 * eps * eps;
  out.n1 = fine.n1 / e2;
  out.n2 = fine.n2 / e2;
  out.n12 = fine.n12 / (e2 * e2);
  out.g2 = g_fine;
  out.diagnostics.steady_residual = fine.residual;
  out.diagnostics.g2_coarse = g_coarse;
  out.diagnostics.epsilon_rel_diff = rel;
  out.diagnostics.epsilon = 0.5 * eps;
  if (!(rel < opts.epsilon_rel_tol)) {
    std::ostringstream msg;
    msg << "sensor coupling not converged: g2(eps) = " << g_coarse << ", g2(eps/2) = " << g_fine << " (relative change "
        << rel << ")";
    throw Error(ErrorCode::epsilon_guard, msg.str());
  }
  return out;
}

double colorblind_g2(const SteadyState& ss, const Operator& detect) {
  const Operator od = adjoint(detect);
  const double n = ss.expectation(mul(od, detect)).real();
  if (!(n > 0.0)) throw Error(ErrorCode::invalid_argument, "color-blind g2 undefined: zero population");
  const double nn = ss.expectation(mul(mul(od, od), mul(detect, detect))).real();
  return nn / (n * n);
}

double cross_g2(const SteadyState& ss, const Operator& o1, const Operator& o2) {
  const Operator n1 = mul(adjoint(o1), o1);
  const Operator n2 = mul(adjoint(o2), o2);
  const double a = ss.expectation(n1).real();
  const double b = ss.expectation(n2).real();
  if (!(a > 0.0) || !(b > 0.0)) throw Error(ErrorCode::invalid_argument, "cross g2 undefined: zero population");
  return ss.expectation(mul(n1, n2)).real() / (a * b);
}

}  // namespace tps
