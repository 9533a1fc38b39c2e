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

#include "tps/app/scan.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "tps/error.hpp"

namespace tps::app {

namespace {

using Clock = std::chrono::steady_clock;

// Liouvillian dimension up to which run_map keeps one factorization per grid
// column (about 1 MB each at dimension 1300).
constexpr Index kColumnCacheMaxDim = 2500;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Prepared {
  OpenSystem sys;
  Superoperator m;
  SteadyState ss;
};

Prepared prepare(const RunConfig& cfg) {
  Prepared p{build_system(cfg), {}, {}};
  p.m = build_liouvillian(p.sys);
  p.ss = steady_state(p.m);
  return p;
}

FilterPair filters_at(const RunConfig& cfg, double w1, double w2) { return {w1, w2, cfg.gamma1, cfg.gamma2}; }

// Indices at the quarter points of an axis.
std::vector<int> guard_indices(const Axis& a) {
  std::vector<int> idx;
  for (int q = 1; q <= 3; ++q) {
    const int i = (a.count - 1) * q / 4;
    if (std::find(idx.begin(), idx.end(), i) == idx.end()) idx.push_back(i);
  }
  return idx;
}

void check_truncation(TruncationCheck& t, const char* what) {
  if (t.max_rel_change < t.tolerance) return;
  std::ostringstream msg;
  msg << what << " changes by " << t.max_rel_change << " (relative) when bosonic truncations are raised by " << t.delta
      << "; increase n_max";
  throw Error(ErrorCode::truncation_guard, msg.str());
}

double relative_change(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), 1e-300); }

TruncationCheck map_truncation_guard(const RunConfig& cfg, const MapResult& coarse) {
  TruncationCheck t;
  if (!cfg.truncation_guard || !has_bosonic_mode(cfg)) return t;
  const Prepared fine = prepare(with_raised_truncation(cfg, t.delta));
  CorrelationEngine engine(fine.m, fine.ss, fine.sys.detect);
  ResolventCache cache(fine.m.matrix);
  t.performed = true;
  for (int i : guard_indices(cfg.omega1)) {
    for (int j : guard_indices(cfg.omega2)) {
      const double g = engine.two_photon(filters_at(cfg, cfg.omega1.at(i), cfg.omega2.at(j)), cache).g2;
      t.max_rel_change = std::max(t.max_rel_change, relative_change(coarse.at(i, j), g));
      ++t.samples;
    }
  }
  check_truncation(t, "two-photon spectrum");
  return t;
}

}  // namespace

SpectrumResult run_spectrum(const RunConfig& cfg) {
  cfg.validate();
  const auto t0 = Clock::now();
  const Prepared p = prepare(cfg);
  CorrelationEngine engine(p.m, p.ss, p.sys.detect);
  ResolventCache cache(p.m.matrix);

  SpectrumResult out;
  out.steady_residual = p.ss.residual;
  out.hilbert_dim = p.sys.space.dim();
  for (int i = 0; i < cfg.spectrum.count; ++i) {
    const double w = cfg.spectrum.at(i);
    out.omega.push_back(w);
    out.intensity.push_back(engine.one_photon(w, cfg.gamma1, cache));
  }

  if (cfg.truncation_guard && has_bosonic_mode(cfg)) {
    TruncationCheck& t = out.truncation;
    const Prepared fine = prepare(with_raised_truncation(cfg, t.delta));
    CorrelationEngine fine_engine(fine.m, fine.ss, fine.sys.detect);
    ResolventCache fine_cache(fine.m.matrix);
    const double peak = *std::max_element(out.intensity.begin(), out.intensity.end());
    t.performed = true;
    for (int k = 0; k < 9; ++k) {
      const int i = (cfg.spectrum.count - 1) * k / 8;
      const double s = fine_engine.one_photon(cfg.spectrum.at(i), cfg.gamma1, fine_cache);
      t.max_rel_change = std::max(t.max_rel_change, std::abs(s - out.intensity[i]) / std::max(peak, 1e-300));
      ++t.samples;
    }
    check_truncation(t, "one-photon spectrum");
  }
  out.seconds = seconds_since(t0);
  return out;
}

MapResult run_map(const RunConfig& cfg) {
  cfg.validate();
  const auto t0 = Clock::now();
  const Prepared p = prepare(cfg);
  const CorrelationEngine engine(p.m, p.ss, p.sys.detect);

  MapResult out;
  out.omega1 = cfg.omega1;
  out.omega2 = cfg.omega2;
  out.hilbert_dim = p.sys.space.dim();
  out.steady_residual = p.ss.residual;
  out.workers = cfg.workers;
  out.backend = cfg.backend == BackendChoice::sensors ? Backend::sensors : Backend::semianalytic;
  const std::size_t n = static_cast<std::size_t>(cfg.omega1.count) * cfg.omega2.count;
  out.g2.assign(n, 0.0);
  out.n1.assign(n, 0.0);
  out.n2.assign(n, 0.0);
  std::vector<double> imag(n, 0.0), backend_diff(n, 0.0), eps_diff(n, 0.0), residual(n, 0.0);
  std::vector<char> clamped(n, 0);

  // Frequency-independent shifts are factorized once and shared read-only,
  // together with the per-column shifts when the Liouvillian is small enough
  // to keep one factorization per column in memory.
  ResolventCache shared(p.m.matrix, nullptr, 3 * static_cast<std::size_t>(cfg.omega2.count) + 2);
  if (cfg.backend != BackendChoice::sensors) {
    engine.prepare_static_shifts(filters_at(cfg, 0.0, 0.0), shared);
    if (p.m.matrix.rows() <= kColumnCacheMaxDim)
      for (int j = 0; j < cfg.omega2.count; ++j) engine.prepare_column_shifts(filters_at(cfg, 0.0, cfg.omega2.at(j)), shared);
  }

  SensorConfig sensor_cfg;
  sensor_cfg.epsilon = cfg.epsilon();

  std::atomic<int> next_row{0};
  std::atomic<bool> stop{false};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    ResolventCache cache(p.m.matrix, &shared);
    try {
      for (int i = next_row++; i < cfg.omega1.count && !stop; i = next_row++) {
        for (int j = 0; j < cfg.omega2.count; ++j) {
          const std::size_t k = static_cast<std::size_t>(i) * cfg.omega2.count + j;
          const FilterPair f = filters_at(cfg, cfg.omega1.at(i), cfg.omega2.at(j));
          std::optional<TwoPhotonResult> a, s;
          if (cfg.backend != BackendChoice::sensors) a = engine.two_photon(f, cache);
          if (cfg.backend != BackendChoice::semianalytic) {
            SensorConfig local = sensor_cfg;
            local.filters = f;
            s = two_photon_sensor_backend(p.sys, local);
          }
          const TwoPhotonResult& r = a ? *a : *s;
          out.g2[k] = r.g2;
          out.n1[k] = r.n1;
          out.n2[k] = r.n2;
          imag[k] = r.diagnostics.imag_residue;
          clamped[k] = r.diagnostics.clamped;
          residual[k] = r.diagnostics.steady_residual;
          if (s) eps_diff[k] = s->diagnostics.epsilon_rel_diff.value_or(0.0);
          if (a && s) backend_diff[k] = relative_change(a->g2, s->g2);
        }
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      stop = true;
    }
  };

  if (cfg.workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < cfg.workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  out.max_imag_residue = *std::max_element(imag.begin(), imag.end());
  out.clamped = static_cast<int>(std::count(clamped.begin(), clamped.end(), 1));
  out.steady_residual = std::max(out.steady_residual, *std::max_element(residual.begin(), residual.end()));
  if (cfg.backend != BackendChoice::semianalytic)
    out.max_epsilon_rel_diff = *std::max_element(eps_diff.begin(), eps_diff.end());
  if (cfg.backend == BackendChoice::both)
    out.max_backend_rel_diff = *std::max_element(backend_diff.begin(), backend_diff.end());

  out.truncation = map_truncation_guard(cfg, out);
  out.seconds = seconds_since(t0);
  return out;
}

PointResult run_point(const RunConfig& cfg, double omega1, double omega2) {
  cfg.validate();
  const Prepared p = prepare(cfg);
  const FilterPair f = filters_at(cfg, omega1, omega2);
  PointResult out;
  out.omega1 = omega1;
  out.omega2 = omega2;
  if (cfg.backend != BackendChoice::sensors) {
    ResolventCache cache(p.m.matrix);
    out.semianalytic = CorrelationEngine(p.m, p.ss, p.sys.detect).two_photon(f, cache);
  }
  if (cfg.backend != BackendChoice::semianalytic) {
    SensorConfig sc;
    sc.epsilon = cfg.epsilon();
    sc.filters = f;
    out.sensors = two_photon_sensor_backend(p.sys, sc);
  }
  if (out.semianalytic && out.sensors) out.backend_rel_diff = relative_change(out.semianalytic->g2, out.sensors->g2);

  if (cfg.truncation_guard && has_bosonic_mode(cfg)) {
    TruncationCheck& t = out.truncation;
    const Prepared fine = prepare(with_raised_truncation(cfg, t.delta));
    ResolventCache cache(fine.m.matrix);
    const double g = CorrelationEngine(fine.m, fine.ss, fine.sys.detect).two_photon(f, cache).g2;
    const double ref = out.semianalytic ? out.semianalytic->g2 : out.sensors->g2;
    t.performed = true;
    t.samples = 1;
    t.max_rel_change = relative_change(ref, g);
    check_truncation(t, "two-photon correlation");
  }
  return out;
}

FeaturesResult run_features(const RunConfig& cfg) {
  cfg.validate();
  FeaturesResult out;
  out.lines.push_back(indistinguishability_diagonal());

  switch (cfg.model) {
    case ModelName::single: break;
    case ModelName::coupled: {
      const CoupledParams& c = cfg.coupled;
      const bool linear = is_bosonic(c.mode1.kind) && is_bosonic(c.mode2.kind);
      if (linear) {
        if (c.mode1.omega == c.mode2.omega) {
          out.lines.push_back(hyperbola_resonant(c.g, c.mode1.omega));
        } else {
          const SpectrumResult s = run_spectrum(cfg);
          const LorentzianDoubletFit fit =
              fit_lorentzian_doublet(s.omega, s.intensity, doublet_initial_guess(c), cfg.gamma1);
          std::string warning;
          const auto line = hyperbola_detuned(fit, c.g, c.mode1.linewidth(), c.mode2.linewidth(), c.mode1.omega,
                                              c.mode2.omega, &warning);
          if (line)
            out.lines.push_back(*line);
          else
            out.warnings.push_back(warning);
        }
      } else {
        const DressedLadder lad = ladder(c.g, c.mode1.linewidth(), c.mode2.linewidth());
        const std::vector<int> rungs{2, 3};
        const std::vector<int> first{1};
        for (auto& l : leapfrog_lines(lad, 2, rungs, c.mode1.omega)) out.lines.push_back(l);
        for (auto& l : polariton_virtual_diagonals(lad, first)) out.lines.push_back(l);
        for (auto& l : first_rung_grid(lad, c.mode1.omega)) out.lines.push_back(l);
        if (!lad.strong_coupling(1)) out.warnings.push_back("weak coupling: dressed energies are not real");
      }
      break;
    }
    case ModelName::driven_tls: {
      std::vector<FeatureLine> lines = mollow_features(cfg.driven);
      const Prepared p = prepare(cfg);
      const CorrelationEngine engine(p.m, p.ss, p.sys.detect);
      ResolventCache cache(p.m.matrix, nullptr, 1024);
      const double w = cfg.driven.sideband();
      for (auto& l : lines) {
        if (l.kind != FeatureKind::circle) continue;
        auto g2_at = [&](double a, double b) { return engine.two_photon(filters_at(cfg, a, b), cache).g2; };
        l.c = fit_circle_radius(g2_at, l.a, l.b, 0.35 * w, 1.0 * w);
        l.provenance += " (radius fitted to the minimum locus)";
      }
      out.lines.insert(out.lines.end(), lines.begin(), lines.end());
      break;
    }
    case ModelName::jc_lasing:
      for (auto& l : mollow_features(cfg.lasing)) out.lines.push_back(l);
      break;
  }
  return out;
}

}  // namespace tps::app
