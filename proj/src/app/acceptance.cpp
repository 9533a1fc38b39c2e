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

#include "tps/app/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "tps/app/output.hpp"
#include "tps/app/scan.hpp"
#include "tps/error.hpp"

namespace tps::app {

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void check(bool ok, const std::string& what) {
    if (!ok) pass = false;
    if (detail.tellp() > 0) detail << "; ";
    detail << (ok ? "" : "FAILED ") << what;
  }
};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

double rel(double value, double ref) { return std::abs(value - ref) / std::max(std::abs(ref), 1e-300); }

struct Model {
  OpenSystem sys;
  Superoperator m;
  SteadyState ss;

  explicit Model(OpenSystem s) : sys(std::move(s)), m(build_liouvillian(sys)), ss(steady_state(m)) {}
};

double g2_at(const Model& mod, ResolventCache& cache, double w1, double w2, double gamma) {
  return CorrelationEngine(mod.m, mod.ss, mod.sys.detect).two_photon({w1, w2, gamma, gamma}, cache).g2;
}

RunConfig single_config(const SingleModeParams& p, double gamma, Axis axis) {
  RunConfig c;
  c.model = ModelName::single;
  c.single = p;
  c.gamma1 = c.gamma2 = gamma;
  c.omega1 = c.omega2 = axis;
  return c;
}

RunConfig coupled_config(const CoupledParams& p, double gamma, Axis axis) {
  RunConfig c;
  c.model = ModelName::coupled;
  c.coupled = p;
  c.gamma1 = c.gamma2 = gamma;
  c.omega1 = c.omega2 = axis;
  return c;
}

CoupledParams jc_params(int n_max, double pump) {
  CoupledParams p;
  p.mode1 = {Bosonic{n_max}, 0.0, 0.1, 0.0, 0.0};
  p.mode2 = {TwoLevel{}, 0.0, 0.001, pump, 0.0};
  p.g = 1.0;
  return p;
}

// ---------------------------------------------------------------------------

Outcome closed_form_tls() {
  Outcome o;
  const RunConfig cfg = single_config({TwoLevel{}, 0.0, 0.9, 0.1, 0.0}, 1.0, {-6.0, 6.0, 41});
  const MapResult map = run_map(cfg);
  double worst = 0.0;
  for (int i = 0; i < 41; ++i)
    for (int j = 0; j < 41; ++j)
      worst = std::max(worst, rel(map.at(i, j), closed_2ps_tls(cfg.omega1.at(i), cfg.omega2.at(j), 1.0, 1.0)));
  o.check(worst < 1e-6, "41x41 max rel err " + num(worst));
  o.check(map.seconds < 5.0, "map runtime " + num(map.seconds) + " s");

  const Model mod(make_single(cfg.single));
  ResolventCache cache(mod.m.matrix);
  const double center = g2_at(mod, cache, 0.0, 0.0, 1.0);
  o.check(rel(center, 0.5) < 1e-6, "g2(0,0) = " + num(center));
  const AntidiagonalMinimum mn = tls_antidiagonal_minimum();
  const double at_min = g2_at(mod, cache, mn.omega, -mn.omega, 1.0);
  const double left = g2_at(mod, cache, mn.omega - 0.01, -mn.omega + 0.01, 1.0);
  const double right = g2_at(mod, cache, mn.omega + 0.01, -mn.omega - 0.01, 1.0);
  o.check(rel(at_min, mn.g2) < 1e-6 && at_min < left && at_min < right,
          "antidiagonal minimum " + num(at_min) + " at " + num(mn.omega));
  return o;
}

Outcome closed_form_ho() {
  Outcome o;
  const SingleModeParams p{Bosonic{15}, 0.0, 1.0, 0.2, 0.0};
  const double lw = p.linewidth();
  const RunConfig cfg = single_config(p, lw, {-6.0 * lw, 6.0 * lw, 41});
  const MapResult map = run_map(cfg);  // throws if the truncation guard fails
  o.check(map.truncation.performed, "truncation guard n_max 15 -> 20 change " + num(map.truncation.max_rel_change));
  double worst = 0.0;
  for (int i = 0; i < 41; ++i)
    for (int j = 0; j < 41; ++j)
      worst = std::max(worst, rel(map.at(i, j), closed_2ps_ho(cfg.omega1.at(i), cfg.omega2.at(j), lw, lw)));
  o.check(worst < 1e-6, "41x41 max rel err " + num(worst));

  const Model mod(make_single(p));
  ResolventCache cache(mod.m.matrix);
  const double cases[5][2] = {{0.0, 0.8}, {1.0, 0.4}, {-2.0, 1.6}, {0.5, 0.1}, {3.0, 2.4}};
  double diag = 0.0;
  for (const auto& c : cases) diag = std::max(diag, rel(g2_at(mod, cache, c[0], c[0], c[1]), 2.0));
  o.check(diag < 1e-6, "g2(w,w) = 2 at 5 (w, gamma) pairs, max rel err " + num(diag));
  return o;
}

Outcome sixty_six_rule() {
  Outcome o;
  const double analytic = tls_peak_filter_ratio(0.01);
  o.check(analytic >= 66.0 && analytic <= 67.0, "closed form gamma/gamma_sigma = " + num(analytic));

  // Only the total linewidth gamma + pump = 1 enters g2(0,0).
  const Model mod(make_single({TwoLevel{}, 0.0, 0.9, 0.1, 0.0}));
  auto excess = [&](double log_gamma) {
    const double gamma = std::exp(log_gamma);
    ResolventCache cache(mod.m.matrix);
    return g2_at(mod, cache, 0.0, 0.0, gamma) - 0.01;
  };
  double lo = std::log(10.0), hi = std::log(1000.0);
  if (!(excess(lo) > 0.0 && excess(hi) < 0.0)) {
    o.check(false, "no numerical 1% crossing in [10, 1000]");
    return o;
  }
  while (hi - lo > 1e-9) {
    const double mid = 0.5 * (lo + hi);
    (excess(mid) > 0.0 ? lo : hi) = mid;
  }
  const double numeric = std::exp(0.5 * (lo + hi));
  o.check(numeric >= 66.0 && numeric <= 67.0, "numerical crossing gamma/gamma_sigma = " + num(numeric));
  return o;
}

Outcome backend_equivalence() {
  Outcome o;
  const auto t0 = Clock::now();
  struct Case {
    const char* name;
    OpenSystem sys;
    double gamma;
    Axis axis;
  };
  const std::vector<Case> cases = {
      {"tls", make_single({TwoLevel{}, 0.0, 0.9, 0.1, 0.0}), 1.0, {-6.0, 6.0, 41}},
      {"ho", make_single({Bosonic{15}, 0.0, 1.0, 0.2, 0.0}), 0.8, {-4.8, 4.8, 41}},
      {"jc-linear", make_coupled(jc_params(5, 1e-6)), 0.1, {-3.0, 3.0, 41}},
  };
  std::mt19937 rng(2026);
  std::uniform_int_distribution<int> pick(0, 40);
  for (const Case& c : cases) {
    const Model mod(c.sys);
    ResolventCache cache(mod.m.matrix);
    double worst = 0.0;
    for (int k = 0; k < 10; ++k) {
      const double w1 = c.axis.at(pick(rng)), w2 = c.axis.at(pick(rng));
      SensorConfig sc;
      sc.epsilon = 1e-3 * c.gamma;
      sc.filters = {w1, w2, c.gamma, c.gamma};
      const double sensors = two_photon_sensor_backend(c.sys, sc).g2;
      worst = std::max(worst, rel(sensors, g2_at(mod, cache, w1, w2, c.gamma)));
    }
    o.check(worst < 1e-3, std::string(c.name) + " max rel diff " + num(worst) + " (4D = " +
                              std::to_string(4 * c.sys.space.dim()) + ")");
  }
  const double t = seconds_since(t0);
  o.check(t < 60.0, "runtime " + num(t) + " s");
  return o;
}

double smallest_linewidth(const Superoperator& m) {
  const Eigen::MatrixXcd dense(m.matrix);
  const Eigen::VectorXcd ev = Eigen::ComplexEigenSolver<Eigen::MatrixXcd>(dense, false).eigenvalues();
  double best = std::numeric_limits<double>::infinity();
  for (const cplx& e : ev)
    if (std::abs(e.real()) > 1e-9) best = std::min(best, std::abs(e.real()));
  return best;
}

double largest_rate(const SparseMatrix& m) {
  Eigen::VectorXd rows = Eigen::VectorXd::Zero(m.rows());
  for (Index k = 0; k < m.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(m, k); it; ++it) rows(it.row()) += std::abs(it.value());
  return rows.maxCoeff();
}

Outcome universal_limits() {
  Outcome o;
  struct ZooEntry {
    const char* name;
    OpenSystem sys;
    std::vector<double> freqs;
    double linewidth_hint = 0.0;  // used when the Liouvillian is too large to diagonalize
    bool coherent_drive = false;
  };
  CoupledParams hoho = jc_params(4, 1e-6);
  hoho.mode2.kind = Bosonic{4};
  CoupledParams tlstls = jc_params(1, 1e-6);
  tlstls.mode1.kind = TwoLevel{};
  DrivenTlsParams driven;
  driven.omega_l = 5.0;
  const double w = driven.sideband();
  JcLasingParams lasing;
  const double wl = lasing.predicted_sideband();

  std::vector<ZooEntry> zoo;
  zoo.push_back({"tls", make_single({TwoLevel{}, 0.0, 1.0, 0.1, 0.0}), {0.0, 0.5}});
  zoo.push_back({"ho", make_single({Bosonic{15}, 0.0, 1.0, 0.2, 0.0}), {0.0, 0.5}});
  zoo.push_back({"ho-ho", make_coupled(hoho), {-1.0, 1.0, 0.3}});
  zoo.push_back({"tls-tls", make_coupled(tlstls), {-1.0, 1.0, 0.3}});
  zoo.push_back({"jc-linear", make_coupled(jc_params(5, 1e-6)), {-1.0, 1.0, 0.3}});
  zoo.push_back({"jc-nonlinear", make_coupled(jc_params(12, 0.05)), {-1.0, 1.0, 0.3}});
  zoo.push_back({"driven-tls", make_driven_tls(driven), {0.0, w, -w}, 0.0, true});
  zoo.push_back({"jc-lasing", make_jc_lasing(lasing), {0.0, 0.3, wl, -wl}, lasing.predicted_laser_linewidth()});

  for (const ZooEntry& z : zoo) {
    const Model mod(z.sys);
    const double narrow = 1e-3 * (z.linewidth_hint > 0.0 ? z.linewidth_hint : smallest_linewidth(mod.m));
    const double wide = 1e3 * largest_rate(mod.m.matrix);
    ResolventCache cache(mod.m.matrix);
    double worst_off = 0.0, worst_diag = 0.0, worst_pathology = 0.0;
    for (double a : z.freqs) {
      for (double b : z.freqs) {
        const double g = g2_at(mod, cache, a, b, narrow);
        if (z.coherent_drive && a + b == 0.0)
          worst_pathology = std::max(worst_pathology, a == 0.0 ? std::abs(g - 1.0) / 0.02 : std::abs(g - 2.0) / 0.04);
        else if (a == b)
          worst_diag = std::max(worst_diag, std::abs(g - 2.0));
        else
          worst_off = std::max(worst_off, std::abs(g - 1.0));
      }
    }
    ResolventCache wide_cache(mod.m.matrix);
    const double colorblind = colorblind_g2(mod.ss, mod.sys.detect);
    const double broad = g2_at(mod, wide_cache, 0.0, 0.0, wide);
    const double broad_err = std::abs(broad - colorblind) / std::max(colorblind, 1.0);
    std::string line = std::string(z.name) + ": |g2-1| " + num(worst_off) + ", |g2-2| diag " + num(worst_diag) +
                       ", colorblind " + num(colorblind) + " vs " + num(broad);
    bool ok = worst_off <= 0.02 && worst_diag <= 0.04 && broad_err <= 0.01;
    if (z.coherent_drive) {
      line += ", g2(0,0) and g2(W+,W-) band use " + num(worst_pathology);
      ok = ok && worst_pathology <= 1.0;
    }
    o.check(ok, line);
  }
  return o;
}

// Columns of a map, each reduced to the omega2 of its minimum on the branch
// opposite to omega1 across `center`, refined by a parabola through the
// neighbouring cells.
std::vector<std::pair<double, double>> hyperbola_dips(const MapResult& map, double center, double vertex) {
  std::vector<std::pair<double, double>> pts;
  for (int i = 0; i < map.omega1.count; ++i) {
    const double w1 = map.omega1.at(i);
    if (std::abs(w1 - center) < 0.5 * vertex) continue;
    int best = -1;
    for (int j = 0; j < map.omega2.count; ++j) {
      const double w2 = map.omega2.at(j);
      const bool opposite = (w1 > center) ? (w2 < center) : (w2 > center);
      if (!opposite || std::abs(w2 - w1) < 1.0) continue;
      if (best < 0 || map.at(i, j) < map.at(i, best)) best = j;
    }
    if (best <= 0 || best >= map.omega2.count - 1) continue;
    const double ym = map.at(i, best - 1), y0 = map.at(i, best), yp = map.at(i, best + 1);
    const double denom = ym - 2.0 * y0 + yp;
    const double step = (map.omega2.max - map.omega2.min) / (map.omega2.count - 1);
    const double shift = denom > 0.0 ? 0.5 * (ym - yp) / denom : 0.0;
    pts.emplace_back(w1, map.omega2.at(best) + std::clamp(shift, -0.5, 0.5) * step);
  }
  return pts;
}

Outcome coupled_ho_hyperbola() {
  Outcome o;
  {
    CoupledParams p = jc_params(4, 1e-6);
    p.mode2.kind = Bosonic{4};
    const Model mod(make_coupled(p));
    ResolventCache cache(mod.m.matrix, nullptr, 64);
    for (double w1 : {0.5, 1.0, 2.0}) {
      auto f = [&](double w2) { return g2_at(mod, cache, w1, w2, 0.1); };
      double best = -4.0, best_val = f(best);
      for (double w2 = -4.0; w2 <= -0.05; w2 += 0.02) {
        const double v = f(w2);
        if (v < best_val) best_val = v, best = w2;
      }
      double a = best - 0.02, b = best + 0.02;
      const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
      while (b - a > 1e-4) {
        const double c = b - phi * (b - a), d = a + phi * (b - a);
        if (f(c) < f(d))
          b = d;
        else
          a = c;
      }
      const double found = 0.5 * (a + b);
      o.check(std::abs(found + 1.0 / w1) <= 0.15,
              "resonant cut w1=" + num(w1) + ": minimum at " + num(found) + " vs " + num(-1.0 / w1));
    }
  }

  struct Detuned {
    const char* name;
    double gamma_a, gamma_b;
  };
  for (const Detuned& d : {Detuned{"gamma_b~0", 0.0999, 1e-4}, Detuned{"gamma_a=gamma_b", 0.05, 0.05},
                           Detuned{"gamma_a~0", 1e-4, 0.0999}}) {
    CoupledParams p;
    p.mode1 = {Bosonic{4}, 0.0, d.gamma_a, 0.0, 0.0};
    p.mode2 = {Bosonic{4}, 5.0, d.gamma_b, 1e-3 * d.gamma_b, 0.0};
    p.g = 1.0;
    RunConfig cfg = coupled_config(p, 0.1, {-6.0, 11.0, 81});
    cfg.spectrum = {-6.0, 11.0, 2001};
    const SpectrumResult s = run_spectrum(cfg);
    const LorentzianDoubletFit fit = fit_lorentzian_doublet(s.omega, s.intensity, doublet_initial_guess(p), 0.1);
    std::string warning;
    const auto pred = hyperbola_detuned(fit, p.g, p.mode1.linewidth(), p.mode2.linewidth(), 0.0, 5.0, &warning);
    if (!pred) {
      o.check(false, std::string(d.name) + ": " + warning);
      continue;
    }
    const MapResult map = run_map(cfg);
    const auto dips = hyperbola_dips(map, pred->a, pred->b);
    const HyperbolaFit h = fit_hyperbola(dips);
    const double tol = 0.1 * pred->b;
    o.check(std::abs(h.center - pred->a) <= tol && std::abs(h.vertex - pred->b) <= tol,
            std::string(d.name) + ": dips center " + num(h.center) + " vertex " + num(h.vertex) + " vs predicted " +
                num(pred->a) + ", " + num(pred->b));
  }
  return o;
}

double bilinear(const MapResult& map, double w1, double w2) {
  auto locate = [](const Axis& a, double w, int& i, double& t) {
    const double x = (w - a.min) / (a.max - a.min) * (a.count - 1);
    i = std::clamp(static_cast<int>(std::floor(x)), 0, a.count - 2);
    t = x - i;
  };
  int i, j;
  double s, t;
  locate(map.omega1, w1, i, s);
  locate(map.omega2, w2, j, t);
  return (1 - s) * (1 - t) * map.at(i, j) + s * (1 - t) * map.at(i + 1, j) + (1 - s) * t * map.at(i, j + 1) +
         s * t * map.at(i + 1, j + 1);
}

double mean_along_antidiagonal(const MapResult& map, double sum) {
  double total = 0.0;
  int n = 0;
  for (int k = 0; k <= 200; ++k) {
    const double w1 = map.omega1.min + (map.omega1.max - map.omega1.min) * k / 200.0;
    const double w2 = sum - w1;
    if (w2 < map.omega2.min || w2 > map.omega2.max) continue;
    total += bilinear(map, w1, w2);
    ++n;
  }
  return total / n;
}

Outcome jc_leapfrog() {
  Outcome o;
  const CoupledParams p = jc_params(12, 0.05);
  const RunConfig cfg = coupled_config(p, 0.1, {-3.0, 3.0, 101});
  const MapResult map = run_map(cfg);
  o.check(map.seconds < 600.0, "101x101 map at n_max=12 in " + num(map.seconds) + " s");

  const DressedLadder lad = ladder(p.g, p.mode1.linewidth(), p.mode2.linewidth());
  const double e2 = lad.energy(2);
  const double on = mean_along_antidiagonal(map, e2);
  const double above = mean_along_antidiagonal(map, e2 + 0.3);
  const double below = mean_along_antidiagonal(map, e2 - 0.3);
  o.check(on >= 1.2 * above && on >= 1.2 * below, "mean g2 on w1+w2=E2 " + num(on) + " vs offset lines " +
                                                      num(above) + ", " + num(below));

  // Satellites: along cuts perpendicular to each line, g2 must peak within
  // 0.1 g of the line over a stretch of at least 4 consecutive cuts (0.4 g).
  const Model mod(make_coupled(p));
  ResolventCache cache(mod.m.matrix, nullptr, 1024);
  const double e1 = lad.energy(1), e3 = lad.energy(3);
  for (double target : {e3 - e1, -(e3 - e1), e3 + e1, -(e3 + e1)}) {
    int run = 0, longest = 0;
    for (int k = -25; k <= 25; ++k) {
      const double diff = 0.1 * k;
      if (std::abs(target) + std::abs(diff) > 5.6) {
        run = 0;
        continue;
      }
      double v[13];
      for (int q = 0; q < 13; ++q) {
        const double s = target - 0.15 + 0.025 * q;
        v[q] = g2_at(mod, cache, 0.5 * (s + diff), 0.5 * (s - diff), 0.1);
      }
      bool peak = false;
      for (int q = 2; q <= 10; ++q) peak = peak || (v[q] > v[q - 1] && v[q] > v[q + 1]);
      run = peak ? run + 1 : 0;
      longest = std::max(longest, run);
    }
    o.check(longest >= 4, "satellite w1+w2=" + num(target) + " local maximum over " + std::to_string(longest) + " cuts");
  }
  return o;
}

Outcome mollow_values() {
  Outcome o;
  {
    DrivenTlsParams p;
    p.omega_l = 150.0;
    const Model mod(make_driven_tls(p));
    ResolventCache cache(mod.m.matrix);
    const double w = p.sideband(), gamma = 25.0;
    const double pp = g2_at(mod, cache, w, w, gamma), p0 = g2_at(mod, cache, w, 0.0, gamma);
    const double pm = g2_at(mod, cache, w, -w, gamma), c = g2_at(mod, cache, 0.0, 0.0, gamma);
    o.check(pp < 0.3, "g2(W+,W+) " + num(pp));
    o.check(p0 < 0.3, "g2(W+,0) " + num(p0));
    o.check(pm >= 0.7 && pm <= 1.3, "g2(W+,W-) " + num(pm));
    o.check(c >= 0.7 && c <= 1.3, "g2(0,0) " + num(c));

    const GammaMinResult gm = gamma_min(mod.m, mod.ss, mod.sys.detect, gamma_min_asymptote(1.0, p.omega_l));
    o.check(!gm.asymptotic && rel(gm.gamma_min, gm.asymptote) < 0.2,
            "gamma_min " + num(gm.gamma_min) + " vs asymptote " + num(gm.asymptote));
  }
  {
    DrivenTlsParams p;
    p.omega_l = 1e-3;
    const Model mod(make_driven_tls(p));
    double worst = 0.0;
    for (double gamma : {0.1, 1.0, 10.0}) {
      ResolventCache cache(mod.m.matrix);
      worst = std::max(worst, rel(g2_at(mod, cache, 0.0, 0.0, gamma), low_drive_g2(gamma, 1.0)));
    }
    o.check(worst < 1e-3, "low-drive limit max rel err " + num(worst));
  }
  {
    DrivenTlsParams p;
    p.omega_l = 10.0;
    p.delta = std::sqrt(300.0 * 300.0 - 4.0 * p.omega_l * p.omega_l);
    const Model mod(make_driven_tls(p));
    ResolventCache cache(mod.m.matrix);
    const double w = p.sideband();
    const double real = g2_at(mod, cache, w, w, 25.0), virt = g2_at(mod, cache, -w, -w, 25.0);
    o.check(real < virt, "detuned g2(W+,W+) " + num(real) + " < g2(W-,W-) " + num(virt));
  }
  return o;
}

Outcome dephasing() {
  Outcome o;
  const AntidiagonalMinimum mn = tls_antidiagonal_minimum();
  double at_min[2], fraction[2];
  const SingleModeParams cases[2] = {{TwoLevel{}, 0.0, 0.9, 0.1, 0.0}, {TwoLevel{}, 0.0, 0.225, 0.025, 0.75}};
  for (int k = 0; k < 2; ++k) {
    const MapResult map = run_map(single_config(cases[k], 1.0, {-6.0, 6.0, 101}));
    fraction[k] = static_cast<double>(std::count_if(map.g2.begin(), map.g2.end(), [](double g) { return g < 1.0; })) /
                  map.g2.size();
    const Model mod(make_single(cases[k]));
    ResolventCache cache(mod.m.matrix);
    at_min[k] = g2_at(mod, cache, mn.omega, -mn.omega, 1.0);
  }
  o.check(at_min[1] < at_min[0], "g2 at the antidiagonal minimum " + num(at_min[0]) + " -> " + num(at_min[1]));
  o.check(fraction[1] - fraction[0] > 0.05,
          "cells with g2 < 1: " + num(100 * fraction[0]) + "% -> " + num(100 * fraction[1]) + "%");
  return o;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism(const std::filesystem::path& dir) {
  Outcome o;
  RunConfig cfg = coupled_config(jc_params(5, 1e-6), 0.1, {-2.0, 2.0, 31});
  cfg.output = (dir / "determinism").string();
  std::string csv[2];
  nlohmann::json meta[2];
  const int workers[2] = {1, 4};
  for (int k = 0; k < 2; ++k) {
    cfg.workers = workers[k];
    const auto path = write_map(cfg, run_map(cfg));
    csv[k] = slurp(path);
    meta[k] = nlohmann::json::parse(slurp(cfg.output + ".meta"));
    meta[k].erase("execution");
    meta[k]["config"].erase("workers");
  }
  o.check(!csv[0].empty() && csv[0] == csv[1], "2ps.csv byte-identical for --workers 1 and 4");
  o.check(meta[0] == meta[1], "metadata identical outside the execution block");
  return o;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts) {
  std::filesystem::path dir = opts.scratch_dir;
  if (dir.empty()) {
    std::random_device rd;
    dir = std::filesystem::temp_directory_path() / ("tps_acceptance_" + std::to_string(rd()));
  }
  std::filesystem::create_directories(dir);

  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"TLS closed-form oracle", closed_form_tls},
      {"HO closed-form oracle", closed_form_ho},
      {"sixty-six-times rule", sixty_six_rule},
      {"backend equivalence", backend_equivalence},
      {"universal limits", universal_limits},
      {"coupled-HO hyperbola", coupled_ho_hyperbola},
      {"JC leapfrog lines", jc_leapfrog},
      {"Mollow interference values", mollow_values},
      {"dephasing", dephasing},
      {"determinism", [&] { return determinism(dir); }},
  };

  std::vector<CriterionResult> results;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const int id = static_cast<int>(k) + 1;
    if (!opts.only.empty() && std::find(opts.only.begin(), opts.only.end(), id) == opts.only.end()) continue;
    CriterionResult r;
    r.id = id;
    r.name = criteria[k].first;
    const auto t0 = Clock::now();
    try {
      Outcome o = criteria[k].second();
      r.pass = o.pass;
      r.detail = o.detail.str();
    } catch (const Error& e) {
      r.pass = false;
      r.detail = std::string("error ") + to_string(e.code()) + ": " + e.what();
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = std::string("error: ") + e.what();
    }
    r.seconds = seconds_since(t0);
    if (opts.on_result) opts.on_result(r);
    results.push_back(std::move(r));
  }
  if (opts.scratch_dir.empty()) std::filesystem::remove_all(dir);
  return results;
}

std::string format_result_line(const CriterionResult& r) {
  char head[96];
  std::snprintf(head, sizeof head, "%s %2d  %-28s (%.2f s)  ", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds);
  return head + r.detail;
}

}  // namespace tps::app
