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

#include "tps/features.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/NonLinearOptimization>
#include <unsupported/Eigen/NumericalDiff>

#include "tps/error.hpp"

namespace tps {

namespace {

double common_2ps(double omega1, double omega2, double gamma, double linewidth, double specific) {
  const double d = omega1 - omega2;
  const double pre = linewidth / ((gamma + linewidth) * (gamma + linewidth));
  return pre * (linewidth + gamma * gamma * (2.0 * gamma + linewidth) / (gamma * gamma + d * d) + specific);
}

}  // namespace

double closed_2ps_ho(double omega1, double omega2, double gamma, double linewidth) {
  return common_2ps(omega1, omega2, gamma, linewidth, 2.0 * gamma * (1.0 + gamma / linewidth));
}

double closed_2ps_tls(double omega1, double omega2, double gamma, double linewidth) {
  const double h = 0.5 * (3.0 * gamma + linewidth);
  const double lorentz = h / (h * h + omega1 * omega1) + h / (h * h + omega2 * omega2);
  return common_2ps(omega1, omega2, gamma, linewidth, 4.0 * gamma - 2.0 * gamma * (2.0 * gamma + linewidth) * lorentz);
}

double tls_peak_g2(double gamma, double linewidth) {
  const double x = linewidth / gamma;
  return 2.0 * x / (3.0 + x);
}

double tls_peak_filter_ratio(double target) {
  if (!(target > 0.0 && target < 2.0)) throw Error(ErrorCode::invalid_argument, "target must lie in (0, 2)");
  // 2x / (3 + x) = t  =>  x = 3t / (2 - t); the ratio gamma / linewidth is 1/x.
  return (2.0 - target) / (3.0 * target);
}

AntidiagonalMinimum tls_antidiagonal_minimum() {
  const double s2 = std::numbers::sqrt2;
  return {std::sqrt((15.0 * s2 - 4.0) / 31.0), 2.0 * (s2 - 1.0) / 5.0};
}

bool antibunching_region(double omega1, double omega2, double gamma, double linewidth) {
  const bool on_peak = std::abs(omega1) < linewidth || std::abs(omega2) < linewidth;
  return on_peak && std::abs(omega1 - omega2) > gamma;
}

double low_drive_g2(double gamma, double gamma_sigma) {
  const double r = gamma_sigma / (gamma_sigma + gamma);
  return r * r;
}

double gamma_min_asymptote(double gamma_sigma, double omega_l) {
  return gamma_sigma * gamma_sigma * gamma_sigma / (4.0 * omega_l * omega_l);
}

const char* to_string(FeatureKind k) {
  switch (k) {
    case FeatureKind::diagonal: return "diagonal";
    case FeatureKind::antidiagonal: return "antidiagonal";
    case FeatureKind::vertical: return "vertical";
    case FeatureKind::horizontal: return "horizontal";
    case FeatureKind::hyperbola: return "hyperbola";
    case FeatureKind::circle: return "circle";
  }
  return "unknown";
}

const char* to_string(ExpectedSign s) {
  switch (s) {
    case ExpectedSign::bunching: return "bunching";
    case ExpectedSign::antibunching: return "antibunching";
    case ExpectedSign::uncorrelated: return "uncorrelated";
  }
  return "unknown";
}

double FeatureLine::residual(double omega1, double omega2) const {
  switch (kind) {
    case FeatureKind::diagonal: return omega1 - omega2 - a;
    case FeatureKind::antidiagonal: return omega1 + omega2 - a;
    case FeatureKind::vertical: return omega1 - a;
    case FeatureKind::horizontal: return omega2 - a;
    case FeatureKind::hyperbola: return (omega1 - a) * (omega2 - a) + b * b;
    case FeatureKind::circle: return std::hypot(omega1 - a, omega2 - b) - c;
  }
  return 0.0;
}

// ---------------------------------------------------------------------------
// Doublet fit

namespace {

double lorentzian(double w, double weight, double center, double fwhm) {
  const double h = 0.5 * fwhm;
  return weight / std::numbers::pi * h / (h * h + (w - center) * (w - center));
}

// Parameters: log l-, w-, log gamma-, log l+, w+, log gamma+.
struct DoubletResidual {
  using Scalar = double;
  enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };
  using InputType = Eigen::VectorXd;
  using ValueType = Eigen::VectorXd;
  using JacobianType = Eigen::MatrixXd;

  std::span<const double> omega;
  std::span<const double> spectrum;
  double scale;

  int inputs() const { return 6; }
  int values() const { return static_cast<int>(omega.size()); }

  int operator()(const Eigen::VectorXd& x, Eigen::VectorXd& f) const {
    for (std::size_t i = 0; i < omega.size(); ++i) {
      const double model = lorentzian(omega[i], std::exp(x(0)), x(1), std::exp(x(2))) +
                           lorentzian(omega[i], std::exp(x(3)), x(4), std::exp(x(5)));
      f(static_cast<Index>(i)) = (model - spectrum[i]) / scale;
    }
    return 0;
  }
};

}  // namespace

LorentzianDoubletFit fit_lorentzian_doublet(std::span<const double> omega, std::span<const double> spectrum,
                                            const LorentzianDoubletFit& initial, double detector_gamma) {
  if (omega.size() != spectrum.size() || omega.size() < 7)
    throw Error(ErrorCode::invalid_argument, "doublet fit needs matching arrays with at least 7 samples");

  double total = 0.0, peak = 0.0;
  for (std::size_t i = 1; i < omega.size(); ++i) total += 0.5 * (spectrum[i] + spectrum[i - 1]) * (omega[i] - omega[i - 1]);
  for (double s : spectrum) peak = std::max(peak, std::abs(s));
  if (!(peak > 0.0)) throw Error(ErrorCode::invalid_argument, "doublet fit on an empty spectrum");

  const double l_sum = initial.l_minus + initial.l_plus;
  const double norm = l_sum > 0.0 ? total / l_sum : 0.5 * total;
  auto safe_log = [](double v) { return std::log(std::max(v, 1e-12)); };

  Eigen::VectorXd x(6);
  x << safe_log(initial.l_minus * norm), initial.omega_minus, safe_log(initial.gamma_minus + detector_gamma),
      safe_log(initial.l_plus * norm), initial.omega_plus, safe_log(initial.gamma_plus + detector_gamma);

  DoubletResidual functor{omega, spectrum, peak};
  Eigen::NumericalDiff<DoubletResidual> numdiff(functor);
  Eigen::LevenbergMarquardt<Eigen::NumericalDiff<DoubletResidual>> lm(numdiff);
  lm.parameters.maxfev = 4000;
  lm.parameters.xtol = 1e-12;
  lm.parameters.ftol = 1e-12;
  lm.minimize(x);

  Eigen::VectorXd f(static_cast<Index>(omega.size()));
  functor(x, f);
  double ss = 0.0;
  for (double s : spectrum) ss += (s / peak) * (s / peak);

  LorentzianDoubletFit out;
  out.l_minus = std::exp(x(0));
  out.omega_minus = x(1);
  out.gamma_minus = std::exp(x(2)) - detector_gamma;
  out.l_plus = std::exp(x(3));
  out.omega_plus = x(4);
  out.gamma_plus = std::exp(x(5)) - detector_gamma;
  out.residual = std::sqrt(f.squaredNorm() / std::max(ss, 1e-300));
  if (out.omega_minus > out.omega_plus) {
    std::swap(out.l_minus, out.l_plus);
    std::swap(out.omega_minus, out.omega_plus);
    std::swap(out.gamma_minus, out.gamma_plus);
  }
  return out;
}

LorentzianDoubletFit doublet_initial_guess(const CoupledParams& p) {
  const cplx i1(0.0, 1.0);
  Eigen::MatrixXcd h(2, 2);
  h << p.mode1.omega - 0.5 * i1 * p.mode1.linewidth(), p.g, p.g, p.mode2.omega - 0.5 * i1 * p.mode2.linewidth();
  const Eigen::VectorXcd ev = Eigen::ComplexEigenSolver<Eigen::MatrixXcd>(h, false).eigenvalues();
  const Index lo = ev(0).real() <= ev(1).real() ? 0 : 1;
  const Index hi = 1 - lo;
  LorentzianDoubletFit out;
  out.l_minus = out.l_plus = 0.5;
  out.omega_minus = ev(lo).real();
  out.omega_plus = ev(hi).real();
  out.gamma_minus = std::max(-2.0 * ev(lo).imag(), 1e-9);
  out.gamma_plus = std::max(-2.0 * ev(hi).imag(), 1e-9);
  return out;
}

FeatureLine indistinguishability_diagonal() {
  return {FeatureKind::diagonal, 0.0, 0.0, 0.0, ExpectedSign::bunching, "indistinguishability", false};
}

FeatureLine hyperbola_resonant(double g, double omega_a) {
  return {FeatureKind::hyperbola, omega_a, g, 0.0, ExpectedSign::uncorrelated, "coupled-ho polariton hyperbola", false};
}

std::optional<FeatureLine> hyperbola_detuned(const LorentzianDoubletFit& fit, double g, double linewidth_a,
                                             double linewidth_b, double omega_a, double omega_b,
                                             std::string* warning, double max_residual) {
  if (!(fit.residual <= max_residual)) {
    if (warning) *warning = "doublet fit residual " + std::to_string(fit.residual) + " too large; hyperbola suppressed";
    return std::nullopt;
  }
  const double lsum = fit.l_minus + fit.l_plus;
  const double center = (fit.l_minus * fit.omega_plus + fit.l_plus * fit.omega_minus) / lsum;
  const double mix = 4.0 * fit.l_minus * fit.l_plus / (lsum * lsum);
  const cplx detune((linewidth_a - linewidth_b) / 4.0, (omega_a - omega_b) / 2.0);
  const double vertex = std::sqrt(cplx(g * g, 0.0) - mix * mix * detune * detune).real();
  return FeatureLine{FeatureKind::hyperbola, center, vertex, 0.0, ExpectedSign::uncorrelated,
                     "coupled-ho hyperbola from doublet weights", false};
}

HyperbolaFit fit_hyperbola(std::span<const std::pair<double, double>> points) {
  if (points.size() < 2) throw Error(ErrorCode::invalid_argument, "hyperbola fit needs at least two points");
  // w1 w2 = c (w1 + w2) - K with K = c^2 + V^2
  Eigen::MatrixXd a(static_cast<Index>(points.size()), 2);
  Eigen::VectorXd rhs(static_cast<Index>(points.size()));
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto [w1, w2] = points[i];
    a(static_cast<Index>(i), 0) = w1 + w2;
    a(static_cast<Index>(i), 1) = -1.0;
    rhs(static_cast<Index>(i)) = w1 * w2;
  }
  const Eigen::Vector2d sol = a.colPivHouseholderQr().solve(rhs);
  const double v2 = sol(1) - sol(0) * sol(0);
  return {sol(0), std::sqrt(std::max(v2, 0.0))};
}

std::vector<FeatureLine> leapfrog_lines(const DressedLadder& ladder, int photons, std::span<const int> rungs,
                                        double omega_a) {
  std::vector<FeatureLine> out;
  auto push = [&](double value, const std::string& tag) {
    for (const auto& l : out)
      if (std::abs(l.a - value) < 1e-12) return;
    out.push_back({FeatureKind::antidiagonal, value, 0.0, 0.0, ExpectedSign::bunching, tag, false});
  };
  for (int n : rungs) {
    if (n < photons) continue;
    const double en = ladder.energy(n);
    const double below = ladder.energy(n - photons);
    const std::string tag = "leapfrog n=" + std::to_string(n) + " N=" + std::to_string(photons);
    for (double s : {1.0, -1.0}) {
      push(photons * omega_a + s * (en - below), tag + " E_n-E_{n-N}");
      push(photons * omega_a + s * (en + below), tag + " E_n+E_{n-N}");
    }
  }
  return out;
}

std::vector<FeatureLine> polariton_virtual_diagonals(const DressedLadder& ladder, std::span<const int> rungs) {
  std::vector<FeatureLine> out;
  for (int n : rungs) {
    if (n < 1) continue;
    const double e = ladder.energy(n);
    for (double s : {1.0, -1.0})
      out.push_back({FeatureKind::diagonal, 2.0 * s * e, 0.0, 0.0, ExpectedSign::antibunching,
                     "polariton-to-virtual-state n=" + std::to_string(n), false});
  }
  return out;
}

std::vector<FeatureLine> first_rung_grid(const DressedLadder& ladder, double omega_a) {
  std::vector<FeatureLine> out;
  const double r = ladder.rabi();
  for (double s : {-1.0, 1.0}) {
    out.push_back({FeatureKind::vertical, omega_a + s * r, 0.0, 0.0, ExpectedSign::antibunching, "first-rung polariton", false});
    out.push_back({FeatureKind::horizontal, omega_a + s * r, 0.0, 0.0, ExpectedSign::antibunching, "first-rung polariton", false});
  }
  return out;
}

std::vector<FeatureLine> mollow_features(double omega_plus) {
  std::vector<FeatureLine> out;
  for (double s : {0.0, omega_plus, -omega_plus})
    out.push_back({FeatureKind::antidiagonal, s, 0.0, 0.0, ExpectedSign::bunching, "mollow leapfrog triplet", false});
  for (double s : {0.0, omega_plus, -omega_plus}) {
    out.push_back({FeatureKind::vertical, s, 0.0, 0.0, ExpectedSign::uncorrelated, "mollow peak gridline", false});
    out.push_back({FeatureKind::horizontal, s, 0.0, 0.0, ExpectedSign::uncorrelated, "mollow peak gridline", false});
  }
  // Rings through (W, 0), (W, W) and (0, W) around (W/2, W/2).
  for (double w : {omega_plus, -omega_plus})
    out.push_back({FeatureKind::circle, 0.5 * w, 0.5 * w, std::abs(w) / std::numbers::sqrt2, ExpectedSign::antibunching,
                   "mollow interference ring", true});
  return out;
}

std::vector<FeatureLine> mollow_features(const DrivenTlsParams& p) { return mollow_features(p.sideband()); }

std::vector<FeatureLine> mollow_features(const JcLasingParams& p) { return mollow_features(p.predicted_sideband()); }

double fit_circle_radius(const std::function<double(double, double)>& g2_at, double center1, double center2,
                         double r_lo, double r_hi, int directions, int samples) {
  if (!(r_hi > r_lo) || directions < 1 || samples < 2) throw Error(ErrorCode::invalid_argument, "bad circle search range");
  std::vector<double> radii;
  for (int k = 0; k < directions; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / directions;
    double best_r = r_lo, best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < samples; ++i) {
      const double r = r_lo + (r_hi - r_lo) * i / (samples - 1);
      const double v = g2_at(center1 + r * std::cos(theta), center2 + r * std::sin(theta));
      if (v < best) {
        best = v;
        best_r = r;
      }
    }
    radii.push_back(best_r);
  }
  std::nth_element(radii.begin(), radii.begin() + radii.size() / 2, radii.end());
  return radii[radii.size() / 2];
}

// ---------------------------------------------------------------------------
// Coherent / incoherent split

SpectrumSplit coherent_split(const Superoperator& m, const SteadyState& ss, const Operator& detect, double omega,
                             double gamma) {
  const cplx mean = ss.expectation(detect);
  const Operator coh = scale(mean, identity(detect.space()));
  const Operator fluct = add_scaled(detect, -mean, identity(detect.space()));
  ResolventCache cache(m.matrix);
  SpectrumSplit out;
  out.coherent = CorrelationEngine(m, ss, coh).one_photon(omega, gamma, cache);
  out.incoherent = CorrelationEngine(m, ss, fluct).one_photon(omega, gamma, cache);
  return out;
}

GammaMinResult gamma_min(const Superoperator& m, const SteadyState& ss, const Operator& detect,
                         double fallback_asymptote) {
  auto excess = [&](double log_gamma) {
    const auto s = coherent_split(m, ss, detect, 0.0, std::exp(log_gamma));
    return s.coherent - s.incoherent;
  };
  GammaMinResult out;
  out.asymptote = fallback_asymptote;

  // Coherent light dominates narrow filters (~1/gamma^2 against ~1/gamma).
  double lo = std::log(1e-12), hi = lo;
  double f_lo = excess(lo);
  bool bracketed = false;
  if (f_lo > 0.0) {
    for (double x = lo + 0.5 * std::log(10.0); x <= std::log(1e5); x += 0.5 * std::log(10.0)) {
      if (excess(x) <= 0.0) {
        hi = x;
        bracketed = true;
        break;
      }
      lo = x;
    }
  }
  if (!bracketed) {
    out.asymptotic = true;
    out.gamma_min = fallback_asymptote;
    return out;
  }
  while (std::exp(hi - lo) - 1.0 > 1e-5) {
    const double mid = 0.5 * (lo + hi);
    if (excess(mid) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  out.gamma_min = std::exp(0.5 * (lo + hi));
  return out;
}

GammaMinResult gamma_min(const DrivenTlsParams& p) {
  const OpenSystem sys = make_driven_tls(p);
  const Superoperator m = build_liouvillian(sys);
  const SteadyState ss = steady_state(m);
  return gamma_min(m, ss, sys.detect, gamma_min_asymptote(p.gamma_sigma + p.pump, p.omega_l));
}

}  // namespace tps
