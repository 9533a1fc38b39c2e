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

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tps/correlations.hpp"
#include "tps/models.hpp"

namespace tps {

// ---------------------------------------------------------------------------
// Closed-form two-photon spectra of a single free mode. Frequencies are
// measured from the mode frequency; gamma is the filter linewidth and
// linewidth the emission linewidth of the mode.

double closed_2ps_ho(double omega1, double omega2, double gamma, double linewidth);
double closed_2ps_tls(double omega1, double omega2, double gamma, double linewidth);

/// g2 of a two-level emitter when both filters sit on the peak: 2x / (3 + x), x = linewidth / gamma.
double tls_peak_g2(double gamma, double linewidth);
/// Filter linewidth (in units of the emitter linewidth) at which tls_peak_g2 equals `target`.
double tls_peak_filter_ratio(double target);

struct AntidiagonalMinimum {
  double omega;  // the minimum sits at (omega, -omega)
  double g2;
};
/// Minimum of the two-level 2PS along omega1 = -omega2 for gamma = linewidth = 1.
AntidiagonalMinimum tls_antidiagonal_minimum();

/// Frequency pairs where a two-level emitter is expected to antibunch.
bool antibunching_region(double omega1, double omega2, double gamma, double linewidth);

/// Weak coherent drive limit of the central-peak correlation, (gamma_sigma / (gamma_sigma + gamma))^2.
double low_drive_g2(double gamma, double gamma_sigma);
/// Intense-drive asymptote gamma_sigma^3 / (4 omega_l^2).
double gamma_min_asymptote(double gamma_sigma, double omega_l);

// ---------------------------------------------------------------------------
// Feature lines annotating a 2PS map.

enum class FeatureKind { diagonal, antidiagonal, vertical, horizontal, hyperbola, circle };
enum class ExpectedSign { bunching, antibunching, uncorrelated };

const char* to_string(FeatureKind k);
const char* to_string(ExpectedSign s);

/// Parameter meaning by kind:
///   diagonal      omega1 - omega2 = a
///   antidiagonal  omega1 + omega2 = a
///   vertical      omega1 = a
///   horizontal    omega2 = a
///   hyperbola     (omega1 - a)(omega2 - a) = -b^2
///   circle        centre (a, b), radius c
struct FeatureLine {
  FeatureKind kind = FeatureKind::diagonal;
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  ExpectedSign sign = ExpectedSign::bunching;
  std::string provenance;
  bool qualitative = false;

  /// Signed distance-like residual of a point from the line (zero on it).
  double residual(double omega1, double omega2) const;
};

/// Two-Lorentzian decomposition of a one-photon spectrum,
/// S(w) = sum_{+-} (l/pi) (gamma/2) / ((gamma/2)^2 + (w - w0)^2).
struct LorentzianDoubletFit {
  double l_minus = 0.0, l_plus = 0.0;
  double omega_minus = 0.0, omega_plus = 0.0;
  double gamma_minus = 0.0, gamma_plus = 0.0;  // full widths
  double residual = 0.0;                       // relative RMS misfit
};

/// Least-squares doublet fit. `detector_gamma` is subtracted from the fitted
/// widths (a Lorentzian filter broadens each line by exactly its width).
LorentzianDoubletFit fit_lorentzian_doublet(std::span<const double> omega, std::span<const double> spectrum,
                                            const LorentzianDoubletFit& initial, double detector_gamma = 0.0);

/// Dressed-mode positions and widths of two linearly coupled modes
/// (eigenvalues of the non-Hermitian 2x2 coupling matrix), equal weights.
LorentzianDoubletFit doublet_initial_guess(const CoupledParams& p);

FeatureLine indistinguishability_diagonal();
FeatureLine hyperbola_resonant(double g, double omega_a = 0.0);
/// Returns nullopt (and a warning) when the fit residual exceeds max_residual.
std::optional<FeatureLine> hyperbola_detuned(const LorentzianDoubletFit& fit, double g, double linewidth_a,
                                             double linewidth_b, double omega_a, double omega_b,
                                             std::string* warning = nullptr, double max_residual = 0.05);

struct HyperbolaFit {
  double center = 0.0;
  double vertex = 0.0;
};
/// Least squares for (w1 - c)(w2 - c) = -V^2 through sampled dip locations.
HyperbolaFit fit_hyperbola(std::span<const std::pair<double, double>> points);

/// Leapfrog antidiagonals sum(w_i) = N w_a +- (E_n -+ E_{n-N}) for each n >= N.
std::vector<FeatureLine> leapfrog_lines(const DressedLadder& ladder, int photons, std::span<const int> rungs,
                                        double omega_a = 0.0);
/// Polariton-to-virtual-state diagonals omega1 - omega2 = +-2 E_n.
std::vector<FeatureLine> polariton_virtual_diagonals(const DressedLadder& ladder, std::span<const int> rungs);
/// Vertical and horizontal lines at the first-rung polaritons omega_a +- R.
std::vector<FeatureLine> first_rung_grid(const DressedLadder& ladder, double omega_a = 0.0);

/// Leapfrog triplet, sideband gridlines and (qualitative) interference circles
/// of a Mollow triplet with sidebands at +-omega_plus around the laser.
std::vector<FeatureLine> mollow_features(double omega_plus);
std::vector<FeatureLine> mollow_features(const DrivenTlsParams& p);
std::vector<FeatureLine> mollow_features(const JcLasingParams& p);

/// Radius of a ring of minima around `center`: median over directions of the
/// radius minimizing g2_at along the ray, searched in [r_lo, r_hi].
double fit_circle_radius(const std::function<double(double, double)>& g2_at, double center1, double center2,
                         double r_lo, double r_hi, int directions = 16, int samples = 81);

// ---------------------------------------------------------------------------
// Coherent/incoherent split of the filtered spectrum at omega.

struct SpectrumSplit {
  double coherent = 0.0;
  double incoherent = 0.0;
};

/// Filtered intensity at omega split into the part from the mean field <O>
/// and the part from the fluctuation O - <O>.
SpectrumSplit coherent_split(const Superoperator& m, const SteadyState& ss, const Operator& detect, double omega,
                             double gamma);

struct GammaMinResult {
  double gamma_min = 0.0;
  bool asymptotic = false;  // no crossing found; gamma_min holds the asymptote (or 0)
  double asymptote = 0.0;
};

/// Filter linewidth at which the coherent and incoherent parts of the filtered
/// spectrum at omega = 0 are equal, by bisection to 1e-4 relative.
GammaMinResult gamma_min(const Superoperator& m, const SteadyState& ss, const Operator& detect,
                         double fallback_asymptote = 0.0);
GammaMinResult gamma_min(const DrivenTlsParams& p);

}  // namespace tps
