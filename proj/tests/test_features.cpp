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

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "tps/features.hpp"
#include "test_support.hpp"

using namespace tps;
using testing::Built;

TEST_CASE("closed-form two-photon spectra match the numerical chain") {
  const Built tls(make_single({TwoLevel{}, 0.0, 0.7, 0.3, 0.0}));
  const Built ho(make_single({Bosonic{25}, 0.0, 1.0, 0.2, 0.0}));
  for (auto [w1, w2, g] : {std::tuple{0.0, 0.0, 1.0}, {1.3, -0.4, 0.5}, {-2.0, 2.5, 2.0}, {0.2, 0.2, 0.1}}) {
    CHECK(closed_2ps_tls(w1, w2, g, 1.0) == doctest::Approx(tls.g2(w1, w2, g)).epsilon(1e-9));
    CHECK(closed_2ps_ho(w1, w2, g, 0.8) == doctest::Approx(ho.g2(w1, w2, g)).epsilon(1e-6));
  }
}

TEST_CASE("TLS landmarks") {
  CHECK(closed_2ps_tls(0.0, 0.0, 1.0, 1.0) == doctest::Approx(0.5));
  CHECK(tls_peak_g2(1.0, 1.0) == doctest::Approx(0.5));
  CHECK(tls_peak_g2(66.0, 1.0) > 0.01);
  CHECK(tls_peak_g2(67.0, 1.0) < 0.01);
  CHECK(tls_peak_g2(tls_peak_filter_ratio(0.01), 1.0) == doctest::Approx(0.01));

  const AntidiagonalMinimum mn = tls_antidiagonal_minimum();
  CHECK(mn.g2 == doctest::Approx(2.0 * (std::sqrt(2.0) - 1.0) / 5.0));
  CHECK(closed_2ps_tls(mn.omega, -mn.omega, 1.0, 1.0) == doctest::Approx(mn.g2).epsilon(1e-12));
  // Golden-section search along the antidiagonal as an independent locator.
  double a = 0.3, b = 1.5;
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  auto f = [](double w) { return closed_2ps_tls(w, -w, 1.0, 1.0); };
  while (b - a > 1e-9) {
    const double c = b - phi * (b - a), d = a + phi * (b - a);
    if (f(c) < f(d))
      b = d;
    else
      a = c;
  }
  CHECK(0.5 * (a + b) == doctest::Approx(mn.omega).epsilon(1e-6));
}

TEST_CASE("thermal diagonal and low-drive limit") {
  for (double w : {-1.0, 0.0, 2.0})
    for (double g : {0.1, 1.0, 5.0}) CHECK(closed_2ps_ho(w, w, g, 1.0) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(low_drive_g2(1.0, 1.0) == doctest::Approx(0.25));
  const Built weak(make_driven_tls({1e-3, 0.0, 1.0, 0.0}));
  CHECK(weak.g2(0.0, 0.0, 2.0) == doctest::Approx(low_drive_g2(2.0, 1.0)).epsilon(1e-4));
  CHECK(gamma_min_asymptote(1.0, 150.0) == doctest::Approx(1.0 / 90000.0));
}

TEST_CASE("antibunching region") {
  CHECK(antibunching_region(0.2, -1.5, 0.5, 1.0));
  CHECK_FALSE(antibunching_region(0.2, 0.3, 0.5, 1.0));   // within one filter width of the diagonal
  CHECK_FALSE(antibunching_region(3.0, -3.0, 0.5, 1.0));  // both tails
}

TEST_CASE("feature line residuals vanish on the line") {
  const FeatureLine hyp = hyperbola_resonant(1.5, 0.2);
  CHECK(hyp.kind == FeatureKind::hyperbola);
  CHECK(hyp.residual(0.2 + 2.0, 0.2 - 1.5 * 1.5 / 2.0) == doctest::Approx(0.0));
  const FeatureLine diag = indistinguishability_diagonal();
  CHECK(diag.sign == ExpectedSign::bunching);
  CHECK(diag.residual(0.7, 0.7) == 0.0);
  const FeatureLine circle{FeatureKind::circle, 1.0, 1.0, std::numbers::sqrt2, ExpectedSign::antibunching, "", true};
  CHECK(circle.residual(2.0, 0.0) == doctest::Approx(0.0));
  CHECK(circle.residual(0.0, 0.0) == doctest::Approx(0.0));
}

TEST_CASE("hyperbola fit recovers center and vertex") {
  std::vector<std::pair<double, double>> pts;
  for (double w1 = -4.0; w1 <= 6.0; w1 += 0.5)
    if (std::abs(w1 - 1.0) > 0.3) pts.emplace_back(w1, 1.0 - 0.64 / (w1 - 1.0));
  const HyperbolaFit h = fit_hyperbola(pts);
  CHECK(h.center == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(h.vertex == doctest::Approx(0.8).epsilon(1e-9));
}

TEST_CASE("Lorentzian doublet fit recovers synthetic parameters") {
  auto lor = [](double w, double weight, double c, double fwhm) {
    const double h = 0.5 * fwhm;
    return weight / std::numbers::pi * h / (h * h + (w - c) * (w - c));
  };
  const double detector = 0.1;
  std::vector<double> w, s;
  for (int i = 0; i <= 800; ++i) {
    w.push_back(-4.0 + 0.01 * i);
    // A Lorentzian seen through a Lorentzian detector is one with the widths added.
    s.push_back(lor(w.back(), 0.7, -1.1, 0.2 + detector) + lor(w.back(), 0.3, 0.9, 0.05 + detector));
  }
  LorentzianDoubletFit guess;
  guess.l_minus = guess.l_plus = 0.5;
  guess.omega_minus = -1.0;
  guess.omega_plus = 1.0;
  guess.gamma_minus = guess.gamma_plus = 0.1;
  const LorentzianDoubletFit fit = fit_lorentzian_doublet(w, s, guess, detector);
  CHECK(fit.omega_minus == doctest::Approx(-1.1).epsilon(1e-6));
  CHECK(fit.omega_plus == doctest::Approx(0.9).epsilon(1e-6));
  CHECK(fit.gamma_minus == doctest::Approx(0.2).epsilon(1e-4));
  CHECK(fit.gamma_plus == doctest::Approx(0.05).epsilon(1e-4));
  CHECK(fit.l_minus / fit.l_plus == doctest::Approx(0.7 / 0.3).epsilon(1e-3));
  CHECK(fit.residual < 1e-6);
}

TEST_CASE("doublet initial guess follows the coupled-mode eigenvalues") {
  CoupledParams p;
  p.mode1 = {Bosonic{3}, 0.0, 0.1, 0.0, 0.0};
  p.mode2 = {Bosonic{3}, 0.0, 0.1, 1e-4, 0.0};
  p.g = 1.0;
  const LorentzianDoubletFit g = doublet_initial_guess(p);
  CHECK(g.omega_minus == doctest::Approx(-1.0).epsilon(1e-3));
  CHECK(g.omega_plus == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("detuned hyperbola from a fit reduces to the resonant case") {
  LorentzianDoubletFit fit;
  fit.l_minus = fit.l_plus = 1.0;
  fit.omega_minus = -1.0;
  fit.omega_plus = 1.0;
  fit.gamma_minus = fit.gamma_plus = 0.05;
  std::string warning;
  const auto line = hyperbola_detuned(fit, 1.0, 0.05, 0.05, 0.0, 0.0, &warning);
  REQUIRE(line);
  CHECK(line->a == doctest::Approx(0.0).epsilon(1e-9));
  fit.residual = 0.5;
  CHECK_FALSE(hyperbola_detuned(fit, 1.0, 0.05, 0.05, 0.0, 0.0, &warning));
  CHECK_FALSE(warning.empty());
}

TEST_CASE("leapfrog, polariton and Mollow line sets") {
  const DressedLadder lad = ladder(1.0, 0.0, 0.0);
  const std::vector<int> rungs{2, 3};
  const auto lines = leapfrog_lines(lad, 2, rungs);
  auto has = [&](double v) {
    for (const auto& l : lines)
      if (std::abs(l.a - v) < 1e-12 && l.kind == FeatureKind::antidiagonal) return true;
    return false;
  };
  CHECK(has(std::sqrt(2.0)));
  CHECK(has(-std::sqrt(2.0)));
  CHECK(has(std::sqrt(3.0) - 1.0));
  CHECK(has(std::sqrt(3.0) + 1.0));
  CHECK(lines.size() == 6);  // n=2 gives E_2 twice, deduplicated

  const std::vector<int> one{1};
  const auto pol = polariton_virtual_diagonals(lad, one);
  REQUIRE(pol.size() == 2);
  CHECK(pol[0].a == doctest::Approx(2.0));
  CHECK(pol[0].sign == ExpectedSign::antibunching);
  CHECK(first_rung_grid(lad).size() == 4);

  const auto mollow = mollow_features(DrivenTlsParams{10.0, 0.0, 1.0, 0.0});
  int circles = 0;
  for (const auto& l : mollow)
    if (l.kind == FeatureKind::circle) {
      ++circles;
      CHECK(l.qualitative);
      CHECK(l.residual(l.a * 2.0, 0.0) == doctest::Approx(0.0).epsilon(1e-12));
    }
  CHECK(circles == 2);
}

TEST_CASE("coherent and incoherent parts add up to the filtered spectrum") {
  const Built b(make_driven_tls({2.0, 0.0, 1.0, 0.0}));
  for (double w : {0.0, 1.0, 4.0}) {
    const SpectrumSplit split = coherent_split(b.m, b.ss, b.sys.detect, w, 0.5);
    CHECK(split.coherent >= 0.0);
    CHECK(split.coherent + split.incoherent == doctest::Approx(b.spectrum(w, 0.5)).epsilon(1e-9));
  }
  const Built incoherent(make_single({TwoLevel{}, 0.0, 1.0, 0.5, 0.0}));
  CHECK(coherent_split(incoherent.m, incoherent.ss, incoherent.sys.detect, 0.0, 1.0).coherent ==
        doctest::Approx(0.0));
}

TEST_CASE("gamma_min of a strongly driven emitter approaches its asymptote") {
  const GammaMinResult r = gamma_min(DrivenTlsParams{30.0, 0.0, 1.0, 0.0});
  CHECK_FALSE(r.asymptotic);
  CHECK(r.gamma_min == doctest::Approx(r.asymptote).epsilon(0.2));
  CHECK(r.asymptote == doctest::Approx(gamma_min_asymptote(1.0, 30.0)));
}

TEST_CASE("circle radius fit on a synthetic ring") {
  auto ring = [](double w1, double w2) { return std::abs(std::hypot(w1 - 1.0, w2 - 1.0) - 1.2); };
  CHECK(fit_circle_radius(ring, 1.0, 1.0, 0.5, 2.0) == doctest::Approx(1.2).epsilon(0.02));
}
