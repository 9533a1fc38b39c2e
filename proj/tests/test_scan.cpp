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

#include "tps/app/scan.hpp"
#include "tps/features.hpp"
#include "test_support.hpp"

using namespace tps;
using namespace tps::app;
using nlohmann::json;

namespace {

RunConfig jc_linear(int count) {
  return parse_config(json{{"schema_version", 1},
                           {"model", {{"name", "coupled"}, {"mode1", {{"n_max", 4}}}}},
                           {"filter", {{"gamma", 0.1}}},
                           {"grid", {{"omega1", {{"min", -2.0}, {"max", 2.0}, {"count", count}}}}}});
}

}  // namespace

TEST_CASE("maps are symmetric under axis swap for equal filters") {
  const MapResult m = run_map(jc_linear(9));
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j) CHECK(std::abs(m.at(i, j) - m.at(j, i)) <= 1e-10 * std::abs(m.at(i, j)));
  CHECK(m.truncation.performed);
  CHECK(m.truncation.max_rel_change < m.truncation.tolerance);
}

TEST_CASE("worker count does not change results") {
  RunConfig cfg = jc_linear(7);
  const MapResult one = run_map(cfg);
  cfg.workers = 3;
  const MapResult three = run_map(cfg);
  CHECK(three.workers == 3);
  CHECK(one.g2 == three.g2);
  CHECK(one.n1 == three.n1);
}

TEST_CASE("map agrees with point evaluation and the sensor backend") {
  RunConfig cfg = jc_linear(5);
  cfg.backend = BackendChoice::both;
  const MapResult m = run_map(cfg);
  REQUIRE(m.max_backend_rel_diff);
  CHECK(*m.max_backend_rel_diff < 1e-3);
  const PointResult p = run_point(cfg, cfg.omega1.at(1), cfg.omega2.at(3));
  REQUIRE(p.semianalytic);
  CHECK(p.semianalytic->g2 == doctest::Approx(m.at(1, 3)).epsilon(1e-12));
}

TEST_CASE("a too-small truncation trips the guard") {
  RunConfig cfg = parse_config(json{{"schema_version", 1},
                                    {"model",
                                     {{"name", "single"},
                                      {"mode", {{"kind", "bosonic"}, {"n_max", 3}, {"gamma", 1.0}, {"pump", 0.5}}}}},
                                    {"grid", {{"omega1", {{"count", 5}}}}}});
  CHECK(testing::code_of([&] { run_map(cfg); }) == ErrorCode::truncation_guard);
  cfg.truncation_guard = false;
  CHECK_FALSE(run_map(cfg).truncation.performed);
}

TEST_CASE("TLS spectrum peaks at the emitter frequency") {
  RunConfig cfg = parse_config(json{{"schema_version", 1},
                                    {"model", {{"name", "single"}, {"mode", {{"omega", 0.5}, {"pump", 0.1}}}}},
                                    {"spectrum", {{"min", -2.0}, {"max", 3.0}, {"count", 51}}}});
  const SpectrumResult s = run_spectrum(cfg);
  const auto peak = std::max_element(s.intensity.begin(), s.intensity.end()) - s.intensity.begin();
  CHECK(s.omega[peak] == doctest::Approx(0.5));
}

TEST_CASE("feature sets per model") {
  auto kinds = [](const FeaturesResult& r, FeatureKind k) {
    return std::count_if(r.lines.begin(), r.lines.end(), [&](const FeatureLine& l) { return l.kind == k; });
  };
  const FeaturesResult jc = run_features(jc_linear(5));
  CHECK(kinds(jc, FeatureKind::diagonal) >= 1);
  CHECK(kinds(jc, FeatureKind::antidiagonal) >= 2);
  CHECK(kinds(jc, FeatureKind::vertical) == 2);

  RunConfig hoho = jc_linear(5);
  hoho.coupled.mode2.kind = Bosonic{4};
  const FeaturesResult h = run_features(hoho);
  REQUIRE(kinds(h, FeatureKind::hyperbola) == 1);

  RunConfig driven = parse_config(json{{"schema_version", 1},
                                       {"model", {{"name", "driven_tls"}, {"omega_l", 10.0}}},
                                       {"filter", {{"gamma", 5.0}}}});
  const FeaturesResult d = run_features(driven);
  CHECK(kinds(d, FeatureKind::circle) == 2);
  CHECK(kinds(d, FeatureKind::antidiagonal) == 3);
}
