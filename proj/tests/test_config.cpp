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

#include <filesystem>
#include <fstream>

#include "tps/app/config.hpp"
#include "test_support.hpp"

using namespace tps;
using namespace tps::app;
using nlohmann::json;
using testing::code_of;

namespace {

json minimal(const char* model) { return json{{"schema_version", 1}, {"model", {{"name", model}}}}; }

}  // namespace

TEST_CASE("defaults are filled in for a minimal document") {
  const RunConfig c = parse_config(minimal("single"));
  CHECK(c.model == ModelName::single);
  CHECK(c.gamma1 == 1.0);
  CHECK(c.omega1.count == 101);
  CHECK(c.omega2.min == c.omega1.min);
  CHECK(c.backend == BackendChoice::semianalytic);
  CHECK(c.workers == 1);
  CHECK(c.truncation_guard);
  CHECK(c.epsilon() == doctest::Approx(1e-3));
}

TEST_CASE("every model round-trips through JSON") {
  for (const char* name : {"single", "coupled", "driven_tls", "jc_lasing"}) {
    json doc = minimal(name);
    doc["filter"] = {{"gamma1", 0.3}, {"gamma2", 0.4}};
    doc["grid"] = {{"omega1", {{"min", -1.0}, {"max", 2.0}, {"count", 7}}}};
    doc["workers"] = 3;
    const RunConfig c = parse_config(doc);
    const json once = to_json(c);
    CHECK(to_json(parse_config(once)) == once);
    CHECK(once["model"]["name"] == name);
  }
}

TEST_CASE("coupled defaults and truncation overrides") {
  json doc = minimal("coupled");
  doc["truncation"] = {{"mode1", 9}};
  const RunConfig c = parse_config(doc);
  CHECK(std::get<Bosonic>(c.coupled.mode1.kind).n_max == 9);
  CHECK(c.coupled.mode1.gamma == doctest::Approx(0.1));
  CHECK(c.coupled.mode2.gamma == doctest::Approx(0.001));
  CHECK(has_bosonic_mode(c));
  CHECK(build_system(c).space.dim() == 20);
  const RunConfig raised = with_raised_truncation(c, 5);
  CHECK(std::get<Bosonic>(raised.coupled.mode1.kind).n_max == 14);
}

TEST_CASE("unknown keys are hard errors") {
  json doc = minimal("single");
  doc["worker"] = 2;  // typo
  CHECK(code_of([&] { parse_config(doc); }) == ErrorCode::config);
  doc = minimal("single");
  doc["model"]["mode"] = {{"gama", 1.0}};
  CHECK(code_of([&] { parse_config(doc); }) == ErrorCode::config);
  doc = minimal("single");
  doc["grid"] = {{"omega1", {{"min", 0.0}, {"max", 1.0}, {"step", 0.1}}}};
  CHECK(code_of([&] { parse_config(doc); }) == ErrorCode::config);
}

TEST_CASE("schema and value errors") {
  CHECK(code_of([] { parse_config(json{{"model", {{"name", "single"}}}}); }) == ErrorCode::config);
  CHECK(code_of([] { parse_config(json{{"schema_version", 2}, {"model", {{"name", "single"}}}}); }) ==
        ErrorCode::config);
  CHECK(code_of([] { parse_config(minimal("laser")); }) == ErrorCode::config);
  json doc = minimal("single");
  doc["grid"] = {{"omega1", {{"min", 1.0}, {"max", 1.0}, {"count", 5}}}};
  CHECK(code_of([&] { parse_config(doc); }) == ErrorCode::config);
  doc = minimal("single");
  doc["grid"] = {{"omega1", {{"count", 1}}}};
  CHECK(code_of([&] { parse_config(doc); }) == ErrorCode::config);
  doc = minimal("single");
  doc["filter"] = {{"gamma", -1.0}};
  CHECK(code_of([&] { parse_config(doc); }) == ErrorCode::config);
  doc = minimal("single");
  doc["detect"] = "mode2";
  CHECK(code_of([&] { parse_config(doc); }) == ErrorCode::config);
  doc = minimal("single");
  doc["model"]["mode"] = {{"kind", "two_level"}, {"n_max", 3}};
  CHECK(code_of([&] { parse_config(doc); }) == ErrorCode::config);
  doc = minimal("single");
  doc["workers"] = "four";
  CHECK(code_of([&] { parse_config(doc); }) == ErrorCode::config);
}

TEST_CASE("sensor backend size guard is checked at parse time") {
  json doc = minimal("coupled");
  doc["backend"] = "sensors";
  doc["model"]["mode1"] = {{"n_max", 70}};  // D = 142, 4 D = 568
  CHECK(code_of([&] { parse_config(doc); }) == ErrorCode::size_guard);
  doc["model"]["mode1"]["n_max"] = 60;  // 4 D = 488
  CHECK(parse_config(doc).backend == BackendChoice::sensors);
}

TEST_CASE("invalid model parameters are config errors") {
  json doc = minimal("jc_lasing");
  doc["model"]["n_max"] = 20;  // too small for the predicted population
  CHECK(code_of([&] { parse_config(doc); }) == ErrorCode::config);
  doc = minimal("single");
  doc["model"]["mode"] = {{"kind", "bosonic"}, {"gamma", 1.0}, {"pump", 1.5}};
  CHECK(code_of([&] { parse_config(doc); }) == ErrorCode::config);
}

TEST_CASE("overrides use dotted paths and JSON values") {
  json doc = minimal("coupled");
  doc = apply_override(doc, "model.g=0.25");
  doc = apply_override(doc, "model.mode2.kind=bosonic");
  doc = apply_override(doc, "/output=runs/a");
  const RunConfig c = parse_config(doc);
  CHECK(c.coupled.g == 0.25);
  CHECK(is_bosonic(c.coupled.mode2.kind));
  CHECK(c.output == "runs/a");
  CHECK(code_of([&] { apply_override(doc, "no-equals-sign"); }) == ErrorCode::config);
}

TEST_CASE("loading from disk") {
  const auto path = std::filesystem::temp_directory_path() / "tps_test_config.json";
  {
    std::ofstream out(path);
    out << minimal("driven_tls").dump();
  }
  CHECK(load_config(path).model == ModelName::driven_tls);
  {
    std::ofstream out(path);
    out << "{ not json";
  }
  CHECK(code_of([&] { load_config(path); }) == ErrorCode::config);
  std::filesystem::remove(path);
  CHECK(code_of([&] { load_config(path); }) == ErrorCode::io);
}

TEST_CASE("units and frame are reported per model") {
  CHECK_FALSE(units_of(parse_config(minimal("single"))).empty());
  CHECK_FALSE(frame_of(parse_config(minimal("driven_tls"))).empty());
}
