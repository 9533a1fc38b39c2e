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

#include "tps/app/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "tps/error.hpp"

namespace tps::app {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& msg) { throw Error(ErrorCode::config, msg); }

// Reads an object key by key and rejects whatever was not read.
class Reader {
 public:
  Reader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) fail(where() + " must be an object");
  }

  bool has(const std::string& key) const { return j_.contains(key); }

  double number(const std::string& key, double fallback) {
    if (!take(key)) return fallback;
    const json& v = j_.at(key);
    if (!v.is_number()) fail(where(key) + " must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) fail(where(key) + " must be finite");
    return x;
  }

  int integer(const std::string& key, int fallback) {
    if (!take(key)) return fallback;
    const json& v = j_.at(key);
    if (!v.is_number_integer()) fail(where(key) + " must be an integer");
    return v.get<int>();
  }

  bool boolean(const std::string& key, bool fallback) {
    if (!take(key)) return fallback;
    const json& v = j_.at(key);
    if (!v.is_boolean()) fail(where(key) + " must be true or false");
    return v.get<bool>();
  }

  std::string string(const std::string& key, const std::string& fallback) {
    if (!take(key)) return fallback;
    const json& v = j_.at(key);
    if (!v.is_string()) fail(where(key) + " must be a string");
    return v.get<std::string>();
  }

  Reader object(const std::string& key) {
    take(key);
    return Reader(j_.at(key), where(key));
  }

  void finish() const {
    for (const auto& item : j_.items())
      if (!used_.count(item.key())) fail("unknown key " + where(item.key()));
  }

  std::string where(const std::string& key = "") const {
    const std::string p = path_.empty() ? "" : path_;
    return key.empty() ? (p.empty() ? "/" : p) : p + "/" + key;
  }

 private:
  bool take(const std::string& key) {
    used_.insert(key);
    return j_.contains(key) && !j_.at(key).is_null();
  }

  const json& j_;
  std::string path_;
  std::set<std::string> used_;
};

SingleModeParams read_mode(Reader r, const SingleModeParams& def) {
  SingleModeParams p = def;
  const std::string kind = r.string("kind", is_bosonic(def.kind) ? "bosonic" : "two_level");
  if (kind == "bosonic") {
    const int fallback = is_bosonic(def.kind) ? static_cast<int>(std::get<Bosonic>(def.kind).n_max) : 15;
    const int n_max = r.integer("n_max", fallback);
    if (n_max < 1) fail(r.where("n_max") + " must be at least 1");
    p.kind = Bosonic{n_max};
  } else if (kind == "two_level") {
    if (r.has("n_max")) fail(r.where("n_max") + " is only valid for bosonic modes");
    p.kind = TwoLevel{};
  } else {
    fail(r.where("kind") + " must be \"bosonic\" or \"two_level\"");
  }
  p.omega = r.number("omega", def.omega);
  p.gamma = r.number("gamma", def.gamma);
  p.pump = r.number("pump", def.pump);
  p.dephasing = r.number("dephasing", def.dephasing);
  r.finish();
  return p;
}

json mode_json(const SingleModeParams& p) {
  json j;
  if (is_bosonic(p.kind)) {
    j["kind"] = "bosonic";
    j["n_max"] = std::get<Bosonic>(p.kind).n_max;
  } else {
    j["kind"] = "two_level";
  }
  j["omega"] = p.omega;
  j["gamma"] = p.gamma;
  j["pump"] = p.pump;
  j["dephasing"] = p.dephasing;
  return j;
}

Axis read_axis(Reader r, const Axis& def) {
  Axis a;
  a.min = r.number("min", def.min);
  a.max = r.number("max", def.max);
  a.count = r.integer("count", def.count);
  r.finish();
  return a;
}

json axis_json(const Axis& a) { return {{"min", a.min}, {"max", a.max}, {"count", a.count}}; }

void raise_mode(SingleModeParams& p, int delta) {
  if (is_bosonic(p.kind)) p.kind = Bosonic{std::get<Bosonic>(p.kind).n_max + delta};
}

void set_n_max(SingleModeParams& p, int n_max, const std::string& where) {
  if (!is_bosonic(p.kind)) fail(where + " overrides the truncation of a two-level mode");
  if (n_max < 1) fail(where + " must be at least 1");
  p.kind = Bosonic{n_max};
}

}  // namespace

const char* to_string(ModelName m) {
  switch (m) {
    case ModelName::single: return "single";
    case ModelName::coupled: return "coupled";
    case ModelName::driven_tls: return "driven_tls";
    case ModelName::jc_lasing: return "jc_lasing";
  }
  return "unknown";
}

const char* to_string(BackendChoice b) {
  switch (b) {
    case BackendChoice::semianalytic: return "semianalytic";
    case BackendChoice::sensors: return "sensors";
    case BackendChoice::both: return "both";
  }
  return "unknown";
}

RunConfig parse_config(const json& doc) {
  Reader top(doc, "");
  RunConfig c;
  if (!top.has("schema_version")) fail("missing schema_version");
  c.schema_version = top.integer("schema_version", 0);
  if (c.schema_version != kSchemaVersion)
    fail("unsupported schema_version " + std::to_string(c.schema_version) + " (expected " +
         std::to_string(kSchemaVersion) + ")");

  if (!top.has("model")) fail("missing model");
  Reader model = top.object("model");
  const std::string name = model.string("name", "");
  if (name == "single") {
    c.model = ModelName::single;
    if (model.has("mode")) c.single = read_mode(model.object("mode"), c.single);
  } else if (name == "coupled") {
    c.model = ModelName::coupled;
    c.coupled.mode1 = SingleModeParams{Bosonic{5}, 0.0, 0.1, 0.0, 0.0};
    c.coupled.mode2 = SingleModeParams{TwoLevel{}, 0.0, 0.001, 1e-6, 0.0};
    if (model.has("mode1")) c.coupled.mode1 = read_mode(model.object("mode1"), c.coupled.mode1);
    if (model.has("mode2")) c.coupled.mode2 = read_mode(model.object("mode2"), c.coupled.mode2);
    c.coupled.g = model.number("g", c.coupled.g);
  } else if (name == "driven_tls") {
    c.model = ModelName::driven_tls;
    c.driven.omega_l = model.number("omega_l", c.driven.omega_l);
    c.driven.delta = model.number("delta", c.driven.delta);
    c.driven.gamma_sigma = model.number("gamma_sigma", c.driven.gamma_sigma);
    c.driven.pump = model.number("pump", c.driven.pump);
  } else if (name == "jc_lasing") {
    c.model = ModelName::jc_lasing;
    c.lasing.p_sigma = model.number("p_sigma", c.lasing.p_sigma);
    c.lasing.g = model.number("g", c.lasing.g);
    c.lasing.gamma_a = model.number("gamma_a", c.lasing.gamma_a);
    c.lasing.gamma_sigma = model.number("gamma_sigma", c.lasing.gamma_sigma);
    c.lasing.n_max = model.integer("n_max", c.lasing.n_max);
  } else {
    fail("/model/name must be one of single, coupled, driven_tls, jc_lasing");
  }
  model.finish();

  const std::string detect = top.string("detect", "mode1");
  if (detect == "mode1")
    c.detect_mode = 1;
  else if (detect == "mode2")
    c.detect_mode = 2;
  else
    fail("/detect must be \"mode1\" or \"mode2\"");

  if (top.has("filter")) {
    Reader f = top.object("filter");
    if (f.has("gamma")) {
      if (f.has("gamma1") || f.has("gamma2")) fail("/filter takes either gamma or gamma1/gamma2");
      c.gamma1 = c.gamma2 = f.number("gamma", 1.0);
    } else {
      c.gamma1 = f.number("gamma1", c.gamma1);
      c.gamma2 = f.number("gamma2", c.gamma1);
    }
    f.finish();
  }

  if (top.has("grid")) {
    Reader g = top.object("grid");
    if (g.has("omega1")) c.omega1 = read_axis(g.object("omega1"), c.omega1);
    c.omega2 = g.has("omega2") ? read_axis(g.object("omega2"), c.omega1) : c.omega1;
    g.finish();
  }
  if (top.has("spectrum")) c.spectrum = read_axis(top.object("spectrum"), c.spectrum);

  const std::string backend = top.string("backend", "semianalytic");
  if (backend == "semianalytic")
    c.backend = BackendChoice::semianalytic;
  else if (backend == "sensors")
    c.backend = BackendChoice::sensors;
  else if (backend == "both")
    c.backend = BackendChoice::both;
  else
    fail("/backend must be semianalytic, sensors or both");

  c.sensor_epsilon = top.number("sensor_epsilon", 0.0);

  if (top.has("truncation")) {
    Reader t = top.object("truncation");
    if (t.has("mode1")) {
      const int n = t.integer("mode1", 0);
      if (c.model == ModelName::single) set_n_max(c.single, n, "/truncation/mode1");
      else if (c.model == ModelName::coupled) set_n_max(c.coupled.mode1, n, "/truncation/mode1");
      else if (c.model == ModelName::jc_lasing) c.lasing.n_max = n;
      else fail("/truncation/mode1: model has no bosonic mode");
    }
    if (t.has("mode2")) {
      const int n = t.integer("mode2", 0);
      if (c.model == ModelName::coupled) set_n_max(c.coupled.mode2, n, "/truncation/mode2");
      else fail("/truncation/mode2: model has no bosonic second mode");
    }
    t.finish();
  }

  c.truncation_guard = top.boolean("truncation_guard", true);
  c.output = top.string("output", c.output);
  c.workers = top.integer("workers", 1);
  top.finish();
  c.validate();
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, "cannot open config " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    fail(path.string() + ": " + e.what());
  }
  return parse_config(doc);
}

json to_json(const RunConfig& c) {
  json j;
  j["schema_version"] = c.schema_version;
  json model;
  model["name"] = to_string(c.model);
  switch (c.model) {
    case ModelName::single: model["mode"] = mode_json(c.single); break;
    case ModelName::coupled:
      model["mode1"] = mode_json(c.coupled.mode1);
      model["mode2"] = mode_json(c.coupled.mode2);
      model["g"] = c.coupled.g;
      break;
    case ModelName::driven_tls:
      model["omega_l"] = c.driven.omega_l;
      model["delta"] = c.driven.delta;
      model["gamma_sigma"] = c.driven.gamma_sigma;
      model["pump"] = c.driven.pump;
      break;
    case ModelName::jc_lasing:
      model["p_sigma"] = c.lasing.p_sigma;
      model["g"] = c.lasing.g;
      model["gamma_a"] = c.lasing.gamma_a;
      model["gamma_sigma"] = c.lasing.gamma_sigma;
      model["n_max"] = c.lasing.n_max;
      break;
  }
  j["model"] = model;
  j["detect"] = c.detect_mode == 1 ? "mode1" : "mode2";
  j["filter"] = {{"gamma1", c.gamma1}, {"gamma2", c.gamma2}};
  j["grid"] = {{"omega1", axis_json(c.omega1)}, {"omega2", axis_json(c.omega2)}};
  j["spectrum"] = axis_json(c.spectrum);
  j["backend"] = to_string(c.backend);
  j["sensor_epsilon"] = c.epsilon();
  j["truncation_guard"] = c.truncation_guard;
  j["output"] = c.output;
  j["workers"] = c.workers;
  return j;
}

void RunConfig::validate() const {
  for (const Axis* a : {&omega1, &omega2, &spectrum}) {
    if (a->count < 2) fail("grid counts must be at least 2");
    if (!std::isfinite(a->min) || !std::isfinite(a->max) || !(a->max > a->min))
      fail("grid ranges must be finite with max > min");
  }
  if (!(gamma1 > 0.0) || !(gamma2 > 0.0)) fail("filter linewidths must be positive");
  if (workers < 1) fail("/workers must be at least 1");
  if (sensor_epsilon < 0.0) fail("/sensor_epsilon must be nonnegative");
  if (detect_mode == 2 && (model == ModelName::single || model == ModelName::driven_tls))
    fail("/detect: model " + std::string(to_string(model)) + " has a single mode");
  if (output.empty()) fail("/output must not be empty");
  OpenSystem sys;
  try {
    sys = build_system(*this);
  } catch (const Error& e) {
    fail(std::string("/model: ") + e.what());
  }
  if (backend != BackendChoice::semianalytic && 4 * sys.space.dim() > 512)
    throw Error(ErrorCode::size_guard, "sensor backend requires 4 * D <= 512, D = " + std::to_string(sys.space.dim()));
}

double RunConfig::epsilon() const { return sensor_epsilon > 0.0 ? sensor_epsilon : 1e-3 * std::min(gamma1, gamma2); }

json apply_override(json doc, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) fail("override must look like key=value: " + assignment);
  std::string key = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);
  if (key.front() != '/') {
    for (char& ch : key)
      if (ch == '.') ch = '/';
    key = "/" + key;
  }
  json value;
  try {
    value = json::parse(text);
  } catch (const json::parse_error&) {
    value = text;
  }
  try {
    doc[json::json_pointer(key)] = value;
  } catch (const json::exception& e) {
    fail("bad override " + assignment + ": " + e.what());
  }
  return doc;
}

bool has_bosonic_mode(const RunConfig& c) {
  switch (c.model) {
    case ModelName::single: return is_bosonic(c.single.kind);
    case ModelName::coupled: return is_bosonic(c.coupled.mode1.kind) || is_bosonic(c.coupled.mode2.kind);
    case ModelName::driven_tls: return false;
    case ModelName::jc_lasing: return true;
  }
  return false;
}

RunConfig with_raised_truncation(const RunConfig& cfg, int delta) {
  RunConfig c = cfg;
  raise_mode(c.single, delta);
  raise_mode(c.coupled.mode1, delta);
  raise_mode(c.coupled.mode2, delta);
  c.lasing.n_max += delta;
  return c;
}

OpenSystem build_system(const RunConfig& c) {
  OpenSystem sys;
  switch (c.model) {
    case ModelName::single: sys = make_single(c.single); break;
    case ModelName::coupled: sys = make_coupled(c.coupled); break;
    case ModelName::driven_tls: sys = make_driven_tls(c.driven); break;
    case ModelName::jc_lasing: sys = make_jc_lasing(c.lasing); break;
  }
  if (c.detect_mode == 2) {
    if (!sys.detect2) fail("model has no second mode to detect");
    sys.detect = *sys.detect2;
  }
  return sys;
}

std::string units_of(const RunConfig& c) {
  switch (c.model) {
    case ModelName::single: return "rates and frequencies in units of the mode decay rate scale (dimensionless)";
    case ModelName::coupled: return "rates and frequencies in units of the coupling g";
    case ModelName::driven_tls: return "rates and frequencies in units of gamma_sigma";
    case ModelName::jc_lasing: return "rates and frequencies in units of the coupling g";
  }
  return "";
}

std::string frame_of(const RunConfig& c) {
  switch (c.model) {
    case ModelName::single: return "omega = 0 is the rotating-frame origin; the mode sits at its configured omega";
    case ModelName::coupled: return "omega = 0 is the rotating-frame origin; modes sit at their configured omega";
    case ModelName::driven_tls: return "laser frame: omega = 0 is the laser frequency";
    case ModelName::jc_lasing: return "omega = 0 is the common cavity and emitter frequency";
  }
  return "";
}

}  // namespace tps::app
