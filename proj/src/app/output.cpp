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

#include "tps/app/output.hpp"

#include <cstdio>
#include <fstream>

#include "tps/error.hpp"

namespace tps::app {

using nlohmann::json;

namespace {

std::filesystem::path with_suffix(const RunConfig& cfg, const std::string& suffix) {
  return std::filesystem::path(cfg.output + suffix);
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  if (ec) throw Error(ErrorCode::io, "cannot create " + path.parent_path().string() + ": " + ec.message());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::io, "cannot write " + path.string());
  return out;
}

void write_meta(const RunConfig& cfg, const json& meta) {
  auto out = open_for_write(with_suffix(cfg, ".meta"));
  out << meta.dump(2) << '\n';
  if (!out) throw Error(ErrorCode::io, "failed writing metadata for " + cfg.output);
}

json model_block(const RunConfig& cfg) {
  json m;
  m["name"] = to_string(cfg.model);
  m["units"] = units_of(cfg);
  m["frame_origin"] = frame_of(cfg);
  m["detect"] = cfg.detect_mode == 1 ? "mode1" : "mode2";
  if (cfg.model == ModelName::jc_lasing) {
    const JcLasingParams& p = cfg.lasing;
    m["predicted_cavity_population"] = p.predicted_population();
    m["predicted_laser_linewidth"] = p.predicted_laser_linewidth();
    m["predicted_sideband"] = p.predicted_sideband();
    if (p.gamma_a == JcLasingParams{}.gamma_a)
      m["gamma_a_note"] = "default 0.105 g, derived from p_sigma = 2 g and a target population of 9.5";
  }
  if (cfg.model == ModelName::driven_tls) m["sideband"] = cfg.driven.sideband();
  return m;
}

json truncation_block(Index dim, const TruncationCheck& t) {
  json j;
  j["hilbert_dim"] = dim;
  j["guard"] = {{"performed", t.performed},
                {"delta", t.delta},
                {"samples", t.samples},
                {"max_rel_change", t.max_rel_change},
                {"tolerance", t.tolerance}};
  return j;
}

json base_meta(const RunConfig& cfg, const char* kind) {
  json j;
  j["artifact"] = "tps";
  j["version"] = kVersion;
  j["kind"] = kind;
  j["config"] = to_json(cfg);
  j["model"] = model_block(cfg);
  return j;
}

}  // namespace

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

json spectrum_meta(const RunConfig& cfg, const SpectrumResult& r) {
  json j = base_meta(cfg, "1ps");
  j["columns"] = kSpectrumHeader;
  j["filter_gamma"] = cfg.gamma1;
  j["truncation"] = truncation_block(r.hilbert_dim, r.truncation);
  j["residuals"] = {{"steady_state", r.steady_residual}};
  j["execution"] = {{"runtime_seconds", r.seconds}};
  return j;
}

json map_meta(const RunConfig& cfg, const MapResult& r) {
  json j = base_meta(cfg, "2ps");
  j["columns"] = kMapHeader;
  j["backend"] = to_string(cfg.backend);
  j["values_from"] = to_string(r.backend);
  j["truncation"] = truncation_block(r.hilbert_dim, r.truncation);
  json res = {{"steady_state", r.steady_residual}, {"max_imag_residue", r.max_imag_residue}, {"clamped_points", r.clamped}};
  if (r.max_backend_rel_diff) res["max_backend_rel_diff"] = *r.max_backend_rel_diff;
  if (r.max_epsilon_rel_diff) res["max_epsilon_rel_diff"] = *r.max_epsilon_rel_diff;
  j["residuals"] = res;
  j["execution"] = {{"workers", r.workers}, {"runtime_seconds", r.seconds}};
  return j;
}

json features_meta(const RunConfig& cfg, const FeaturesResult& r) {
  json j = base_meta(cfg, "features");
  j["columns"] = kFeaturesHeader;
  j["warnings"] = r.warnings;
  return j;
}

std::filesystem::path write_spectrum(const RunConfig& cfg, const SpectrumResult& r) {
  const auto path = with_suffix(cfg, ".1ps.csv");
  auto out = open_for_write(path);
  out << kSpectrumHeader << '\n';
  for (std::size_t i = 0; i < r.omega.size(); ++i)
    out << format_number(r.omega[i]) << ',' << format_number(r.intensity[i]) << '\n';
  if (!out) throw Error(ErrorCode::io, "failed writing " + path.string());
  write_meta(cfg, spectrum_meta(cfg, r));
  return path;
}

std::filesystem::path write_map(const RunConfig& cfg, const MapResult& r) {
  const auto path = with_suffix(cfg, ".2ps.csv");
  auto out = open_for_write(path);
  out << kMapHeader << '\n';
  for (int i = 0; i < r.omega1.count; ++i) {
    for (int j = 0; j < r.omega2.count; ++j) {
      const std::size_t k = static_cast<std::size_t>(i) * r.omega2.count + j;
      out << format_number(r.omega1.at(i)) << ',' << format_number(r.omega2.at(j)) << ',' << format_number(r.g2[k])
          << ',' << format_number(r.n1[k]) << ',' << format_number(r.n2[k]) << '\n';
    }
  }
  if (!out) throw Error(ErrorCode::io, "failed writing " + path.string());
  write_meta(cfg, map_meta(cfg, r));
  return path;
}

std::filesystem::path write_features(const RunConfig& cfg, const FeaturesResult& r) {
  const auto path = with_suffix(cfg, ".features.csv");
  auto out = open_for_write(path);
  out << kFeaturesHeader << '\n';
  for (const auto& l : r.lines) {
    std::string provenance = l.provenance;
    for (char& ch : provenance)
      if (ch == ',' || ch == '\n') ch = ';';
    out << to_string(l.kind) << ',' << format_number(l.a) << ',' << format_number(l.b) << ',' << format_number(l.c)
        << ',' << to_string(l.sign) << ',' << provenance << ',' << (l.qualitative ? "true" : "false") << '\n';
  }
  if (!out) throw Error(ErrorCode::io, "failed writing " + path.string());
  write_meta(cfg, features_meta(cfg, r));
  return path;
}

json point_json(const PointResult& r) {
  auto result = [](const TwoPhotonResult& t) {
    json j = {{"g2", t.g2}, {"n1", t.n1}, {"n2", t.n2}, {"n12", t.n12}, {"clamped", t.diagnostics.clamped}};
    if (t.diagnostics.epsilon_rel_diff) j["epsilon_rel_diff"] = *t.diagnostics.epsilon_rel_diff;
    if (t.diagnostics.epsilon) j["epsilon"] = *t.diagnostics.epsilon;
    return j;
  };
  json j = {{"omega1", r.omega1}, {"omega2", r.omega2}};
  if (r.semianalytic) j["semianalytic"] = result(*r.semianalytic);
  if (r.sensors) j["sensors"] = result(*r.sensors);
  if (r.backend_rel_diff) j["backend_rel_diff"] = *r.backend_rel_diff;
  if (r.truncation.performed) j["truncation_rel_change"] = r.truncation.max_rel_change;
  return j;
}

}  // namespace tps::app
