#pragma once

#include <cmath>
#include <fstream>
#include <optional>
#include <string>

#include <json.hpp>

#include "plr/fields.hpp"
#include "plr/presets.hpp"
#include "plr/soliton.hpp"

namespace plr {

/// One batch run: parameter set, evaluation window, resolution, spectral
/// parameter and verification step.
struct RunConfig {
  SolitonParams params;
  std::string preset_name;  // empty when params came in explicitly
  GridSpec grid{-5.0, 5.0, -5.0, 5.0, 101, 101};
  GridSpec verify_grid{-5.0, 5.0, -5.0, 5.0, 11, 11};
  double lambda = 1.0;
  double h = 1e-3;
  double t_fixed = 0.0;
  double perturb = 0.0;
  std::string out_dir = ".";
};

/// Accepts {"re": x, "im": y} or {"mod": m, "arg_deg": d}.
inline Complex parse_complex(const nlohmann::json& j) {
  if (j.is_number()) return Complex{j.get<double>(), 0.0};
  if (j.is_object()) {
    if (j.contains("re") || j.contains("im"))
      return Complex{j.value("re", 0.0), j.value("im", 0.0)};
    if (j.contains("mod") || j.contains("arg_deg")) {
      const double pi = std::acos(-1.0);
      return std::polar(j.value("mod", 1.0), j.value("arg_deg", 0.0) * pi / 180.0);
    }
  }
  throw ValidationError("complex number must be {re, im} or {mod, arg_deg}: " + j.dump());
}

inline SolitonParams parse_params(const nlohmann::json& j) {
  SolitonParams p;
  if (!j.contains("alpha") || !j.contains("c"))
    throw ValidationError("params must list 'alpha' and 'c'");
  for (const auto& v : j.at("alpha")) p.alpha.push_back(parse_complex(v));
  for (const auto& v : j.at("c")) p.c.push_back(parse_complex(v));
  p.n = static_cast<int>(p.alpha.size());
  p.v0 = j.value("v0", 0.0);
  validate(p);
  return p;
}

inline void parse_range(const nlohmann::json& j, double& lo, double& hi) {
  if (!j.is_array() || j.size() != 2) throw ValidationError("range must be [lo, hi]");
  lo = j[0].get<double>();
  hi = j[1].get<double>();
  if (!(hi > lo)) throw ValidationError("range must satisfy lo < hi");
}

/// Loads a config document; fields missing from the JSON keep their
/// defaults. A preset name may be supplied here or via the CLI flag.
inline RunConfig parse_config(const nlohmann::json& j) {
  RunConfig cfg;
  if (j.contains("preset")) {
    cfg.preset_name = j.at("preset").get<std::string>();
    cfg.params = preset(cfg.preset_name);
  }
  if (j.contains("params")) {
    cfg.params = parse_params(j.at("params"));
    cfg.preset_name.clear();
  }
  if (j.contains("sRange")) parse_range(j.at("sRange"), cfg.grid.s_min, cfg.grid.s_max);
  if (j.contains("tRange")) parse_range(j.at("tRange"), cfg.grid.t_min, cfg.grid.t_max);
  cfg.grid.ns = j.value("nS", cfg.grid.ns);
  cfg.grid.nt = j.value("nT", cfg.grid.nt);
  if (j.contains("verifySRange"))
    parse_range(j.at("verifySRange"), cfg.verify_grid.s_min, cfg.verify_grid.s_max);
  if (j.contains("verifyTRange"))
    parse_range(j.at("verifyTRange"), cfg.verify_grid.t_min, cfg.verify_grid.t_max);
  cfg.verify_grid.ns = j.value("verifyNS", cfg.verify_grid.ns);
  cfg.verify_grid.nt = j.value("verifyNT", cfg.verify_grid.nt);
  cfg.lambda = j.value("lambda", cfg.lambda);
  cfg.h = j.value("h", cfg.h);
  cfg.t_fixed = j.value("t", cfg.t_fixed);
  cfg.out_dir = j.value("outDir", cfg.out_dir);
  if (cfg.grid.ns < 2 || cfg.grid.nt < 2 || cfg.verify_grid.ns < 2 || cfg.verify_grid.nt < 2)
    throw ValidationError("grid counts must be at least 2");
  if (!(cfg.lambda > 0.0)) throw ValidationError("lambda must be positive");
  if (!(cfg.h > 0.0)) throw ValidationError("h must be positive");
  return cfg;
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  nlohmann::json j;
  in >> j;
  return parse_config(j);
}

/// Round-trip partner of parse_params.
inline nlohmann::json params_to_json(const SolitonParams& p) {
  nlohmann::json alpha = nlohmann::json::array();
  nlohmann::json c = nlohmann::json::array();
  for (const auto& v : p.alpha) alpha.push_back({{"re", v.real()}, {"im", v.imag()}});
  for (const auto& v : p.c) c.push_back({{"re", v.real()}, {"im", v.imag()}});
  nlohmann::json j{{"alpha", alpha}, {"c", c}};
  if (p.v0 != 0.0) j["v0"] = p.v0;
  return j;
}

}  // namespace plr
