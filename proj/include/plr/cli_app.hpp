#pragma once

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "plr/config.hpp"
#include "plr/export_io.hpp"
#include "plr/mesh.hpp"
#include "plr/verify.hpp"

namespace plr::cli {

// Exit codes: 0 success, 1 validation/usage error, 2 verification failure,
// 3 I/O error.
inline constexpr int kOk = 0;
inline constexpr int kValidationError = 1;
inline constexpr int kVerificationFailure = 2;
inline constexpr int kIoError = 3;

struct CommonOptions {
  std::string config_path;
  std::string preset_name;
  std::string out_dir;
  double h = -1.0;       // negative: keep config value
  double lambda = -1.0;  // negative: keep config value
};

inline RunConfig resolve_config(const CommonOptions& opts) {
  RunConfig cfg;
  bool have_params = false;
  if (!opts.config_path.empty()) {
    cfg = load_config(opts.config_path);
    have_params = cfg.params.n > 0;
  }
  if (!opts.preset_name.empty()) {
    cfg.params = preset(opts.preset_name);
    cfg.preset_name = opts.preset_name;
    have_params = true;
  }
  if (!have_params)
    throw ValidationError("no parameters given: use --preset or a config with params/preset");
  if (!opts.out_dir.empty()) cfg.out_dir = opts.out_dir;
  if (opts.h > 0.0) cfg.h = opts.h;
  if (opts.lambda > 0.0) cfg.lambda = opts.lambda;
  validate(cfg.params);
  return cfg;
}

inline std::filesystem::path ensure_out_dir(const RunConfig& cfg) {
  std::filesystem::path dir(cfg.out_dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline int cmd_params_check(const RunConfig& cfg, std::ostream& os) {
  os << "parameters: N = " << cfg.params.n;
  if (!cfg.preset_name.empty()) os << " (preset " << cfg.preset_name << ")";
  os << "\n";
  for (int j = 0; j < cfg.params.n; ++j) {
    os << "  alpha_" << (j + 1) << " = " << fmt17(cfg.params.alpha[j].real()) << " + "
       << fmt17(cfg.params.alpha[j].imag()) << "i,  c_" << (j + 1) << " = "
       << fmt17(cfg.params.c[j].real()) << " + " << fmt17(cfg.params.c[j].imag()) << "i\n";
  }
  os << "valid: yes\n";
  os << "config form: " << params_to_json(cfg.params).dump() << "\n";
  const auto sg = is_sine_gordon(cfg.params);
  os << "sine-Gordon parameter condition: " << (sg.holds ? "yes" : "no");
  if (sg.holds) {
    os << " (sigma:";
    for (int v : sg.sigma) os << " " << (v + 1);
    os << ")";
  }
  os << "\n";
  return kOk;
}

inline int cmd_solve(const RunConfig& cfg, std::ostream& os) {
  const auto dir = ensure_out_dir(cfg);
  const auto path = dir / "solve.csv";
  write_solve_csv(path, cfg.params, cfg.grid);
  os << "wrote " << path.string() << " (" << (cfg.grid.ns * cfg.grid.nt) << " rows)\n";
  return kOk;
}

inline int cmd_curve(const RunConfig& cfg, std::ostream& os) {
  const auto dir = ensure_out_dir(cfg);
  const auto path = dir / "curve.csv";
  write_curve_csv(path, cfg.params, cfg.grid, cfg.t_fixed);
  os << "wrote " << path.string() << " (t = " << fmt17(cfg.t_fixed) << ", " << cfg.grid.ns
     << " samples)\n";
  return kOk;
}

inline int cmd_surface(const RunConfig& cfg, std::ostream& os) {
  const auto dir = ensure_out_dir(cfg);
  const auto mesh = swept_surface(cfg.params, cfg.grid, true);
  write_surface_obj(dir / "surface.obj", mesh);
  write_surface_csv(dir / "surface.csv", mesh);
  os << "wrote " << (dir / "surface.obj").string() << " and .csv (" << mesh.vertices.size()
     << " vertices, " << mesh.quads.size() << " faces, " << mesh.dropped_faces
     << " dropped)\n";
  return kOk;
}

inline int cmd_verify(const RunConfig& cfg, std::ostream& os) {
  const auto dir = ensure_out_dir(cfg);
  const auto reports = run_suite(cfg.params, cfg.verify_grid, cfg.h, cfg.perturb);
  write_report_json(dir / "report.json", reports);
  bool ok = true;
  for (const auto& r : reports) {
    os << "  [" << to_string(r.status) << "] " << r.name << "  max_residual=" << r.max_residual;
    if (r.convergence_ratio) os << "  ratio=" << *r.convergence_ratio;
    if (r.skipped_fraction > 0.0) os << "  skipped=" << r.skipped_fraction;
    if (!r.reason.empty()) os << "  (" << r.reason << ")";
    os << "\n";
    ok = ok && r.status != CheckStatus::fail;
  }
  os << "wrote " << (dir / "report.json").string() << "\n";
  return ok ? kOk : kVerificationFailure;
}

inline int run(std::vector<std::string> args, std::ostream& os = std::cout,
               std::ostream& err = std::cerr) {
  CLI::App app{"Date N-soliton solutions of the Pohlmeyer-Lund-Regge equation and the "
               "space curves they evolve"};
  app.set_help_flag("--help", "print usage");  // frees -h / --h for the stencil step
  app.require_subcommand(1);

  CommonOptions opts;
  app.add_option("--config", opts.config_path, "JSON config file");
  app.add_option("--preset", opts.preset_name, "parameter preset (A-F, plr4, sg4)");
  app.add_option("--out", opts.out_dir, "output directory");
  app.add_option("--h", opts.h, "verification stencil step");
  app.add_option("--lambda", opts.lambda, "spectral parameter (> 0)");

  auto* params_cmd = app.add_subcommand("params", "parameter utilities");
  params_cmd->require_subcommand(1);
  params_cmd->fallthrough();
  auto* check_cmd = params_cmd->add_subcommand("check", "validate parameters");
  check_cmd->fallthrough();
  auto* solve_cmd = app.add_subcommand("solve", "evaluate solution fields on the grid");
  solve_cmd->fallthrough();
  auto* curve_cmd = app.add_subcommand("curve", "export one curve slice");
  curve_cmd->fallthrough();
  double t_flag = 0.0;
  curve_cmd->add_option("--t", t_flag, "evolution parameter of the slice");
  auto* surface_cmd = app.add_subcommand("surface", "export the swept surface");
  surface_cmd->fallthrough();
  auto* verify_cmd = app.add_subcommand("verify", "run the residual suite");
  verify_cmd->fallthrough();
  double perturb = 0.0;
  verify_cmd->add_option("--perturb", perturb, "inject a non-solution perturbation");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      os << app.help();
      return kOk;
    }
    err << "usage error: " << e.what() << "\n";
    return kValidationError;
  }

  try {
    RunConfig cfg = resolve_config(opts);
    if (curve_cmd->count("--t")) cfg.t_fixed = t_flag;
    cfg.perturb = perturb;
    if (check_cmd->parsed()) return cmd_params_check(cfg, os);
    if (solve_cmd->parsed()) return cmd_solve(cfg, os);
    if (curve_cmd->parsed()) return cmd_curve(cfg, os);
    if (surface_cmd->parsed()) return cmd_surface(cfg, os);
    if (verify_cmd->parsed()) return cmd_verify(cfg, os);
    err << "no subcommand\n";
    return kValidationError;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << "\n";
    return kValidationError;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "I/O error: " << e.what() << "\n";
    return kIoError;
  } catch (const std::runtime_error& e) {
    const std::string what = e.what();
    if (what.find("cannot open") != std::string::npos ||
        what.find("write failed") != std::string::npos) {
      err << "I/O error: " << what << "\n";
      return kIoError;
    }
    err << "error: " << what << "\n";
    return kValidationError;
  }
}

}  // namespace plr::cli
