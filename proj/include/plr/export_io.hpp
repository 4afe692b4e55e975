#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "plr/curve.hpp"
#include "plr/mesh.hpp"
#include "plr/soliton.hpp"
#include "plr/verify.hpp"

namespace plr {

/// Full double precision, 17 significant digits, locale-independent.
inline std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

/// Write-then-rename so a crashed run never leaves a half file behind.
inline void atomic_write(const std::filesystem::path& path, const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + tmp.string());
    out << content;
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

/// Grid evaluation of the solution fields:
/// s,t,re_a,im_a,u,v,re_q,im_q,gap. Rows with undefined v carry gap=1 and
/// an empty v column.
inline void write_solve_csv(const std::filesystem::path& path, const SolitonParams& p,
                            const GridSpec& grid) {
  std::string out = "s,t,re_a,im_a,u,v,re_q,im_q,gap\n";
  for (double t : grid.t_values())
    for (double s : grid.s_values()) {
      out += fmt17(s) + "," + fmt17(t) + ",";
      try {
        const auto f = solution_fields(p, s, t);
        out += fmt17(f.a.real()) + "," + fmt17(f.a.imag()) + "," + fmt17(f.u) + ",";
        out += f.v_defined ? fmt17(f.v) : std::string{};
        out += "," + fmt17(f.q.real()) + "," + fmt17(f.q.imag()) + ",";
        out += f.v_defined ? "0" : "1";
      } catch (const SingularityError&) {
        out += ",,,,,,1";
      }
      out += "\n";
    }
  atomic_write(path, out);
}

/// Single-t curve slice: s,x,y,z,kappa,tau with empty Frenet columns at
/// boundary samples and curvature gaps.
inline void write_curve_csv(const std::filesystem::path& path, const SolitonParams& p,
                            const GridSpec& grid, double t_fixed) {
  const auto s_values = grid.s_values();
  std::vector<Vec3> gamma;
  gamma.reserve(s_values.size());
  for (double s : s_values) gamma.push_back(nsoliton_curve(p, s, t_fixed));
  const auto fr = frenet_apparatus(s_values, gamma);
  std::string out = "s,x,y,z,kappa,tau\n";
  for (std::size_t i = 0; i < s_values.size(); ++i) {
    out += fmt17(s_values[i]) + "," + fmt17(gamma[i].x) + "," + fmt17(gamma[i].y) + "," +
           fmt17(gamma[i].z) + ",";
    if (fr.valid[i])
      out += fmt17(fr.kappa[i]) + "," + fmt17(fr.tau[i]);
    else
      out += ",";
    out += "\n";
  }
  atomic_write(path, out);
}

inline void write_surface_obj(const std::filesystem::path& path, const MeshExport& mesh) {
  std::string out;
  out.reserve(mesh.vertices.size() * 64);
  for (const auto& v : mesh.vertices)
    out += "v " + fmt17(v.x) + " " + fmt17(v.y) + " " + fmt17(v.z) + "\n";
  for (const auto& q : mesh.quads) {
    out += "f";
    for (int idx : q) out += " " + std::to_string(idx + 1);
    out += "\n";
  }
  atomic_write(path, out);
}

inline void write_surface_csv(const std::filesystem::path& path, const MeshExport& mesh) {
  const bool with_frenet = !mesh.kappa.empty();
  std::string out = with_frenet ? "s,t,x,y,z,kappa,tau\n" : "s,t,x,y,z\n";
  for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
    out += fmt17(mesh.s[i]) + "," + fmt17(mesh.t[i]) + "," + fmt17(mesh.vertices[i].x) + "," +
           fmt17(mesh.vertices[i].y) + "," + fmt17(mesh.vertices[i].z);
    if (with_frenet) {
      out += ",";
      if (mesh.frenet_valid[i])
        out += fmt17(mesh.kappa[i]) + "," + fmt17(mesh.tau[i]);
      else
        out += ",";
    }
    out += "\n";
  }
  atomic_write(path, out);
}

inline void write_report_json(const std::filesystem::path& path,
                              const std::vector<ResidualReport>& reports) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : reports) arr.push_back(to_json(r));
  atomic_write(path, arr.dump(2) + "\n");
}

}  // namespace plr
