#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "plr/curve.hpp"

namespace plr {

/// Quad mesh swept by the evolving curve over a (s, t) rectangle, with
/// per-vertex parameters and optional Frenet data. Degenerate samples are
/// kept as vertices but faces touching them are dropped and counted.
struct MeshExport {
  std::vector<Vec3> vertices;             // index (i_s, i_t) -> it * ns + is
  std::vector<std::array<int, 4>> quads;  // lattice adjacency, CCW in (s, t)
  std::vector<double> s, t;
  std::vector<double> kappa, tau;         // present when frenet requested
  std::vector<std::uint8_t> frenet_valid;
  int ns = 0, nt = 0;
  int dropped_faces = 0;
  int invalid_vertices = 0;
};

inline MeshExport swept_surface(const SolitonParams& p, const GridSpec& spec,
                                bool with_frenet = false) {
  if (spec.ns < 2 || spec.nt < 2) throw ValidationError("swept_surface needs ns, nt >= 2");
  MeshExport mesh;
  mesh.ns = spec.ns;
  mesh.nt = spec.nt;
  const auto s_values = spec.s_values();
  const auto t_values = spec.t_values();
  mesh.vertices.reserve(static_cast<std::size_t>(spec.ns) * spec.nt);
  std::vector<std::uint8_t> ok(static_cast<std::size_t>(spec.ns) * spec.nt, 1);
  for (int it = 0; it < spec.nt; ++it)
    for (int is = 0; is < spec.ns; ++is) {
      const Vec3 g = nsoliton_curve(p, s_values[is], t_values[it]);
      const std::size_t idx = static_cast<std::size_t>(it) * spec.ns + is;
      if (!g.finite()) {
        ok[idx] = 0;
        ++mesh.invalid_vertices;
      }
      mesh.vertices.push_back(g);
      mesh.s.push_back(s_values[is]);
      mesh.t.push_back(t_values[it]);
    }
  for (int it = 0; it + 1 < spec.nt; ++it)
    for (int is = 0; is + 1 < spec.ns; ++is) {
      const int v00 = it * spec.ns + is;
      const int v10 = it * spec.ns + is + 1;
      const int v11 = (it + 1) * spec.ns + is + 1;
      const int v01 = (it + 1) * spec.ns + is;
      if (ok[v00] && ok[v10] && ok[v11] && ok[v01]) {
        mesh.quads.push_back({v00, v10, v11, v01});
      } else {
        ++mesh.dropped_faces;
      }
    }
  if (with_frenet) {
    mesh.kappa.assign(mesh.vertices.size(), 0.0);
    mesh.tau.assign(mesh.vertices.size(), 0.0);
    mesh.frenet_valid.assign(mesh.vertices.size(), 0);
    for (int it = 0; it < spec.nt; ++it) {
      std::vector<Vec3> line(mesh.vertices.begin() + static_cast<std::ptrdiff_t>(it) * spec.ns,
                             mesh.vertices.begin() + static_cast<std::ptrdiff_t>(it + 1) * spec.ns);
      const auto fr = frenet_apparatus(s_values, line);
      for (int is = 0; is < spec.ns; ++is) {
        const std::size_t idx = static_cast<std::size_t>(it) * spec.ns + is;
        mesh.kappa[idx] = fr.kappa[is];
        mesh.tau[idx] = fr.tau[is];
        mesh.frenet_valid[idx] = fr.valid[is];
      }
    }
  }
  return mesh;
}

}  // namespace plr
