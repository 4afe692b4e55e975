#pragma once

#include <cmath>
#include <sstream>
#include <utility>

#include "plr/curve.hpp"
#include "plr/fields.hpp"
#include "plr/probe.hpp"

namespace plr {

/// Coefficient data of the 4x4 frame system. The rotation blocks are the
/// so(3) Frenet matrices, the last column carries the length element
/// (s-direction) and the deformation vector (t-direction):
///   Ltilde = [[0, -l k, 0, l], [l k, 0, -l tau, 0], [0, l tau, 0, 0], [0,0,0,0]]
///   Mtilde = [[0, -m21, -m31, a], [m21, 0, -m32, b], [m31, m32, 0, c], [0,0,0,0]]
struct ReconstructionFields {
  ScalarField ell, kappa, tau;
  ScalarField a, b, c;
  ScalarField m21, m31, m32;
};

inline CMatrix ltilde_at(const ReconstructionFields& f, double s, double t) {
  CMatrix m(4, 4);
  const double lk = f.ell(s, t) * f.kappa(s, t);
  const double lt = f.ell(s, t) * f.tau(s, t);
  m(0, 1) = -lk;
  m(1, 0) = lk;
  m(1, 2) = -lt;
  m(2, 1) = lt;
  m(0, 3) = f.ell(s, t);
  return m;
}

inline CMatrix mtilde_at(const ReconstructionFields& f, double s, double t) {
  CMatrix m(4, 4);
  const double m21 = f.m21(s, t), m31 = f.m31(s, t), m32 = f.m32(s, t);
  m(0, 1) = -m21;
  m(1, 0) = m21;
  m(0, 2) = -m31;
  m(2, 0) = m31;
  m(1, 2) = -m32;
  m(2, 1) = m32;
  m(0, 3) = f.a(s, t);
  m(1, 3) = f.b(s, t);
  m(2, 3) = f.c(s, t);
  return m;
}

/// All nine coefficient fields of a Date soliton evolution, analytic from
/// the q-jet (unit length element).
inline ReconstructionFields date_reconstruction_fields(const SolitonProbe& probe) {
  ReconstructionFields f;
  f.ell = [](double, double) { return 1.0; };
  f.kappa = [&probe](double s, double t) { return probe.kappa(s, t); };
  f.tau = [&probe](double s, double t) { return probe.tau(s, t); };
  f.a = [&probe](double s, double t) { return probe.coeff_a(s, t); };
  f.b = [&probe](double s, double t) { return probe.coeff_b(s, t); };
  f.c = [&probe](double s, double t) { return probe.coeff_c(s, t); };
  f.m21 = [&probe](double s, double t) { return -probe.coeff_c(s, t); };
  f.m31 = [&probe](double s, double t) { return probe.coeff_b(s, t); };
  f.m32 = [&probe](double s, double t) {
    return (-probe.kappa_t_s(s, t) - probe.coeff_c(s, t) * probe.tau(s, t)) / probe.kappa(s, t);
  };
  return f;
}

struct ReconstructOptions {
  double max_step = 1e-2;       // RK4 substep cap along both directions
  double path_tolerance = 1e-6; // endpoint mismatch between integration orders
  bool check_path = true;
};

struct ReconstructionResult {
  CurveGrid grid;
  double path_defect = 0.0;  // |gamma| difference, s-then-t vs t-then-s
};

namespace detail {

template <typename MatrixAt>
inline CMatrix rk4_line(CMatrix f0, double x0, double x1, double max_step, MatrixAt&& coeff) {
  const double span = x1 - x0;
  const int steps = std::max(1, static_cast<int>(std::ceil(std::abs(span) / max_step)));
  const double h = span / steps;
  CMatrix f = std::move(f0);
  for (int i = 0; i < steps; ++i) {
    const double x = x0 + h * i;
    const CMatrix k1 = f * coeff(x);
    const CMatrix k2 = (f + k1 * Complex{0.5 * h, 0.0}) * coeff(x + 0.5 * h);
    const CMatrix k3 = (f + k2 * Complex{0.5 * h, 0.0}) * coeff(x + 0.5 * h);
    const CMatrix k4 = (f + k3 * Complex{h, 0.0}) * coeff(x + h);
    f = f + (k1 + k2 * Complex{2.0, 0.0} + k3 * Complex{2.0, 0.0} + k4) * Complex{h / 6.0, 0.0};
  }
  return f;
}

inline Vec3 translation_of(const CMatrix& ftilde) {
  return {ftilde(0, 3).real(), ftilde(1, 3).real(), ftilde(2, 3).real()};
}

}  // namespace detail

/// Integrates the 4x4 frame system over the lattice: first along t at the
/// first s-node, then along s on every t-line, with the identity frame at
/// the lattice origin. The curve is read off the translation column. A
/// second pass with the opposite order guards against incompatible
/// coefficient fields.
inline ReconstructionResult reconstruct_curve(const ReconstructionFields& fields,
                                              const std::vector<double>& s_values,
                                              const std::vector<double>& t_values,
                                              const ReconstructOptions& opts = {}) {
  if (s_values.size() < 2 || t_values.size() < 2)
    throw ValidationError("reconstruct_curve needs at least a 2x2 lattice");
  ReconstructionResult out;
  out.grid.s_values = s_values;
  out.grid.t_values = t_values;
  out.grid.points.resize(s_values.size() * t_values.size());

  CMatrix seed = CMatrix::identity(4);
  const double s0 = s_values.front();
  for (std::size_t it = 0; it < t_values.size(); ++it) {
    if (it > 0)
      seed = detail::rk4_line(std::move(seed), t_values[it - 1], t_values[it], opts.max_step,
                              [&](double tt) { return mtilde_at(fields, s0, tt); });
    CMatrix f = seed;
    const double t = t_values[it];
    out.grid.at(0, it) = detail::translation_of(f);
    for (std::size_t is = 1; is < s_values.size(); ++is) {
      f = detail::rk4_line(std::move(f), s_values[is - 1], s_values[is], opts.max_step,
                           [&](double ss) { return ltilde_at(fields, ss, t); });
      out.grid.at(is, it) = detail::translation_of(f);
    }
  }

  if (opts.check_path) {
    CMatrix f = CMatrix::identity(4);
    const double t0 = t_values.front();
    for (std::size_t is = 1; is < s_values.size(); ++is)
      f = detail::rk4_line(std::move(f), s_values[is - 1], s_values[is], opts.max_step,
                           [&](double ss) { return ltilde_at(fields, ss, t0); });
    const double s_last = s_values.back();
    for (std::size_t it = 1; it < t_values.size(); ++it)
      f = detail::rk4_line(std::move(f), t_values[it - 1], t_values[it], opts.max_step,
                           [&](double tt) { return mtilde_at(fields, s_last, tt); });
    const Vec3 other = detail::translation_of(f);
    out.path_defect = norm(other - out.grid.at(s_values.size() - 1, t_values.size() - 1));
    if (out.path_defect > opts.path_tolerance) {
      std::ostringstream msg;
      msg << "path-dependent integration: endpoint mismatch " << out.path_defect
          << " exceeds tolerance " << opts.path_tolerance
          << " (coefficient fields are not compatible)";
      throw ConsistencyError(msg.str());
    }
  }
  return out;
}

}  // namespace plr
