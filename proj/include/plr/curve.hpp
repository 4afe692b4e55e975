#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "plr/fields.hpp"
#include "plr/frame.hpp"
#include "plr/soliton.hpp"
#include "plr/su2.hpp"

namespace plr {

/// Curve samples on a rectangular (s, t) lattice, with optional curvature,
/// torsion and Hasimoto-field channels on the same lattice.
struct CurveGrid {
  std::vector<double> s_values, t_values;
  std::vector<Vec3> points;           // index (i_s, i_t) -> points[i_t * ns + i_s]
  std::vector<double> kappa, tau;     // optional, same layout
  std::vector<Complex> q_field;       // optional, same layout

  std::size_t ns() const { return s_values.size(); }
  std::size_t nt() const { return t_values.size(); }
  const Vec3& at(std::size_t is, std::size_t it) const { return points[it * ns() + is]; }
  Vec3& at(std::size_t is, std::size_t it) { return points[it * ns() + is]; }

  bool all_finite() const {
    for (const auto& p : points)
      if (!p.finite()) return false;
    return true;
  }
};

/// Closed-form N-soliton curve: the Sym formula evaluated exactly through
/// coefficient-wise lambda-derivatives of f and g at lambda = 1.
///
/// The transverse components carry the phase e(s,t,-lambda)^2; at real
/// lambda this is the conjugate of e^2. The published formula prints e^2,
/// but only the conjugate phase satisfies the defining curve evolution
/// gamma_t' = gamma' x gamma_t (checked in the tests both analytically for
/// the 1-soliton and numerically against the finite-difference Sym route).
inline Vec3 nsoliton_curve(const SolitonParams& p, double s, double t) {
  const auto fg = fg_polynomials(determinants(p, s, t));
  const Polynomial fbar = fg.f.conjugated();
  const Polynomial gbar = fg.g.conjugated();
  const Complex f = fg.f.eval(1.0);
  const Complex g = fg.g.eval(1.0);
  const Complex fb = fbar.eval(1.0);
  const Complex gb = gbar.eval(1.0);
  const Complex df = fg.f.derivative().eval(1.0);
  const Complex dg = fg.g.derivative().eval(1.0);
  const Complex dfb = fbar.derivative().eval(1.0);
  const Complex dgb = gbar.derivative().eval(1.0);
  const double denom = (f * fb + g * gb).real();  // |f|^2 + |g|^2 at real lambda

  const Complex ebar2 = phase_e(s, t, -1.0) * phase_e(s, t, -1.0);
  const Complex transverse = (fb * dg - g * dfb) / denom * ebar2;
  const double gamma3 = s - t + 2.0 * ((fb * df + g * dgb) / denom).imag();
  return {2.0 * transverse.real(), -2.0 * transverse.imag(), gamma3};
}

/// Core of the numeric Sym formula: lambda0 (d_lambda F) F^{-1} from three
/// frame samples at lambda0 - h, lambda0, lambda0 + h, projected onto
/// su(2) before extraction.
inline Vec3 sym_from_frames(const CMatrix& f_minus, const CMatrix& f_center,
                            const CMatrix& f_plus, double lambda0, double h_lambda,
                            double defect_tol = 1e-6) {
  const CMatrix dlambda = (f_plus - f_minus) * Complex{0.5 / h_lambda, 0.0};
  const CMatrix raw = dlambda * inverse(f_center) * Complex{lambda0, 0.0};

  // Anti-Hermitian trace-free projection; the defect measures how far the
  // numerical derivative strayed from su(2).
  CMatrix proj = (raw - raw.adjoint()) * Complex{0.5, 0.0};
  const Complex half_trace = proj.trace() * Complex{0.5, 0.0};
  proj(0, 0) -= half_trace;
  proj(1, 1) -= half_trace;
  const double defect = (raw - proj).frobenius_norm();
  if (defect > defect_tol)
    throw ConsistencyError("sym formula: su(2) defect " + std::to_string(defect) +
                           " signals a wrong normalization");
  return su2_extract(proj, 1e-8);
}

/// Numeric Sym formula with a central difference in lambda. Serves as the
/// independent oracle for nsoliton_curve (lambda0 = 1) and gives the
/// non-unit-speed family members for lambda0 != 1.
inline Vec3 sym_numeric(const SolitonParams& p, double s, double t, double lambda0,
                        double h_lambda, double defect_tol = 1e-6) {
  if (!(lambda0 > h_lambda && h_lambda > 0.0))
    throw ValidationError("sym_numeric requires lambda0 > h_lambda > 0");
  return sym_from_frames(wave_function(p, s, t, lambda0 - h_lambda).frame,
                         wave_function(p, s, t, lambda0).frame,
                         wave_function(p, s, t, lambda0 + h_lambda).frame, lambda0, h_lambda,
                         defect_tol);
}

/// Curvature and torsion along one t-slice by central differences, with
/// gap markers where |gamma' x gamma''| falls below `gap_eps` (near-straight
/// segments have no Frenet frame).
struct FrenetLine {
  std::vector<double> s_values;
  std::vector<double> kappa, tau;
  std::vector<std::uint8_t> valid;  // 0 at gaps and at the lattice boundary
};

inline FrenetLine frenet_apparatus(const std::vector<double>& s_values,
                                   const std::vector<Vec3>& gamma, double gap_eps = 1e-8) {
  const std::size_t n = s_values.size();
  if (n < 7) throw ValidationError("frenet_apparatus needs at least 7 samples");
  if (gamma.size() != n) throw DimensionError("sample count mismatch");
  const double h = s_values[1] - s_values[0];
  FrenetLine out;
  out.s_values = s_values;
  out.kappa.assign(n, 0.0);
  out.tau.assign(n, 0.0);
  out.valid.assign(n, 0);
  for (std::size_t i = 2; i + 2 < n; ++i) {
    const Vec3 d1 = (gamma[i + 1] - gamma[i - 1]) / (2.0 * h);
    const Vec3 d2 = (gamma[i + 1] - 2.0 * gamma[i] + gamma[i - 1]) / (h * h);
    const Vec3 d3 =
        (gamma[i + 2] - 2.0 * gamma[i + 1] + 2.0 * gamma[i - 1] - gamma[i - 2]) / (2.0 * h * h * h);
    const Vec3 c = cross(d1, d2);
    const double cn = norm(c);
    if (cn < gap_eps) continue;  // gap, reported via valid = 0
    out.kappa[i] = cn / std::pow(norm(d1), 3);
    out.tau[i] = dot(c, d3) / (cn * cn);
    out.valid[i] = 1;
  }
  return out;
}

/// Hasimoto-type field q = kappa exp(i int_s (tau - 1)), trapezoid integral
/// anchored (zero constant) at index `anchor`.
inline std::vector<Complex> hasimoto_q(const std::vector<double>& s_values,
                                       const std::vector<double>& kappa,
                                       const std::vector<double>& tau, std::size_t anchor = 0) {
  const std::size_t n = s_values.size();
  if (kappa.size() != n || tau.size() != n) throw DimensionError("field length mismatch");
  if (anchor >= n) throw DimensionError("anchor index out of range");
  std::vector<double> phase(n, 0.0);
  for (std::size_t i = anchor + 1; i < n; ++i)
    phase[i] = phase[i - 1] +
               0.5 * (s_values[i] - s_values[i - 1]) * ((tau[i] - 1.0) + (tau[i - 1] - 1.0));
  for (std::size_t i = anchor; i-- > 0;)
    phase[i] = phase[i + 1] -
               0.5 * (s_values[i + 1] - s_values[i]) * ((tau[i] - 1.0) + (tau[i + 1] - 1.0));
  std::vector<Complex> q(n);
  for (std::size_t i = 0; i < n; ++i) q[i] = kappa[i] * std::exp(Complex{0.0, phase[i]});
  return q;
}

/// Lund-Regge deformation coefficients from sampled curvature/torsion:
/// a = -int_s kappa_t kappa, b = -kappa_t, c = -kappa int_s tau_t, with
/// central t-differences (interior t-slices only) and trapezoid s-integrals
/// anchored at `s_anchor_index`.
struct CoefficientFields {
  std::vector<double> a, b, c;      // layout (i_s, i_t) like CurveGrid, boundary t rows zero
  std::vector<std::uint8_t> valid;  // 0 on boundary t rows
};

inline CoefficientFields coefficient_fields(const CurveGrid& grid, std::size_t s_anchor_index) {
  const std::size_t ns = grid.ns(), nt = grid.nt();
  if (grid.kappa.size() != ns * nt || grid.tau.size() != ns * nt)
    throw ValidationError("coefficient_fields needs kappa and tau channels");
  if (s_anchor_index >= ns) throw DimensionError("anchor index out of range");
  CoefficientFields out;
  out.a.assign(ns * nt, 0.0);
  out.b.assign(ns * nt, 0.0);
  out.c.assign(ns * nt, 0.0);
  out.valid.assign(ns * nt, 0);
  for (std::size_t it = 1; it + 1 < nt; ++it) {
    const double dt2 = grid.t_values[it + 1] - grid.t_values[it - 1];
    std::vector<double> kdot(ns), tdot(ns);
    for (std::size_t is = 0; is < ns; ++is) {
      kdot[is] = (grid.kappa[(it + 1) * ns + is] - grid.kappa[(it - 1) * ns + is]) / dt2;
      tdot[is] = (grid.tau[(it + 1) * ns + is] - grid.tau[(it - 1) * ns + is]) / dt2;
    }
    // cumulative trapezoids in s, zero at the anchor
    std::vector<double> int_kk(ns, 0.0), int_td(ns, 0.0);
    for (std::size_t is = s_anchor_index + 1; is < ns; ++is) {
      const double ds = grid.s_values[is] - grid.s_values[is - 1];
      int_kk[is] = int_kk[is - 1] + 0.5 * ds *
                                        (kdot[is] * grid.kappa[it * ns + is] +
                                         kdot[is - 1] * grid.kappa[it * ns + is - 1]);
      int_td[is] = int_td[is - 1] + 0.5 * ds * (tdot[is] + tdot[is - 1]);
    }
    for (std::size_t is = s_anchor_index; is-- > 0;) {
      const double ds = grid.s_values[is + 1] - grid.s_values[is];
      int_kk[is] = int_kk[is + 1] - 0.5 * ds *
                                        (kdot[is] * grid.kappa[it * ns + is] +
                                         kdot[is + 1] * grid.kappa[it * ns + is + 1]);
      int_td[is] = int_td[is + 1] - 0.5 * ds * (tdot[is] + tdot[is + 1]);
    }
    for (std::size_t is = 0; is < ns; ++is) {
      const std::size_t idx = it * ns + is;
      out.a[idx] = -int_kk[is];
      out.b[idx] = -kdot[is];
      out.c[idx] = -grid.kappa[idx] * int_td[is];
      out.valid[idx] = 1;
    }
  }
  return out;
}

/// Samples the closed-form curve over a lattice; attaches kappa/tau/q
/// channels from the solution fields (kappa = |q| there, torsion from the
/// analytic jet) when `with_fields` is set.
inline CurveGrid sample_curve_grid(const SolitonParams& p, const GridSpec& spec,
                                   bool with_fields = false) {
  CurveGrid grid;
  grid.s_values = spec.s_values();
  grid.t_values = spec.t_values();
  grid.points.resize(grid.ns() * grid.nt());
  if (with_fields) {
    grid.kappa.resize(grid.points.size());
    grid.tau.resize(grid.points.size());
    grid.q_field.resize(grid.points.size());
  }
  const SolitonProbe probe(p);
  for (std::size_t it = 0; it < grid.nt(); ++it)
    for (std::size_t is = 0; is < grid.ns(); ++is) {
      const double s = grid.s_values[is];
      const double t = grid.t_values[it];
      grid.at(is, it) = nsoliton_curve(p, s, t);
      if (with_fields) {
        const auto j = probe.q_jet(s, t);
        const std::size_t idx = it * grid.ns() + is;
        grid.q_field[idx] = j.q;
        grid.kappa[idx] = std::abs(j.q);
        grid.tau[idx] = 1.0 + (j.q_s / j.q).imag();
      }
    }
  return grid;
}

}  // namespace plr
