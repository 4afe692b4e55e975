#pragma once

#include <cmath>
#include <sstream>

#include "plr/fields.hpp"
#include "plr/probe.hpp"
#include "plr/soliton.hpp"

namespace plr {

/// Wave function Psi and its SU(2) normalization F at one (s, t, lambda).
struct FrameSample {
  double s = 0.0, t = 0.0, lambda = 1.0;
  CMatrix psi;    // unnormalized, det = |f|^2 + |g|^2 at real lambda
  CMatrix frame;  // psi / sqrt(det psi)
};

inline CMatrix assemble_psi(const PolyPair& fg, double s, double t, double lambda) {
  const Complex e = phase_e(s, t, lambda);
  const Complex ebar = phase_e(s, t, -lambda);
  const Complex f = fg.f.eval(lambda);
  const Complex g = fg.g.eval(lambda);
  const Complex fbar = fg.f.conjugated().eval(lambda);
  const Complex gbar = fg.g.conjugated().eval(lambda);
  CMatrix psi(2, 2);
  psi(0, 0) = f * e;
  psi(0, 1) = -gbar * e;
  psi(1, 0) = g * ebar;
  psi(1, 1) = fbar * ebar;
  return psi;
}

/// Builds Psi from the Date polynomials and normalizes by the positive
/// square root of det Psi. Lambda must be positive: the curve pipeline
/// reads it as the speed of the evolution.
inline FrameSample wave_function(const SolitonParams& p, double s, double t, double lambda) {
  if (!(lambda > 0.0)) throw ValidationError("wave_function requires lambda > 0");
  const auto fg = fg_polynomials(determinants(p, s, t));
  FrameSample out;
  out.s = s;
  out.t = t;
  out.lambda = lambda;
  out.psi = assemble_psi(fg, s, t, lambda);
  const Complex d = det(out.psi);
  if (std::abs(d.imag()) > kAlgEps * std::abs(d) || d.real() <= 0.0) {
    std::ostringstream msg;
    msg << "det Psi not real positive at (s,t,lambda)=(" << s << "," << t << "," << lambda
        << "): " << d.real() << "+" << d.imag() << "i";
    throw ConsistencyError(msg.str());
  }
  out.frame = out.psi * Complex{1.0 / std::sqrt(d.real()), 0.0};
  return out;
}

/// Lax matrices of the PLR system at spectral parameter lambda.
struct LaxPairSample {
  CMatrix l, m;
  double lambda = 1.0;
  // |Im(qdot'/q)|; vanishes on solutions, recorded rather than enforced
  // because finite-difference inputs carry noise.
  double im_defect = 0.0;
};

inline LaxPairSample lax_matrices(Complex q, Complex qdot, Complex qdotprime, double lambda) {
  if (!(lambda > 0.0)) throw ValidationError("lax_matrices requires lambda > 0");
  if (std::abs(q) == 0.0) throw SingularityError("lax_matrices: q = 0, M undefined");
  const Complex ratio = qdotprime / q;
  LaxPairSample out;
  out.lambda = lambda;
  out.im_defect = std::abs(ratio.imag());
  out.l = CMatrix(2, 2,
                  {Complex{0.0, 0.5 * lambda}, 0.5 * q, -0.5 * std::conj(q),
                   Complex{0.0, -0.5 * lambda}});
  const Complex pre = Complex{0.0, 0.5 / lambda};
  out.m = CMatrix(2, 2,
                  {pre * (-ratio.real()), pre * (-qdot), pre * (-std::conj(qdot)),
                   pre * ratio.real()});
  return out;
}

/// m21, m31 of the general frame evolution from the deformation
/// coefficients and their s-derivatives.
struct FrameEntries {
  double m21 = 0.0, m31 = 0.0;
};

inline FrameEntries frame_entries(double ell, double kappa, double tau, double a, double b,
                                  double c, double b_s, double c_s) {
  (void)b;
  return {b_s / ell + a * kappa - c * tau, c_s / ell + b * tau};
}

/// General SU(2) frame evolution matrices: the tangent part
/// L = (|gamma'|/2) [[i tau, -kappa], [kappa, -i tau]] and the deformation
/// part M assembled from m21, m31 and the s-derivative of m31.
struct GeneralFrameMatrices {
  CMatrix l, m;
};

inline GeneralFrameMatrices general_frame_matrices(double ell, double kappa, double tau,
                                                   double m21, double m31, double m31_s) {
  if (!(kappa > 0.0)) throw ValidationError("general_frame_matrices requires kappa > 0");
  GeneralFrameMatrices out;
  out.l = CMatrix(2, 2,
                  {Complex{0.0, 0.5 * ell * tau}, Complex{-0.5 * ell * kappa, 0.0},
                   Complex{0.5 * ell * kappa, 0.0}, Complex{0.0, -0.5 * ell * tau}});
  const double diag = (m31_s / ell + m21 * tau) / kappa;
  out.m = CMatrix(2, 2,
                  {Complex{0.0, 0.5 * diag}, Complex{-0.5 * m21, -0.5 * m31},
                   Complex{0.5 * m21, -0.5 * m31}, Complex{0.0, -0.5 * diag}});
  return out;
}

/// Residual of the Date Lax pair: finite-difference logarithmic derivatives
/// of Psi against the determinant-ratio right-hand sides.
struct LaxResidual {
  double max_s = 0.0;
  double max_t = 0.0;
};

inline LaxResidual lax_residual(const SolitonParams& p, double lambda, const GridSpec& grid,
                                double h) {
  LaxResidual out;
  for (double t : grid.t_values())
    for (double s : grid.s_values()) {
      const auto bundle = determinants(p, s, t);
      const auto fg = fg_polynomials(bundle);
      const CMatrix psi = assemble_psi(fg, s, t, lambda);
      const CMatrix psi_inv = inverse(psi);

      const auto psi_at = [&](double ss, double tt) {
        return assemble_psi(fg_polynomials(determinants(p, ss, tt)), ss, tt, lambda);
      };
      const CMatrix dpsi_s = (psi_at(s + h, t) - psi_at(s - h, t)) * Complex{0.5 / h, 0.0};
      const CMatrix dpsi_t = (psi_at(s, t + h) - psi_at(s, t - h)) * Complex{0.5 / h, 0.0};

      // s-equation: off-diagonal coupling is the Hasimoto field
      // q = 2 i conj(d_2N/d_0); the 1/2 prefactor applies to the diagonal
      // only.
      const int n = bundle.n();
      const Complex r2n = bundle.ratio(2 * n);
      CMatrix rhs_s(2, 2);
      rhs_s(0, 0) = Complex{0.0, 0.5 * lambda};
      rhs_s(0, 1) = kI * std::conj(r2n);
      rhs_s(1, 0) = kI * r2n;
      rhs_s(1, 1) = Complex{0.0, -0.5 * lambda};

      const Complex d1 = bundle.d[1];
      const Complex dn1 = bundle.d[n + 1];
      const double sum = std::norm(d1) + std::norm(dn1);
      const Complex pre = Complex{0.0, 0.5 / (lambda * sum)};
      CMatrix rhs_t(2, 2);
      rhs_t(0, 0) = pre * (std::norm(d1) - std::norm(dn1));
      rhs_t(0, 1) = pre * 2.0 * std::conj(d1 * dn1);
      rhs_t(1, 0) = pre * 2.0 * d1 * dn1;
      rhs_t(1, 1) = -rhs_t(0, 0);

      out.max_s = std::max(out.max_s, (psi_inv * dpsi_s - rhs_s).frobenius_norm());
      out.max_t = std::max(out.max_t, (psi_inv * dpsi_t - rhs_t).frobenius_norm());
    }
  return out;
}

/// Max Frobenius norm of [L, M] + dM/ds - dL/dt over the probe lattice,
/// derivatives by central differences of step h.
inline double zero_curvature_residual(const MatrixField& lf, const MatrixField& mf,
                                      const GridSpec& grid, double h) {
  double worst = 0.0;
  for (double t : grid.t_values())
    for (double s : grid.s_values()) {
      const CMatrix l = lf(s, t);
      const CMatrix m = mf(s, t);
      const CMatrix m_s = (mf(s + h, t) - mf(s - h, t)) * Complex{0.5 / h, 0.0};
      const CMatrix l_t = (lf(s, t + h) - lf(s, t - h)) * Complex{0.5 / h, 0.0};
      worst = std::max(worst, (commutator(l, m) + m_s - l_t).frobenius_norm());
    }
  return worst;
}

/// Gauge change of a Lax field pair: L -> D^{-1} L D + D^{-1} D', with the
/// derivative of D taken by central differences of step h.
inline std::pair<MatrixField, MatrixField> gauge_transform(MatrixField lf, MatrixField mf,
                                                           MatrixField df, double h) {
  MatrixField lt = [lf, df, h](double s, double t) {
    const CMatrix dinv = inverse(df(s, t));
    const CMatrix dd = (df(s + h, t) - df(s - h, t)) * Complex{0.5 / h, 0.0};
    return dinv * lf(s, t) * df(s, t) + dinv * dd;
  };
  MatrixField mt = [mf, df, h](double s, double t) {
    const CMatrix dinv = inverse(df(s, t));
    const CMatrix dd = (df(s, t + h) - df(s, t - h)) * Complex{0.5 / h, 0.0};
    return dinv * mf(s, t) * df(s, t) + dinv * dd;
  };
  return {std::move(lt), std::move(mt)};
}

/// The diagonal gauge of the Lund-Regge frame,
/// D = diag(i e^{-i phi}, -i e^{i phi}) with 2 phi = int_s (tau - 1) plus
/// the phase of q at the anchor, so that e^{2 i phi} = q / |q| exactly and
/// the gauged tangent matrix carries the probe's own Hasimoto field.
inline MatrixField lund_regge_gauge(const SolitonProbe& probe) {
  return [&probe](double s, double t) {
    const double theta = std::arg(probe.q(probe.anchor(), t));
    const double phi = 0.5 * (probe.int_tau_minus_one(s, t) + theta);
    CMatrix d(2, 2);
    d(0, 0) = kI * std::exp(Complex{0.0, -phi});
    d(1, 1) = -kI * std::exp(Complex{0.0, phi});
    return d;
  };
}

/// Frenet-frame evolution matrices of the unit-speed Lund-Regge flow
/// (before the diagonal gauge): the tangent part with (kappa, tau) and the
/// deformation part with m21 = -c, m31 = b.
inline std::pair<MatrixField, MatrixField> lund_regge_frame_fields(const SolitonProbe& probe) {
  MatrixField lf = [&probe](double s, double t) {
    return general_frame_matrices(1.0, probe.kappa(s, t), probe.tau(s, t), 0.0, 0.0, 0.0).l;
  };
  MatrixField mf = [&probe](double s, double t) {
    const double m21 = -probe.coeff_c(s, t);
    const double m31 = probe.coeff_b(s, t);
    const double m31_s = -probe.kappa_t_s(s, t);
    return general_frame_matrices(1.0, probe.kappa(s, t), probe.tau(s, t), m21, m31, m31_s).m;
  };
  return {std::move(lf), std::move(mf)};
}

/// Lax fields of the PLR equation built from the analytic q-jet of a Date
/// solution; `perturb` scales q (and its derivatives) by (1 + perturb) to
/// provide the negative control.
inline std::pair<MatrixField, MatrixField> date_lax_fields(const SolitonProbe& probe,
                                                           double lambda, double perturb = 0.0) {
  const double scale = 1.0 + perturb;
  MatrixField lf = [&probe, lambda, scale](double s, double t) {
    const Complex q = scale * probe.q_jet(s, t).q;
    return CMatrix(2, 2,
                   {Complex{0.0, 0.5 * lambda}, 0.5 * q, -0.5 * std::conj(q),
                    Complex{0.0, -0.5 * lambda}});
  };
  MatrixField mf = [&probe, lambda, scale](double s, double t) {
    const auto j = probe.q_jet(s, t);
    return lax_matrices(scale * j.q, scale * j.q_t, scale * j.q_st, lambda).m;
  };
  return {std::move(lf), std::move(mf)};
}

}  // namespace plr
