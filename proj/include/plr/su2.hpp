#pragma once

#include <cmath>
#include <sstream>

#include "plr/complex_matrix.hpp"
#include "plr/common.hpp"

namespace plr {

/// Point or vector in Euclidean 3-space; carries curve samples gamma and
/// frame vectors T, N, B.
struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }

  bool finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

/// (p,q,r) -> (1/2) [[ir, -p-iq], [p-iq, -ir]], the R^3 ~ su(2) dictionary.
inline CMatrix su2_embed(const Vec3& v) {
  CMatrix m(2, 2);
  m(0, 0) = Complex{0.0, 0.5 * v.z};
  m(0, 1) = Complex{-0.5 * v.x, -0.5 * v.y};
  m(1, 0) = Complex{0.5 * v.x, -0.5 * v.y};
  m(1, 1) = Complex{0.0, -0.5 * v.z};
  return m;
}

/// Distance of m from the trace-free anti-Hermitian matrices.
inline double su2_defect(const CMatrix& m) {
  if (m.rows() != 2 || m.cols() != 2) throw DimensionError("su2_defect expects 2x2");
  return (m + m.adjoint()).frobenius_norm() + std::abs(m.trace());
}

/// Inverse of su2_embed. Rejects matrices whose anti-Hermitian defect
/// exceeds `tol` (absolute, plus relative in the matrix scale).
inline Vec3 su2_extract(const CMatrix& m, double tol = kAlgEps) {
  const double defect = su2_defect(m);
  const double scale = std::max(1.0, m.frobenius_norm());
  if (defect > tol * scale) {
    std::ostringstream msg;
    msg << "matrix is not su(2): Hermitian defect " << defect << " exceeds " << tol * scale;
    throw ConsistencyError(msg.str());
  }
  return {m(1, 0).real() - m(0, 1).real(), -(m(1, 0).imag() + m(0, 1).imag()),
          m(0, 0).imag() - m(1, 1).imag()};
}

/// Cross product computed as the su(2) commutator [a, b].
inline Vec3 cross_via_bracket(const Vec3& a, const Vec3& b) {
  return su2_extract(commutator(su2_embed(a), su2_embed(b)), 1e-9);
}

/// Inner product computed as -2 tr(ab) in su(2).
inline double inner_via_trace(const Vec3& a, const Vec3& b) {
  return -2.0 * (su2_embed(a) * su2_embed(b)).trace().real();
}

}  // namespace plr
