#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

#include "plr/common.hpp"

namespace plr {

/// Dense complex matrix of small, fixed size (2x2 wave functions up to
/// 2Nx2N soliton systems). Immutable-by-convention value type: operations
/// return fresh matrices.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols, Complex{0.0, 0.0}) {}

  CMatrix(std::size_t rows, std::size_t cols, std::initializer_list<Complex> entries)
      : rows_(rows), cols_(cols), a_(entries) {
    if (a_.size() != rows * cols) throw DimensionError("entry count does not match shape");
  }

  static CMatrix identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static CMatrix diagonal(const std::vector<Complex>& d) {
    CMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_ && rows_ > 0; }

  Complex& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

  CMatrix operator+(const CMatrix& o) const {
    check_same_shape(o);
    CMatrix r = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
    return r;
  }

  CMatrix operator-(const CMatrix& o) const {
    check_same_shape(o);
    CMatrix r = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] -= o.a_[i];
    return r;
  }

  CMatrix operator*(const CMatrix& o) const {
    if (cols_ != o.rows_) throw DimensionError("matrix product shape mismatch");
    CMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const Complex v = (*this)(i, k);
        if (v == Complex{0.0, 0.0}) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += v * o(k, j);
      }
    return r;
  }

  CMatrix operator*(Complex s) const {
    CMatrix r = *this;
    for (auto& v : r.a_) v *= s;
    return r;
  }

  friend CMatrix operator*(Complex s, const CMatrix& m) { return m * s; }

  std::vector<Complex> column(std::size_t c) const {
    std::vector<Complex> v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
  }

  Complex trace() const {
    Complex t{0.0, 0.0};
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
  }

  CMatrix adjoint() const {
    CMatrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
  }

  CMatrix conjugated() const {
    CMatrix r = *this;
    for (auto& v : r.a_) v = std::conj(v);
    return r;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const auto& v : a_) s += std::norm(v);
    return std::sqrt(s);
  }

  bool all_finite() const {
    for (const auto& v : a_)
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
  }

 private:
  void check_same_shape(const CMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("shape mismatch");
  }

  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Complex> a_;
};

/// Copy of `m` with column `c` (0-based) replaced by `v`.
inline CMatrix replace_column(const CMatrix& m, std::size_t c, const std::vector<Complex>& v) {
  if (c >= m.cols()) throw DimensionError("column index out of range");
  if (v.size() != m.rows()) throw DimensionError("column length does not match row count");
  CMatrix r = m;
  for (std::size_t i = 0; i < m.rows(); ++i) r(i, c) = v[i];
  return r;
}

namespace detail {

// In-place LU with partial pivoting. Returns {sign of permutation, singular flag}.
inline std::pair<double, bool> lu_factor(std::vector<Complex>& a, std::size_t n,
                                         std::vector<std::size_t>& piv) {
  piv.resize(n);
  for (std::size_t i = 0; i < n; ++i) piv[i] = i;
  double sign = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    double best = std::abs(a[k * n + k]);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double mag = std::abs(a[i * n + k]);
      if (mag > best) {
        best = mag;
        p = i;
      }
    }
    if (best == 0.0) return {sign, true};
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[p * n + j]);
      std::swap(piv[k], piv[p]);
      sign = -sign;
    }
    const Complex pivot = a[k * n + k];
    for (std::size_t i = k + 1; i < n; ++i) {
      const Complex f = a[i * n + k] / pivot;
      a[i * n + k] = f;
      for (std::size_t j = k + 1; j < n; ++j) a[i * n + j] -= f * a[k * n + j];
    }
  }
  return {sign, false};
}

}  // namespace detail

/// Determinant via LU with partial pivoting; closed form for n <= 2.
inline Complex det(const CMatrix& m) {
  if (!m.square()) throw DimensionError("determinant requires a square matrix");
  const std::size_t n = m.rows();
  if (n == 1) return m(0, 0);
  if (n == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  std::vector<Complex> a(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = m(i, j);
  std::vector<std::size_t> piv;
  auto [sign, singular] = detail::lu_factor(a, n, piv);
  if (singular) return Complex{0.0, 0.0};
  Complex d{sign, 0.0};
  for (std::size_t k = 0; k < n; ++k) d *= a[k * n + k];
  return d;
}

/// Solves m x = b for a single right-hand side.
inline std::vector<Complex> solve(const CMatrix& m, const std::vector<Complex>& b) {
  if (!m.square()) throw DimensionError("solve requires a square matrix");
  const std::size_t n = m.rows();
  if (b.size() != n) throw DimensionError("right-hand side length mismatch");
  std::vector<Complex> a(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = m(i, j);
  std::vector<std::size_t> piv;
  auto [sign, singular] = detail::lu_factor(a, n, piv);
  (void)sign;
  if (singular) throw SingularityError("singular matrix in solve");
  std::vector<Complex> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[piv[i]];
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) x[i] -= a[i * n + j] * x[j];
  for (std::size_t ii = n; ii-- > 0;) {
    for (std::size_t j = ii + 1; j < n; ++j) x[ii] -= a[ii * n + j] * x[j];
    x[ii] /= a[ii * n + ii];
  }
  return x;
}

/// Reusable LU factorization for repeated solves against one matrix.
class LuFactorization {
 public:
  explicit LuFactorization(const CMatrix& m) : n_(m.rows()), a_(n_ * n_) {
    if (!m.square()) throw DimensionError("LU requires a square matrix");
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) a_[i * n_ + j] = m(i, j);
    auto [sign, singular] = detail::lu_factor(a_, n_, piv_);
    (void)sign;
    if (singular) throw SingularityError("singular matrix in LU factorization");
  }

  std::vector<Complex> solve(const std::vector<Complex>& b) const {
    if (b.size() != n_) throw DimensionError("right-hand side length mismatch");
    std::vector<Complex> x(n_);
    for (std::size_t i = 0; i < n_; ++i) x[i] = b[piv_[i]];
    for (std::size_t i = 1; i < n_; ++i)
      for (std::size_t j = 0; j < i; ++j) x[i] -= a_[i * n_ + j] * x[j];
    for (std::size_t ii = n_; ii-- > 0;) {
      for (std::size_t j = ii + 1; j < n_; ++j) x[ii] -= a_[ii * n_ + j] * x[j];
      x[ii] /= a_[ii * n_ + ii];
    }
    return x;
  }

 private:
  std::size_t n_;
  std::vector<Complex> a_;
  std::vector<std::size_t> piv_;
};

inline CMatrix inverse(const CMatrix& m) {
  if (!m.square()) throw DimensionError("inverse requires a square matrix");
  const std::size_t n = m.rows();
  if (n == 2) {
    const Complex d = det(m);
    if (std::abs(d) == 0.0) throw SingularityError("singular 2x2 matrix");
    CMatrix r(2, 2);
    r(0, 0) = m(1, 1) / d;
    r(0, 1) = -m(0, 1) / d;
    r(1, 0) = -m(1, 0) / d;
    r(1, 1) = m(0, 0) / d;
    return r;
  }
  CMatrix r(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<Complex> e(n, Complex{0.0, 0.0});
    e[c] = 1.0;
    const auto x = solve(m, e);
    for (std::size_t i = 0; i < n; ++i) r(i, c) = x[i];
  }
  return r;
}

inline CMatrix commutator(const CMatrix& a, const CMatrix& b) { return a * b - b * a; }

/// || m m* - id ||_F, zero for unitary m.
inline double unitarity_defect(const CMatrix& m) {
  return (m * m.adjoint() - CMatrix::identity(m.rows())).frobenius_norm();
}

}  // namespace plr
