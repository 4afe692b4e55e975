#pragma once

#include <vector>

#include "plr/common.hpp"

namespace plr {

/// Polynomial in the spectral parameter, coefficients in ascending powers.
/// Differentiation and conjugation act on coefficients exactly, so the
/// lambda-derivatives in the curve formulas carry no discretization error.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Complex> coeffs) : c_(std::move(coeffs)) {}

  const std::vector<Complex>& coeffs() const { return c_; }
  std::size_t degree() const { return c_.empty() ? 0 : c_.size() - 1; }

  Complex eval(Complex lambda) const {
    Complex acc{0.0, 0.0};
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * lambda + c_[i];
    return acc;
  }

  Polynomial derivative() const {
    if (c_.size() <= 1) return Polynomial{{Complex{0.0, 0.0}}};
    std::vector<Complex> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = double(i) * c_[i];
    return Polynomial{std::move(d)};
  }

  /// Coefficient-wise conjugate: eval at real lambda equals the conjugate
  /// of this->eval there.
  Polynomial conjugated() const {
    std::vector<Complex> d(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) d[i] = std::conj(c_[i]);
    return Polynomial{std::move(d)};
  }

 private:
  std::vector<Complex> c_;
};

}  // namespace plr
