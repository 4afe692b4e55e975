#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace plr {

using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};

// Tolerance for structural checks (anti-Hermiticity, unitarity, reality).
inline constexpr double kAlgEps = 1e-10;

// Ratios fed to arccos may drift past [-1,1] by rounding; clamp within
// this margin, reject beyond it.
inline constexpr double kClampEps = 1e-12;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class SingularityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace plr
