#pragma once

#include <functional>
#include <vector>

#include "plr/common.hpp"
#include "plr/complex_matrix.hpp"
#include "plr/su2.hpp"

namespace plr {

// Residual checks probe fields at arbitrary (s, t): lattice nodes plus
// stencil offsets. Callables keep the stencil step independent of the
// lattice spacing.
using ScalarField = std::function<double(double, double)>;
using ComplexField = std::function<Complex(double, double)>;
using VectorField = std::function<Vec3(double, double)>;
using MatrixField = std::function<CMatrix(double, double)>;

/// Rectangular probe lattice for residual sweeps and grid exports.
struct GridSpec {
  double s_min = -5.0, s_max = 5.0;
  double t_min = -5.0, t_max = 5.0;
  int ns = 11, nt = 11;

  std::vector<double> s_values() const { return linspace(s_min, s_max, ns); }
  std::vector<double> t_values() const { return linspace(t_min, t_max, nt); }

  static std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(n);
    if (n == 1) {
      v[0] = lo;
      return v;
    }
    const double step = (hi - lo) / (n - 1);
    for (int i = 0; i < n; ++i) v[i] = lo + step * i;
    return v;
  }
};

}  // namespace plr
