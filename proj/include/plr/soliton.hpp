#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <sstream>
#include <vector>

#include "plr/common.hpp"
#include "plr/complex_matrix.hpp"
#include "plr/polynomial.hpp"

namespace plr {

/// Input of the Date construction: spectral points alpha_j, constants c_j,
/// phase offset v0 for the third solution field.
struct SolitonParams {
  int n = 0;
  std::vector<Complex> alpha;
  std::vector<Complex> c;
  double v0 = 0.0;
};

/// Validates the parameter constraints: alpha_j mutually distinct, nonzero,
/// imaginary parts all of one sign. Throws ValidationError naming offenders.
inline void validate(const SolitonParams& p) {
  std::ostringstream msg;
  bool bad = false;
  if (p.n < 1 || static_cast<int>(p.alpha.size()) != p.n || static_cast<int>(p.c.size()) != p.n) {
    msg << "need N >= 1 with N alphas and N constants; ";
    bad = true;
  } else {
    for (int j = 0; j < p.n; ++j) {
      if (std::abs(p.alpha[j]) == 0.0) {
        msg << "alpha_" << (j + 1) << " = 0 (inverse appears in the phase); ";
        bad = true;
      }
      for (int k = j + 1; k < p.n; ++k)
        if (std::abs(p.alpha[j] - p.alpha[k]) <= 1e-12) {
          msg << "alpha_" << (j + 1) << " and alpha_" << (k + 1) << " coincide; ";
          bad = true;
        }
    }
    for (int j = 0; j < p.n; ++j) {
      if (p.alpha[j].imag() == 0.0) {
        msg << "alpha_" << (j + 1) << " is real (zero imaginary part); ";
        bad = true;
      } else if ((p.alpha[j].imag() > 0) != (p.alpha[0].imag() > 0)) {
        msg << "Im alpha_" << (j + 1) << " and Im alpha_1 have opposite signs; ";
        bad = true;
      }
    }
  }
  if (bad) throw ValidationError("invalid soliton parameters: " + msg.str());
}

inline bool is_valid(const SolitonParams& p) {
  try {
    validate(p);
    return true;
  } catch (const ValidationError&) {
    return false;
  }
}

/// e(lambda) = exp((i/2)(lambda s + t / lambda)).
inline Complex phase_e(double s, double t, Complex lambda) {
  if (std::abs(lambda) == 0.0) throw ValidationError("phase_e: lambda must be nonzero");
  return std::exp(Complex{0.0, 0.5} * (lambda * s + t / lambda));
}

struct LinearSystem {
  CMatrix t0;               // 2N x 2N
  std::vector<Complex> b;   // 2N
};

/// Assembles T0 psi = b from the Vandermonde block A, the phase diagonal E
/// and the constant diagonal C:
///   T0 = [[E A, -C E^{-1} A], [conj(C E^{-1} A), conj(E A)]],
///   b  = -( alpha_j^N e(alpha_j) ; conj(alpha_j)^N conj(c_j) e(conj(alpha_j)) ).
inline LinearSystem build_system(const SolitonParams& p, double s, double t) {
  validate(p);
  const int n = p.n;
  CMatrix t0(2 * n, 2 * n);
  std::vector<Complex> b(2 * n);
  for (int j = 0; j < n; ++j) {
    const Complex a = p.alpha[j];
    const Complex ea = phase_e(s, t, a);
    const Complex eainv = 1.0 / ea;  // e(-alpha_j)
    Complex pow{1.0, 0.0};
    for (int k = 0; k < n; ++k) {
      const Complex top_left = ea * pow;
      const Complex top_right = -p.c[j] * eainv * pow;
      t0(j, k) = top_left;
      t0(j, n + k) = top_right;
      t0(n + j, k) = std::conj(-top_right);  // conj(C E^{-1} A), no sign
      t0(n + j, n + k) = std::conj(top_left);
      pow *= a;
    }
    // pow = alpha_j^N here; e(conj(alpha_j)) = conj(e(-alpha_j)).
    b[j] = -pow * ea;
    b[n + j] = -std::conj(pow * eainv) * std::conj(p.c[j]);
  }
  return {std::move(t0), std::move(b)};
}

/// Cramer determinants d_0 .. d_2N at one (s, t).
struct DeterminantBundle {
  double s = 0.0, t = 0.0;
  std::vector<Complex> d;  // size 2N+1, d[0] = det T0

  int n() const { return static_cast<int>((d.size() - 1) / 2); }
  Complex ratio(std::size_t k) const { return d[k] / d[0]; }
};

inline DeterminantBundle determinants(const SolitonParams& p, double s, double t) {
  const auto sys = build_system(p, s, t);
  const std::size_t m = sys.b.size();
  DeterminantBundle bundle;
  bundle.s = s;
  bundle.t = t;
  bundle.d.resize(m + 1);
  bundle.d[0] = det(sys.t0);
  double dmax = std::abs(bundle.d[0]);
  for (std::size_t k = 0; k < m; ++k) {
    bundle.d[k + 1] = det(replace_column(sys.t0, k, sys.b));
    dmax = std::max(dmax, std::abs(bundle.d[k + 1]));
  }
  if (std::abs(bundle.d[0]) <= 1e-14 * std::max(1.0, dmax)) {
    std::ostringstream msg;
    msg << "coefficient matrix numerically singular at (s,t)=(" << s << "," << t
        << "): |d0| = " << std::abs(bundle.d[0]);
    throw SingularityError(msg.str());
  }
  return bundle;
}

/// f (monic, degree N) and g (degree N-1) of the wave-function entries.
struct PolyPair {
  Polynomial f;
  Polynomial g;
};

inline PolyPair fg_polynomials(const DeterminantBundle& bundle) {
  const int n = bundle.n();
  std::vector<Complex> fc(n + 1), gc(n);
  for (int j = 0; j < n; ++j) {
    fc[j] = bundle.ratio(j + 1);
    gc[j] = -bundle.ratio(n + j + 1);
  }
  fc[n] = Complex{1.0, 0.0};
  return {Polynomial{std::move(fc)}, Polynomial{std::move(gc)}};
}

/// Solution fields of the PLR system at one point. `v_defined` is false at
/// gap samples where d_{N+1} vanishes and the argument is meaningless.
struct PlrFields {
  Complex a;
  double u = 0.0;
  double v = 0.0;
  Complex q;
  bool v_defined = true;
};

inline double clamped_acos(double x) {
  if (x > 1.0) {
    if (x > 1.0 + kClampEps) throw ConsistencyError("arccos argument exceeds 1 beyond tolerance");
    x = 1.0;
  } else if (x < -1.0) {
    if (x < -1.0 - kClampEps) throw ConsistencyError("arccos argument below -1 beyond tolerance");
    x = -1.0;
  }
  return std::acos(x);
}

inline PlrFields fields_from_bundle(const DeterminantBundle& bundle, double v0) {
  const int n = bundle.n();
  const Complex r1 = bundle.ratio(1);
  const Complex rn1 = bundle.ratio(n + 1);
  const double denom = std::norm(r1) + std::norm(rn1);
  if (denom == 0.0) throw SingularityError("degenerate point: |d1| = |d_{N+1}| = 0");
  PlrFields out;
  out.a = kI * std::conj(bundle.ratio(2 * n));
  out.q = out.a;
  out.u = clamped_acos((std::norm(r1) - std::norm(rn1)) / denom);
  if (std::abs(rn1) == 0.0) {
    out.v = 0.0;
    out.v_defined = false;
  } else {
    out.v = 2.0 * std::arg(std::conj(rn1)) + v0;
  }
  return out;
}

inline PlrFields solution_fields(const SolitonParams& p, double s, double t) {
  return fields_from_bundle(determinants(p, s, t), p.v0);
}

/// Result of the sine-Gordon parameter test: sigma, when found, maps index j
/// to sigma[j] with conj(alpha_j) = -alpha_sigma(j) and conj(c_j) = -c_sigma(j).
struct SineGordonCheck {
  bool holds = false;
  std::vector<int> sigma;
};

inline SineGordonCheck is_sine_gordon(const SolitonParams& p, double tol = 1e-10) {
  validate(p);
  if (p.n > 8) throw ValidationError("sine-Gordon permutation search limited to N <= 8");
  std::vector<int> perm(p.n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (int j = 0; j < p.n && ok; ++j) {
      ok = std::abs(std::conj(p.alpha[j]) + p.alpha[perm[j]]) <= tol &&
           std::abs(std::conj(p.c[j]) + p.c[perm[j]]) <= tol;
    }
    if (ok) return {true, perm};
  } while (std::next_permutation(perm.begin(), perm.end()));
  return {false, {}};
}

struct RealityReport {
  bool skipped = false;
  std::string reason;
  double max_imag = 0.0;
};

/// Max over the grid and over k of |Im(d_k / d_0)|. Blanket reality of the
/// ratios does NOT follow from the sine-Gordon parameter condition (see
/// sg_parity_check for the structure that does hold); this literal measure
/// is kept as a diagnostic.
inline RealityReport reality_check(const SolitonParams& p, const std::vector<double>& sValues,
                                   const std::vector<double>& tValues) {
  if (!is_sine_gordon(p).holds)
    return {true, "sine-Gordon parameter condition does not hold", 0.0};
  RealityReport rep;
  for (double t : tValues)
    for (double s : sValues) {
      const auto bundle = determinants(p, s, t);
      for (std::size_t k = 1; k < bundle.d.size(); ++k)
        rep.max_imag = std::max(rep.max_imag, std::abs(bundle.ratio(k).imag()));
    }
  return rep;
}

/// What the sine-Gordon parameter condition actually forces on the Cramer
/// ratios: i^{N-j} (d_{j+1}/d_0) and i^{N-j-1} (d_{N+j+1}/d_0) are real for
/// j = 0..N-1, so every ratio is real or purely imaginary in an alternating
/// pattern. Returns the max deviation from that pattern over the grid;
/// machine-small when the condition holds. Consequences: v is constant
/// modulo 2 pi and q = 2 i conj(d_2N/d_0) has constant phase (torsion 1).
inline RealityReport sg_parity_check(const SolitonParams& p, const std::vector<double>& sValues,
                                     const std::vector<double>& tValues) {
  if (!is_sine_gordon(p).holds)
    return {true, "sine-Gordon parameter condition does not hold", 0.0};
  const int n = p.n;
  const auto ipow = [](int k) {
    static const Complex table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return table[((k % 4) + 4) % 4];
  };
  RealityReport rep;
  for (double t : tValues)
    for (double s : sValues) {
      const auto bundle = determinants(p, s, t);
      for (int j = 0; j < n; ++j) {
        rep.max_imag =
            std::max(rep.max_imag, std::abs((ipow(n - j) * bundle.ratio(j + 1)).imag()));
        rep.max_imag =
            std::max(rep.max_imag, std::abs((ipow(n - j - 1) * bundle.ratio(n + j + 1)).imag()));
      }
    }
  return rep;
}

}  // namespace plr
