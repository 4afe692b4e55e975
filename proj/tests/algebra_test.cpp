#include <gtest/gtest.h>

#include <cmath>

#include "plr/complex_matrix.hpp"
#include "plr/polynomial.hpp"
#include "plr/su2.hpp"
#include "testing_util.hpp"

using plr::CMatrix;
using plr::Complex;
using plr::Vec3;

namespace {

double cdist(Complex a, Complex b) { return std::abs(a - b); }

TEST(Determinant, IdentityIsOne) {
  EXPECT_NEAR(cdist(plr::det(CMatrix::identity(4)), Complex{1.0, 0.0}), 0.0, 1e-15);
}

TEST(Determinant, DiagonalProduct) {
  const CMatrix m = CMatrix::diagonal({Complex{0.0, 2.0}, Complex{3.0, 0.0}});
  EXPECT_NEAR(cdist(plr::det(m), Complex{0.0, 6.0}), 0.0, 1e-15);
}

TEST(Determinant, MatchesCofactorOracleOnRandom5x5) {
  for (int rep = 0; rep < 20; ++rep) {
    const CMatrix m = plrtest::random_matrix(5);
    const Complex lu = plr::det(m);
    const Complex oracle = plrtest::cofactor_det(m);
    EXPECT_LE(cdist(lu, oracle), 1e-10 * std::max(1.0, std::abs(oracle)));
  }
}

TEST(Determinant, Multiplicative4x4) {
  for (int rep = 0; rep < 20; ++rep) {
    const CMatrix a = plrtest::random_matrix(4);
    const CMatrix b = plrtest::random_matrix(4);
    const Complex lhs = plr::det(a * b);
    const Complex rhs = plr::det(a) * plr::det(b);
    EXPECT_LE(cdist(lhs, rhs), 1e-10 * std::max(1.0, std::abs(rhs)));
  }
}

TEST(Determinant, NonSquareRejected) {
  EXPECT_THROW(plr::det(CMatrix(2, 3)), plr::DimensionError);
}

TEST(ReplaceColumn, DirectSubstitution) {
  const CMatrix m = CMatrix::identity(2);
  const CMatrix r = plr::replace_column(m, 0, {Complex{0.0, 0.0}, Complex{1.0, 0.0}});
  EXPECT_EQ(r(0, 0), (Complex{0.0, 0.0}));
  EXPECT_EQ(r(1, 0), (Complex{1.0, 0.0}));
  EXPECT_EQ(r(0, 1), (Complex{0.0, 0.0}));
  EXPECT_EQ(r(1, 1), (Complex{1.0, 0.0}));
}

TEST(ReplaceColumn, OwnColumnIsIdentityOperation) {
  const CMatrix m = plrtest::random_matrix(3);
  const CMatrix r = plr::replace_column(m, 1, m.column(1));
  EXPECT_NEAR((r - m).frobenius_norm(), 0.0, 0.0);
}

TEST(ReplaceColumn, CramerNumeratorMatchesDirectSolve) {
  for (int rep = 0; rep < 10; ++rep) {
    const CMatrix m = plrtest::random_matrix(2);
    const std::vector<Complex> b{plrtest::random_unit_disk(), plrtest::random_unit_disk()};
    const auto x = plr::solve(m, b);
    const Complex d0 = plr::det(m);
    for (std::size_t k = 0; k < 2; ++k) {
      const Complex num = plr::det(plr::replace_column(m, k, b));
      EXPECT_LE(cdist(num / d0, x[k]), 1e-12);
    }
  }
}

TEST(ReplaceColumn, OutOfRangeRejected) {
  EXPECT_THROW(plr::replace_column(CMatrix::identity(2), 2, {Complex{}, Complex{}}),
               plr::DimensionError);
}

TEST(Su2, EmbedGoldenValues) {
  const CMatrix e3 = plr::su2_embed({0.0, 0.0, 1.0});
  EXPECT_NEAR(cdist(e3(0, 0), Complex{0.0, 0.5}), 0.0, 1e-16);
  EXPECT_NEAR(cdist(e3(1, 1), Complex{0.0, -0.5}), 0.0, 1e-16);
  EXPECT_NEAR(cdist(e3(0, 1), Complex{0.0, 0.0}), 0.0, 1e-16);

  const CMatrix e1 = plr::su2_embed({1.0, 0.0, 0.0});
  EXPECT_NEAR(cdist(e1(0, 1), Complex{-0.5, 0.0}), 0.0, 1e-16);
  EXPECT_NEAR(cdist(e1(1, 0), Complex{0.5, 0.0}), 0.0, 1e-16);
}

TEST(Su2, RoundTrip) {
  for (int rep = 0; rep < 100; ++rep) {
    const Vec3 v = plrtest::random_vec3(10.0);
    const Vec3 w = plr::su2_extract(plr::su2_embed(v));
    EXPECT_NEAR(w.x, v.x, 1e-14);
    EXPECT_NEAR(w.y, v.y, 1e-14);
    EXPECT_NEAR(w.z, v.z, 1e-14);
  }
}

TEST(Su2, EmbedIsLinear) {
  for (int rep = 0; rep < 20; ++rep) {
    const Vec3 a = plrtest::random_vec3();
    const Vec3 b = plrtest::random_vec3();
    const double al = 0.37, be = -1.21;
    const CMatrix lhs = plr::su2_embed(al * a + be * b);
    const CMatrix rhs = plr::su2_embed(a) * Complex{al, 0.0} + plr::su2_embed(b) * Complex{be, 0.0};
    EXPECT_LE((lhs - rhs).frobenius_norm(), 1e-15);
  }
}

TEST(Su2, ExtractRejectsNonAntiHermitian) {
  CMatrix m(2, 2, {Complex{1.0, 0.0}, Complex{}, Complex{}, Complex{-1.0, 0.0}});
  EXPECT_THROW(plr::su2_extract(m), plr::ConsistencyError);
}

TEST(Bracket, RightHandedBasis) {
  const Vec3 e3 = plr::cross_via_bracket({1, 0, 0}, {0, 1, 0});
  EXPECT_NEAR(e3.x, 0.0, 1e-15);
  EXPECT_NEAR(e3.y, 0.0, 1e-15);
  EXPECT_NEAR(e3.z, 1.0, 1e-15);
}

TEST(Bracket, AntisymmetryAndOrthogonality) {
  const Vec3 a = plrtest::random_vec3();
  const Vec3 self = plr::cross_via_bracket(a, a);
  EXPECT_NEAR(plr::norm(self), 0.0, 1e-14);
  EXPECT_NEAR(plr::inner_via_trace({1, 0, 0}, {0, 1, 0}), 0.0, 1e-15);
}

TEST(Bracket, MatchesComponentwiseDefinitions) {
  for (int rep = 0; rep < 50; ++rep) {
    const Vec3 a = plrtest::random_vec3(2.0);
    const Vec3 b = plrtest::random_vec3(2.0);
    const Vec3 via = plr::cross_via_bracket(a, b);
    const Vec3 direct = plr::cross(a, b);
    EXPECT_LE(plr::norm(via - direct), 1e-13);
    EXPECT_NEAR(plr::inner_via_trace(a, b), plr::dot(a, b), 1e-13);
    EXPECT_NEAR(plr::inner_via_trace(a, a), plr::dot(a, a), 1e-13);
  }
}

TEST(Polynomial, DerivativeOfMonicLeadingCoefficient) {
  plr::Polynomial p({Complex{2.0, 1.0}, Complex{0.0, 0.0}, Complex{-1.0, 0.5}, Complex{1.0, 0.0}});
  const auto d = p.derivative();
  EXPECT_EQ(d.degree(), 2u);
  EXPECT_NEAR(cdist(d.coeffs().back(), Complex{3.0, 0.0}), 0.0, 1e-16);
}

TEST(Polynomial, ConjugatedEvalAtRealLambda) {
  plr::Polynomial p({Complex{2.0, 1.0}, Complex{0.5, -0.25}, Complex{1.0, 3.0}});
  for (double lambda : {-2.0, -0.3, 0.0, 1.0, 2.5}) {
    const Complex direct = std::conj(p.eval(Complex{lambda, 0.0}));
    const Complex via = p.conjugated().eval(Complex{lambda, 0.0});
    EXPECT_LE(cdist(direct, via), 1e-15);
  }
}

TEST(Lu, SolveResidualSmall) {
  for (int rep = 0; rep < 10; ++rep) {
    const CMatrix m = plrtest::random_matrix(6);
    std::vector<Complex> b(6);
    for (auto& v : b) v = plrtest::random_unit_disk();
    const auto x = plr::solve(m, b);
    double resid = 0.0;
    for (std::size_t i = 0; i < 6; ++i) {
      Complex acc{0.0, 0.0};
      for (std::size_t j = 0; j < 6; ++j) acc += m(i, j) * x[j];
      resid = std::max(resid, std::abs(acc - b[i]));
    }
    EXPECT_LE(resid, 1e-11);
  }
}

TEST(Lu, InverseTimesSelfIsIdentity) {
  const CMatrix m = plrtest::random_matrix(4);
  EXPECT_LE(plr::unitarity_defect(CMatrix::identity(4)), 1e-15);
  EXPECT_LE((plr::inverse(m) * m - CMatrix::identity(4)).frobenius_norm(), 1e-11);
}

}  // namespace
