#include "trigfactor/certify.hpp"

#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"
#include "trigfactor/errors.hpp"
#include "trigfactor/psdcore.hpp"

namespace trigfactor {
namespace {

Matrix scalar(double v) { return Matrix::Constant(1, 1, v); }

MatrixPoly1 two_minus_z() { return MatrixPoly1::Hermitian(1, 1, {{0, scalar(2)}, {1, scalar(-1)}}); }

MatrixPoly1 one_minus_z() { return MatrixPoly1::Analytic(1, 1, 1, {{0, scalar(1)}, {1, scalar(-1)}}); }

MatrixPoly2 identity2(int k) { return MatrixPoly2::Hermitian(k, {0, 0}, {{{0, 0}, Matrix::Identity(k, k)}}); }

TEST(Verify2d, IdentityPair) {
  std::vector<MatrixPoly2> f{MatrixPoly2::Analytic(2, 2, {0, 0}, {{{0, 0}, Matrix::Identity(2, 2)}})};
  VerifyReport r = verify_certificate(identity2(2), f);
  EXPECT_EQ(r.residual_sup, 0.0);
  EXPECT_EQ(r.residual_rms, 0.0);
  EXPECT_TRUE(r.degree_ok);
  EXPECT_TRUE(r.count_ok);
  EXPECT_NEAR(r.min_eig, 1.0, 1e-15);
  ASSERT_EQ(r.argmin.size(), 2u);
}

TEST(Verify2d, GridIsOffsetByHalfAStep) {
  // 2 + z1 z2 + conj vanishes where z1 z2 = -1, which the offset grid hits.
  MatrixPoly2 q = MatrixPoly2::Hermitian(1, {1, 1}, {{{0, 0}, scalar(2)}, {{1, 1}, scalar(1)}});
  VerifyReport r = verify_certificate(q, {}, 8);
  EXPECT_NEAR(r.min_eig, 0.0, 1e-14);
  EXPECT_NEAR(r.argmin[0] * 8 - std::floor(r.argmin[0] * 8), 0.5, 1e-12);
}

TEST(Verify2d, DegreeAndCountFlags) {
  MatrixPoly2 q = MatrixPoly2::Hermitian(1, {1, 1}, {{{0, 0}, scalar(2)}, {{1, 1}, scalar(1)}});
  // Box is (1, 1) with at most 2 factors.
  MatrixPoly2 inside = MatrixPoly2::Analytic(1, 1, {1, 1}, {{{1, 1}, scalar(1)}});
  MatrixPoly2 outside = MatrixPoly2::Analytic(1, 1, {2, 1}, {{{2, 0}, scalar(1e-3)}});
  EXPECT_TRUE(verify_certificate(q, {inside}).degree_ok);
  EXPECT_FALSE(verify_certificate(q, {inside, outside}).degree_ok);
  EXPECT_TRUE(verify_certificate(q, {inside, inside}).count_ok);
  EXPECT_FALSE(verify_certificate(q, {inside, inside, inside}).count_ok);
}

TEST(Verify2d, ZeroStoredCoefficientOutsideBoxIsIgnored) {
  MatrixPoly2 q = MatrixPoly2::Hermitian(1, {1, 1}, {{{0, 0}, scalar(2)}, {{1, 1}, scalar(1)}});
  MatrixPoly2 f = MatrixPoly2::Analytic(1, 1, {3, 3}, {{{0, 0}, scalar(1)}, {{3, 3}, scalar(0)}});
  EXPECT_TRUE(verify_certificate(q, {f}).degree_ok);
}

TEST(Verify2d, Z2FreePolynomialAllowsOneFactor) {
  MatrixPoly2 q = MatrixPoly2::Hermitian(1, {1, 0}, {{{0, 0}, scalar(2)}, {{1, 0}, scalar(-1)}});
  MatrixPoly2 f = MatrixPoly2::Analytic(1, 1, {1, 0}, {{{0, 0}, scalar(1)}, {{1, 0}, scalar(-1)}});
  VerifyReport r = verify_certificate(q, {f});
  EXPECT_LE(r.residual_sup, 1e-14);
  EXPECT_TRUE(r.degree_ok);
  EXPECT_TRUE(r.count_ok);
  EXPECT_FALSE(verify_certificate(q, {f, f}).count_ok);
}

TEST(Verify2d, CorruptedFactorIsDetected) {
  MatrixPoly2 q = MatrixPoly2::Hermitian(1, {1, 1}, {{{0, 0}, scalar(2)}, {{1, 1}, scalar(1)}});
  MatrixPoly2 good = MatrixPoly2::Analytic(1, 1, {1, 1}, {{{0, 0}, scalar(1)}, {{1, 1}, scalar(1)}});
  MatrixPoly2 bad = MatrixPoly2::Analytic(1, 1, {1, 1}, {{{0, 0}, scalar(1.1)}, {{1, 1}, scalar(1)}});
  EXPECT_LE(verify_certificate(q, {good}).residual_sup, 1e-14);
  EXPECT_GE(verify_certificate(q, {bad}).residual_sup, 0.05);
}

TEST(Verify2d, Errors) {
  std::vector<MatrixPoly2> f{MatrixPoly2::Zero(1, 3, {0, 0})};
  EXPECT_THROW(verify_certificate(identity2(2), f), ShapeError);
  EXPECT_THROW(verify_certificate(identity2(2), {}, 0), ShapeError);
}

TEST(Verify1d, TwoMinusZ) {
  VerifyReport r = verify_certificate(two_minus_z(), {one_minus_z()});
  EXPECT_LE(r.residual_sup, 1e-12);
  EXPECT_TRUE(r.degree_ok);
  EXPECT_TRUE(r.count_ok);
}

TEST(Verify1d, CorruptedFactor) {
  MatrixPoly1 bad = MatrixPoly1::Analytic(1, 1, 1, {{0, scalar(1.1)}, {1, scalar(-1)}});
  EXPECT_GE(verify_certificate(two_minus_z(), {bad}).residual_sup, 0.05);
}

TEST(Verify1d, FlagsAndErrors) {
  MatrixPoly1 high = MatrixPoly1::Analytic(1, 1, 2, {{2, scalar(1)}});
  EXPECT_FALSE(verify_certificate(two_minus_z(), {high}).degree_ok);
  EXPECT_FALSE(verify_certificate(two_minus_z(), {one_minus_z(), one_minus_z()}).count_ok);
  EXPECT_THROW(verify_certificate(two_minus_z(), {MatrixPoly1::Zero(2, 2, 0)}), ShapeError);
}

TEST(PsdGrid, Identity) {
  EXPECT_NEAR(psd_check_poly(identity2(2), 8, 8).min_eigenvalue, 1.0, 1e-15);
  MatrixPoly1 i1 = MatrixPoly1::Hermitian(2, 0, {{0, Matrix::Identity(2, 2)}});
  EXPECT_NEAR(psd_check_poly(i1, 8).min_eigenvalue, 1.0, 1e-15);
}

TEST(PsdGrid, TwoMinusZTouchesZeroAtOne) {
  PsdGridReport r = psd_check_poly(two_minus_z(), 16);
  EXPECT_NEAR(r.min_eigenvalue, 0.0, 1e-15);
  ASSERT_EQ(r.argmin.size(), 1u);
  EXPECT_EQ(r.argmin[0], 0.0);
}

TEST(PsdGrid, RandomSumsOfSquares) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<MatrixPoly2> fs{testing::random_analytic2(rng, 2, 2, 2)};
    EXPECT_GE(psd_check_poly(hermitian_square_sum(fs), 32, 32).min_eigenvalue, -1e-10);
  }
}

TEST(PsdGrid, Errors) {
  EXPECT_THROW(psd_check_poly(two_minus_z(), 0), ShapeError);
  EXPECT_THROW(psd_check_poly(identity2(1), 4, 0), ShapeError);
}

TEST(Cesaro, TriangularWeightsExactly) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 5; ++trial) {
    MatrixPoly1 p = testing::random_general1(rng, 2, 2, 3);
    for (int n : {3, 5, 9}) {
      MatrixPoly1 c = cesaro_smooth(p, n);
      for (int k = -3; k <= 3; ++k) {
        const double w = static_cast<double>(n + 1 - std::abs(k)) / (n + 1);
        EXPECT_EQ(c.coeff(k), Matrix(w * p.coeff(k)));
      }
    }
  }
}

TEST(Cesaro, TwoMinusZAtOne) {
  MatrixPoly1 c = cesaro_smooth(two_minus_z(), 1);
  MatrixPoly1 expected = MatrixPoly1::Hermitian(1, 1, {{0, scalar(2)}, {1, scalar(-0.5)}});
  EXPECT_EQ(max_coeff_diff(c, expected), 0.0);
  EXPECT_TRUE(c.is_hermitian());
}

TEST(Cesaro, LowOrderDropsHighDegrees) {
  MatrixPoly1 c = cesaro_smooth(two_minus_z(), 0);
  EXPECT_EQ(c.degree(), 0);
  EXPECT_EQ(c.coeff(0)(0, 0), Complex(2.0, 0.0));
  EXPECT_EQ(c.coeff(1).norm(), 0.0);
}

TEST(Cesaro, PreservesPositivity) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<MatrixPoly1> fs{testing::random_analytic1(rng, 2, 4)};
    MatrixPoly1 c = cesaro_smooth(hermitian_square_sum(fs), 3);
    EXPECT_GE(psd_check_poly(c, 1024).min_eigenvalue, -1e-10);
  }
}

TEST(Cesaro, ConvergesToTheInput) {
  std::mt19937_64 rng(4);
  MatrixPoly1 p = testing::random_general1(rng, 2, 2, 4);
  double pnorm = 0.0;
  for (const auto& [k, c] : p.coeffs()) pnorm = std::max(pnorm, c.cwiseAbs().maxCoeff());
  for (int n : {10, 100}) {
    EXPECT_LE(max_coeff_diff(cesaro_smooth(p, n), p), 4.0 * pnorm / (n + 1));
  }
  EXPECT_THROW(cesaro_smooth(p, -1), ShapeError);
}

}  // namespace
}  // namespace trigfactor
