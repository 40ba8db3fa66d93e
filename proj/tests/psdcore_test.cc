#include "trigfactor/psdcore.hpp"

#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"
#include "trigfactor/errors.hpp"

namespace trigfactor {
namespace {

using testing::random_matrix;
using testing::random_psd;
using testing::random_unitary;

Matrix embed_corner(const Matrix& m, int n) {
  Matrix out = Matrix::Zero(n, n);
  out.topLeftCorner(m.rows(), m.cols()) = m;
  return out;
}

TEST(PsdCheck, Identity) {
  PsdCheck c = psd_project_check(Matrix::Identity(3, 3));
  EXPECT_TRUE(c.is_psd);
  EXPECT_NEAR(c.min_eigenvalue, 1.0, 1e-15);
}

TEST(PsdCheck, Indefinite) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = -0.5;
  PsdCheck c = psd_project_check(m);
  EXPECT_FALSE(c.is_psd);
  EXPECT_NEAR(c.min_eigenvalue, -0.5, 1e-15);
}

TEST(PsdCheck, RandomGram) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 10; ++i) {
    PsdCheck c = psd_project_check(random_psd(rng, 4, 2));
    EXPECT_TRUE(c.is_psd);
    EXPECT_GE(c.min_eigenvalue, -1e-12);
  }
}

TEST(PsdCheck, SkewPartRejected) {
  Matrix m = Matrix::Identity(2, 2);
  m(0, 1) = 1.0;
  EXPECT_FALSE(psd_project_check(m).is_psd);
  EXPECT_THROW(psd_project_check(Matrix::Zero(2, 3)), ShapeError);
}

TEST(HermitianEigen, OrderAndPhase) {
  std::mt19937_64 rng(2);
  Matrix m = random_psd(rng, 5) - 2.0 * Matrix::Identity(5, 5);
  HermitianEigen e = hermitian_eigen(m);
  for (int i = 1; i < 5; ++i) EXPECT_GE(e.values(i - 1), e.values(i));
  Matrix rebuilt = e.vectors * e.values.cast<Complex>().asDiagonal() * e.vectors.adjoint();
  EXPECT_LE((rebuilt - m).norm(), 1e-12);
  for (int j = 0; j < 5; ++j) {
    int r = 0;
    while (std::abs(e.vectors(r, j)) <= 1e-12) ++r;
    EXPECT_EQ(e.vectors(r, j).imag(), 0.0);
    EXPECT_GT(e.vectors(r, j).real(), 0.0);
  }
}

TEST(HermitianEigen, BitStableAcrossRuns) {
  std::mt19937_64 rng(3);
  Matrix m = random_psd(rng, 6);
  HermitianEigen a = hermitian_eigen(m);
  HermitianEigen b = hermitian_eigen(m);
  EXPECT_EQ(a.values, b.values);
  EXPECT_EQ(a.vectors, b.vectors);
}

TEST(HermitianPinv, PenroseConditions) {
  std::mt19937_64 rng(4);
  Matrix m = random_psd(rng, 5, 3);
  Matrix p = hermitian_pinv(m);
  EXPECT_LE((m * p * m - m).norm(), 1e-10 * m.norm());
  EXPECT_LE((p * m * p - p).norm(), 1e-10 * p.norm());
  EXPECT_LE(Matrix(m * p - (m * p).adjoint()).norm(), 1e-10);
}

TEST(PsdFactor, ZeroHasRankZero) {
  PsdFactorization f = psd_factor(Matrix::Zero(3, 3));
  EXPECT_EQ(f.effective_rank, 0);
  EXPECT_EQ(f.factor.rows(), 0);
  EXPECT_EQ(f.factor.cols(), 3);
}

TEST(PsdFactor, IdentityUpToUnitary) {
  PsdFactorization f = psd_factor(Matrix::Identity(3, 3));
  EXPECT_EQ(f.effective_rank, 3);
  EXPECT_LE((f.factor.adjoint() * f.factor - Matrix::Identity(3, 3)).norm(), 1e-14);
  EXPECT_LE((f.factor * f.factor.adjoint() - Matrix::Identity(3, 3)).norm(), 1e-14);
}

TEST(PsdFactor, RandomReconstruction) {
  std::mt19937_64 rng(5);
  for (int rank : {1, 3, 5}) {
    Matrix m = random_psd(rng, 5, rank);
    PsdFactorization f = psd_factor(m);
    EXPECT_EQ(f.effective_rank, rank);
    EXPECT_LE(spectral_norm(f.factor.adjoint() * f.factor - m), 1e-10 * spectral_norm(m));
    // Factoring the product again reproduces it.
    Matrix again = psd_factor(f.factor.adjoint() * f.factor).factor;
    EXPECT_LE(spectral_norm(again.adjoint() * again - m), 1e-10 * spectral_norm(m));
  }
}

TEST(PsdFactor, NotPsdCarriesEigenvalue) {
  Matrix m = -Matrix::Identity(2, 2);
  try {
    psd_factor(m);
    FAIL() << "expected NotPsdError";
  } catch (const NotPsdError& e) {
    EXPECT_NEAR(e.min_eigenvalue(), -1.0, 1e-15);
  }
}

TEST(Schur, IdentityCorner) {
  SchurResult s = schur_complement(Matrix::Identity(6, 6), 3);
  EXPECT_LE((s.value - Matrix::Identity(3, 3)).norm(), 1e-15);
}

TEST(Schur, RankOneGivesZero) {
  Matrix t = Matrix::Ones(2, 2);
  SchurResult s = schur_complement(t, 1);
  EXPECT_NEAR(std::abs(s.value(0, 0)), 0.0, 1e-14);
  EXPECT_LE(s.range_defect, 1e-12);
}

TEST(Schur, BlockDiagonalGivesLeadingBlockExactly) {
  std::mt19937_64 rng(6);
  Matrix a = random_psd(rng, 3);
  Matrix c = random_psd(rng, 4);
  Matrix t = Matrix::Zero(7, 7);
  t.topLeftCorner(3, 3) = a;
  t.bottomRightCorner(4, 4) = c;
  SchurResult s = schur_complement(t, 3);
  EXPECT_EQ(s.value, Matrix(0.5 * (a + a.adjoint())));
}

// <M f, f> is the infimum over g of |X1 f + X2 g|^2 for T = X^*X; the
// minimization is done by least squares on X, independently of C^+.
TEST(Schur, MatchesLeastSquaresInfimum) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 5; ++trial) {
    const int c = 2, n = 6;
    Matrix x = random_matrix(rng, 5, n);
    Matrix t = x.adjoint() * x;
    SchurResult s = schur_complement(t, c);
    Matrix x1 = x.leftCols(c);
    Matrix x2 = x.rightCols(n - c);
    Eigen::CompleteOrthogonalDecomposition<Matrix> cod(x2);
    for (int i = 0; i < 20; ++i) {
      Eigen::VectorXcd f = random_matrix(rng, c, 1);
      Eigen::VectorXcd g = cod.solve(-(x1 * f));
      const double inf = (x1 * f + x2 * g).squaredNorm();
      const double form = (f.adjoint() * s.value * f)(0, 0).real();
      EXPECT_NEAR(form, inf, 1e-8 * std::max(1.0, inf));
    }
  }
}

TEST(Schur, ComplementIsMemberAndMaximal) {
  std::mt19937_64 rng(8);
  const int c = 2, n = 5;
  Matrix t = random_psd(rng, n, 4);
  SchurResult s = schur_complement(t, c);
  EXPECT_GE(min_eigenvalue(t - embed_corner(s.value, n)), -1e-9);
  for (int i = 0; i < 10; ++i) {
    // Largest multiple of a random PSD direction that still fits under T.
    Matrix dir = random_psd(rng, c);
    double lo = 0.0, hi = 1e3;
    for (int it = 0; it < 80; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (min_eigenvalue(t - embed_corner(mid * dir, n)) >= -1e-13) lo = mid;
      else hi = mid;
    }
    Matrix probe = lo * dir;
    EXPECT_GE(min_eigenvalue(s.value - probe + 1e-8 * Matrix::Identity(c, c)), 0.0);
  }
}

TEST(Schur, Errors) {
  EXPECT_THROW(schur_complement(-Matrix::Identity(2, 2), 1), NotPsdError);
  EXPECT_THROW(schur_complement(Matrix::Identity(2, 2), 3), ShapeError);
  EXPECT_THROW(schur_complement(Matrix::Identity(2, 3), 1), ShapeError);
}

TEST(Contraction, IdentityTriple) {
  PsdFactorization e = psd_factor(Matrix::Identity(2, 2));
  PsdFactorization f = psd_factor(Matrix::Identity(2, 2));
  Contraction g = contraction_G(Matrix::Identity(2, 2), e, f, 1e-10);
  EXPECT_LE((g.g.adjoint() * g.g - Matrix::Identity(2, 2)).norm(), 1e-14);
  EXPECT_LE(g.defect_isometry, 1e-14);
  EXPECT_LE(g.defect_coisometry, 1e-14);
}

TEST(Contraction, ZeroOffDiagonal) {
  std::mt19937_64 rng(9);
  PsdFactorization e = psd_factor(random_psd(rng, 3));
  PsdFactorization f = psd_factor(random_psd(rng, 3));
  Contraction g = contraction_G(Matrix::Zero(3, 3), e, f, 1e-10);
  EXPECT_EQ(g.g.norm(), 0.0);
  EXPECT_NEAR(g.defect_isometry, 1.0, 1e-15);
  EXPECT_NEAR(g.defect_coisometry, 1.0, 1e-15);
}

TEST(Contraction, PlantedUnitary) {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 5; ++trial) {
    Matrix e = random_matrix(rng, 3, 3);
    Matrix f = random_matrix(rng, 3, 3);
    Matrix u = random_unitary(rng, 3);
    Matrix b = f.adjoint() * u * e;
    Contraction g = contraction_G(b, psd_factor(e.adjoint() * e), psd_factor(f.adjoint() * f),
                                  1e-8);
    EXPECT_LE(g.defect_isometry, 1e-8);
    EXPECT_LE(g.defect_coisometry, 1e-8);
  }
}

TEST(Contraction, RankDeficientSides) {
  std::mt19937_64 rng(11);
  Matrix e = random_matrix(rng, 1, 3);
  Matrix f = random_matrix(rng, 2, 3);
  Matrix w = random_matrix(rng, 2, 1);
  w /= w.norm();
  Matrix b = f.adjoint() * w * e;
  Contraction g = contraction_G(b, psd_factor(e.adjoint() * e), psd_factor(f.adjoint() * f),
                                1e-8);
  EXPECT_EQ(g.g.rows(), 2);
  EXPECT_EQ(g.g.cols(), 1);
  EXPECT_LE(g.defect_isometry, 1e-8);
  EXPECT_NEAR(g.defect_coisometry, 1.0, 1e-8);
}

TEST(Contraction, InconsistentTripleRejected) {
  PsdFactorization e = psd_factor(Matrix::Zero(2, 2));
  PsdFactorization f = psd_factor(Matrix::Identity(2, 2));
  EXPECT_THROW(contraction_G(Matrix::Identity(2, 2), e, f, 1e-8), ShapeError);
  EXPECT_THROW(contraction_G(Matrix::Identity(3, 3), f, f, 1e-8), ShapeError);
}

TEST(SpectralNorm, Values) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = Complex(3.0, 4.0);
  EXPECT_NEAR(spectral_norm(m), 5.0, 1e-14);
  EXPECT_EQ(spectral_norm(Matrix(0, 0)), 0.0);
}

}  // namespace
}  // namespace trigfactor
