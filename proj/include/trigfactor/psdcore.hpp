#pragma once

// Positive semidefinite matrix utilities: checks, thin factorizations,
// Schur complements and the contraction linking two factorizations.

#include <Eigen/Dense>

#include "trigfactor/matpoly.hpp"

namespace trigfactor {

inline constexpr double kRankTol = 1e-10;

struct PsdCheck {
  bool is_psd = false;
  double min_eigenvalue = 0.0;
};

/// is_psd iff the hermitian part has min eigenvalue >= -tol and the
/// anti-hermitian part has max-abs entry <= tol.
PsdCheck psd_project_check(const Matrix& m, double tol = kRankTol);

/// Eigen-decomposition of the hermitian part with descending eigenvalues.
/// Each eigenvector is rotated so its first entry above 1e-12 in modulus is
/// real and positive; ties keep the solver's order. Bit-stable across runs.
struct HermitianEigen {
  Eigen::VectorXd values;
  Matrix vectors;
};
HermitianEigen hermitian_eigen(const Matrix& m);

/// Smallest eigenvalue of the hermitian part.
double min_eigenvalue(const Matrix& m);

/// Moore-Penrose inverse of the hermitian part of m; eigenvalues with
/// |lambda| <= rank_tol * max|lambda| are treated as zero.
Matrix hermitian_pinv(const Matrix& m, double rank_tol = kRankTol);

/// Thin factor M = E^*E from the eigen-decomposition.
struct PsdFactorization {
  Matrix factor;                // r x n, rows = sqrt(lambda_i) v_i^*
  int effective_rank = 0;       // r
  Matrix range_basis;           // n x r orthonormal, spans ran M
  Eigen::VectorXd singular;     // sqrt(lambda_i), descending
};

/// Eigenvalues below rank_tol * lambda_max are dropped. Throws NotPsdError
/// when the min eigenvalue is below -neg_tol * max(1, lambda_max); a
/// negative neg_tol means "use rank_tol".
PsdFactorization psd_factor(const Matrix& m, double rank_tol = kRankTol,
                            double neg_tol = -1.0);

struct SchurResult {
  Matrix value;               // A - B^* C^+ B, hermitian
  double range_defect = 0.0;  // |(I - P_C) B| / max(1, |B|)
};

/// T = [[A, B^*], [B, C]] with A the leading corner_dim block. Throws
/// NotPsdError when T has an eigenvalue below -psd_tol * max(1, |T|).
SchurResult schur_complement(const Matrix& t, int corner_dim,
                             double rank_tol = kRankTol, double psd_tol = 1e-9);

/// For B = F^* G E with A - M = E^*E (e_side) and M = F^*F (f_side):
/// G = (F^*)^+ B E^+, a map ran E -> ran F.
struct Contraction {
  Matrix g;                       // r_F x r_E
  double defect_isometry = 0.0;   // max |sigma_i - 1| over r_E slots
  double defect_coisometry = 0.0; // max |sigma_i - 1| over r_F slots
  double consistency = 0.0;       // |F^* G E - B|
};

/// Throws ShapeError when |F^* G E - B| > tol * |B| (the triple is not a
/// member of the set).
Contraction contraction_G(const Matrix& b, const PsdFactorization& e_side,
                          const PsdFactorization& f_side, double tol);

/// Largest singular value.
double spectral_norm(const Matrix& m);

}  // namespace trigfactor
