#pragma once

// One-variable spectral factorization Q = P^*P with P analytic and outer.

#include <string>
#include <vector>

#include "trigfactor/matpoly.hpp"

namespace trigfactor {

struct Factor1dOptions {
  std::vector<int> n_blocks_schedule{64, 512, 4096, 32768};
  std::vector<double> eps_schedule{1e-2, 1e-4, 1e-6, 0.0};
  double residual_tol = 1e-8;
  int grid_size = 512;

  /// Throws ShapeError on empty or non-monotone schedules.
  void validate() const;
};

/// M_j = Schur complement on the leading j blocks of the (n+1)-block
/// Toeplitz truncation, j = 1..n. Throws NotPsdError when Q is not PSD.
std::vector<Matrix> corner_schur_sequence(const MatrixPoly1& q, int n);

struct Factor1dResult {
  MatrixPoly1 factor;       // analytic, degree <= deg Q
  double residual = 0.0;    // sup over the grid of |Q - P^*P|
  double eps = 0.0;         // regularization of the accepted attempt
  int n_blocks = 0;         // rows of the banded factorization
  int attempts = 0;         // (eps, n) checkpoints evaluated
  bool accepted = false;
};

/// Runs the full schedule and returns the best factor found, accepted or not.
/// Throws NotPsdError when Q is not pointwise PSD to -1e-8 on the grid.
Factor1dResult factor_1d_best(const MatrixPoly1& q, const Factor1dOptions& opts = {});

/// As factor_1d_best, but throws ConvergenceError carrying the best residual
/// when residual_tol is not reached.
Factor1dResult outer_factor_1d(const MatrixPoly1& q, const Factor1dOptions& opts = {});

/// sup over n equispaced points of the spectral norm of Q(z) - P(z)^*P(z).
double factor_residual_1d(const MatrixPoly1& q, const MatrixPoly1& p, int n);

struct OuterCheck {
  bool outer = false;
  std::string witness;          // offending root or "rank-deficient symbol"
  std::vector<Complex> roots;   // roots of det P
};

/// Roots of det P(z) from companion-matrix eigenvalues; outer iff every
/// root has modulus >= 1 - tol.
OuterCheck is_outer(const MatrixPoly1& p, double tol = 1e-6);

}  // namespace trigfactor
