#pragma once

// Independent checks of factorizations and positivity on torus grids, and
// the Cesaro (Fejer-weight) finite-degree smoothing.

#include <vector>

#include "trigfactor/matpoly.hpp"

namespace trigfactor {

struct VerifyReport {
  double residual_sup = 0.0;
  double residual_rms = 0.0;
  bool degree_ok = false;
  bool count_ok = false;
  double min_eig = 0.0;
  std::vector<double> argmin;  // angles t with z = exp(2 pi i t)
};

/// Two-variable certificate check on an n x n grid offset by half a step.
/// degree box (d1, 2 d2 - 1) and at most 2 d2 factors, where (d1, d2) is the
/// declared degree of q (a z2-free q allows one factor of degree (d1, 0)).
VerifyReport verify_certificate(const MatrixPoly2& q, const std::vector<MatrixPoly2>& factors,
                                int n = 64);

/// One-variable check on n offset points: a single analytic factor of degree
/// at most deg q.
VerifyReport verify_certificate(const MatrixPoly1& q, const std::vector<MatrixPoly1>& factors,
                                int n = 512);

struct PsdGridReport {
  double min_eigenvalue = 0.0;
  std::vector<double> argmin;
};

/// Minimum eigenvalue over the grid z_j = exp(2 pi i j / n) (per variable).
PsdGridReport psd_check_poly(const MatrixPoly1& q, int n);
PsdGridReport psd_check_poly(const MatrixPoly2& q, int n1, int n2);

/// Coefficient k scaled by max(0, (n + 1 - |k|) / (n + 1)); degree min(deg, n).
MatrixPoly1 cesaro_smooth(const MatrixPoly1& p, int n);

}  // namespace trigfactor
