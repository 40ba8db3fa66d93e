#pragma once

// Two-variable sums of hermitian squares: regroup along z2 into a
// tridiagonal pencil, pick a degree-d1 member M of the pencil's set pointwise
// in z1, factor H = [[A - M, B^*], [B, M]] in one variable and unpack.

#include <map>
#include <string>
#include <vector>

#include "trigfactor/certify.hpp"
#include "trigfactor/fr1d.hpp"
#include "trigfactor/matpoly.hpp"

namespace trigfactor {

struct Factor2dOptions {
  int grid_size = 0;          // 0: max(64, 8 d1)
  int max_doublings = 4;
  double mset_tol = 1e-7;
  int max_iter = 500;
  double degree_tol = 1e-6;
  double certificate_tol = 1e-5;
  int verify_grid = 64;
  /// Fall back to a projected search for a degree-d1 member when the
  /// extremal symbols fail degree validation.
  bool member_search = true;
  Factor1dOptions fr1d;
};

struct ExtremalSymbolPair {
  MatrixPoly1 a_hat;                  // hermitian, degree <= d1
  MatrixPoly1 m_hat;                  // hermitian, degree <= d1
  std::vector<double> decay_report;   // max coefficient norm at degree d1+1, d1+2, ...
  double leading_norm = 0.0;          // max coefficient norm at degree <= d1
  double tail_ratio = 0.0;            // max(decay_report) / leading_norm
  int grid_size = 0;
  int max_iterations = 0;             // largest pointwise extremalization count
  bool degree_ok = false;             // tail_ratio <= degree_tol
};

/// Pointwise extremalization of (A(w), B(w)) on n frequencies followed by
/// Fourier analysis of the symbols. Throws StageError naming the frequency
/// when a pointwise problem fails. Truncation to degree d1 always happens;
/// degree_ok reports whether the discarded tail was negligible.
ExtremalSymbolPair compute_extremal_pair(const PencilPair& pair, int n,
                                         const Factor2dOptions& opts = {});

struct MemberSearchResult {
  MatrixPoly1 m;          // hermitian, degree <= d1
  double margin = 0.0;    // min eigenvalue of H over the check grid
  int iterations = 0;
  bool feasible = false;
};

/// Alternating projection between {H(w) >= delta} pointwise and hermitian
/// polynomials of degree <= d1, started from `start` and run through a
/// decreasing delta schedule.
MemberSearchResult search_polynomial_member(const PencilPair& pair, const MatrixPoly1& start,
                                            int n);

/// H = [[A - M, B^*], [B, M]]; throws NotPsdError when H has an eigenvalue
/// below -psd_tol * max(1, |H|) on an n-point grid.
MatrixPoly1 assemble_H(const PencilPair& pair, const MatrixPoly1& m, int n = 512,
                       double psd_tol = 1e-7);

/// Row group g of P_H (k rows) becomes F_g = d2^{-1/2} sum_p P_H[g, p] z2^{2 d2 - 1 - p}
/// over block columns p. Identically zero factors are dropped.
std::vector<MatrixPoly2> unpack_factors(const MatrixPoly1& p_h, int d1, int d2, int k);

struct SosCertificate {
  std::vector<MatrixPoly2> factors;
  Index2 degree_box{0, 0};    // (d1, 2 d2 - 1)
  double residual = 0.0;      // sup over the verification grid
  double residual_rms = 0.0;
  bool degree_ok = false;
  bool count_ok = false;
  bool accepted = false;
  std::string route;          // "one-variable", "extremal" or "member-search"
  std::map<std::string, double> metadata;
};

/// Full pipeline. Stage failures are rethrown as StageError; a residual above
/// certificate_tol yields a certificate with accepted = false.
SosCertificate factor_2d(const MatrixPoly2& q, const Factor2dOptions& opts = {});

/// (n1, n2) -> (n2, n1).
MatrixPoly2 swap_variables(const MatrixPoly2& q);

}  // namespace trigfactor
