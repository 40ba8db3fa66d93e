#pragma once

// The convex set of PSD matrices M with [[A - M, B^*], [B, M]] >= 0 attached
// to a tridiagonal block Toeplitz pencil (diagonal A, subdiagonal B): its
// extreme elements, the singleton test, and the shrinking iteration on A.

#include <string>
#include <vector>

#include "trigfactor/psdcore.hpp"

namespace trigfactor {

inline constexpr double kMsetTol = 1e-7;
inline constexpr int kMsetMaxIter = 500;

/// [[A - M, B^*], [B, M]] is PSD within tol.
bool mset_membership(const Matrix& a, const Matrix& b, const Matrix& m,
                     double tol = kRankTol);

/// Maximal element: the first-block Schur complement of the semi-infinite
/// tridiagonal operator. The recursion S <- A - B^* S^+ B is evaluated by
/// cyclic reduction, which visits S_{2^j}; it stops once the corner update
/// is below tol * max(1, |A|). Throws NotPsdError when the operator is not
/// PSD and ConvergenceError after max_iter reduction steps.
Matrix m_plus(const Matrix& a, const Matrix& b, double tol = 1e-14,
              int max_iter = 200);

/// Minimal element A - N, with N the maximal element for (A, B^*).
Matrix m_minus(const Matrix& a, const Matrix& b, double tol = 1e-14,
               int max_iter = 200);

/// Factorizations A - M = E^*E, M = F^*F and the contraction G of a member.
struct MemberAnalysis {
  PsdFactorization e_side;
  PsdFactorization f_side;
  Contraction contraction;
};
MemberAnalysis analyze_member(const Matrix& a, const Matrix& b, const Matrix& m);

struct DefectPair {
  double isometry = 0.0;
  double coisometry = 0.0;
};

struct MSetReport {
  Matrix m_plus;
  Matrix m_minus;
  Matrix m_star;
  double gap = 0.0;  // spectral norm of m_plus - m_minus
  DefectPair star_defects;
  DefectPair plus_defects;
  DefectPair minus_defects;
  bool is_singleton = false;

  double max_defect() const;
};

MSetReport extremality_report(const Matrix& a, const Matrix& b, double tol = kMsetTol);

enum class ShrinkKind { kShrinkESide, kShrinkFSide };
std::string to_string(ShrinkKind kind);

struct ShrinkStep {
  ShrinkKind kind;
  double decrement = 0.0;            // spectral norm of A_k - A_{k+1}
  double decrement_min_eig = 0.0;    // min eigenvalue of A_k - A_{k+1}
};

struct ExtremalizationResult {
  Matrix a_hat;
  Matrix m_hat;
  int iterations = 0;
  std::vector<ShrinkStep> trace_log;
  MSetReport final_report;
};

/// Shrinks A until the set is a singleton. Throws ConvergenceError when
/// max_iter is exhausted, or when the gap stays above tol although every
/// contraction is unitary within tol.
ExtremalizationResult extremalize(const Matrix& a, const Matrix& b,
                                  double tol = kMsetTol, int max_iter = kMsetMaxIter);

}  // namespace trigfactor
