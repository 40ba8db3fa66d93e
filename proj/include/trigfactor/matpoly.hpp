#pragma once

// Matrix-valued trigonometric polynomials in one and two variables.
//
// A polynomial is stored as a sparse map from (multi-)degree to a complex
// coefficient matrix. All coefficients share one shape. Values are immutable
// once constructed; the factory functions enforce the hermitian / analytic
// invariants.

#include <complex>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace trigfactor {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Index2 = std::pair<int, int>;

inline constexpr double kUnitCircleTol = 1e-12;
inline constexpr double kAlgebraicTol = 1e-10;
inline constexpr double kSpectralTol = 1e-8;

enum class PolyKind { kGeneral, kHermitian, kAnalytic };

/// Matrix-valued Laurent polynomial Q(z) = sum_n Q_n z^n, |n| <= degree.
class MatrixPoly1 {
 public:
  MatrixPoly1() = default;

  static MatrixPoly1 Zero(int rows, int cols, int degree,
                          PolyKind kind = PolyKind::kGeneral);
  static MatrixPoly1 General(int rows, int cols, int degree,
                             std::map<int, Matrix> coeffs);
  /// Symmetrizes so that Q_{-n} = Q_n^* exactly. A missing member of a
  /// (n, -n) pair is synthesized from the other one.
  static MatrixPoly1 Hermitian(int dim, int degree, std::map<int, Matrix> coeffs);
  static MatrixPoly1 Analytic(int rows, int cols, int degree,
                              std::map<int, Matrix> coeffs);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int degree() const { return degree_; }
  PolyKind kind() const { return kind_; }
  bool is_hermitian() const { return kind_ == PolyKind::kHermitian; }
  bool is_analytic() const { return kind_ == PolyKind::kAnalytic; }

  /// Largest coefficient change made by hermitian symmetrization.
  double symmetrization_correction() const { return correction_; }

  /// Coefficient of z^n; the zero matrix when absent.
  Matrix coeff(int n) const;
  const std::map<int, Matrix>& coeffs() const { return coeffs_; }

  /// Largest |n| whose coefficient has max-abs entry above tol.
  int effective_degree(double tol = 0.0) const;

  /// Same coefficients, re-declared with another kind/degree (validated).
  MatrixPoly1 with_kind(PolyKind kind) const;
  MatrixPoly1 with_degree(int degree) const;

 private:
  void validate() const;

  int rows_ = 0;
  int cols_ = 0;
  int degree_ = 0;
  PolyKind kind_ = PolyKind::kGeneral;
  double correction_ = 0.0;
  std::map<int, Matrix> coeffs_;
};

/// Matrix-valued Laurent polynomial in (z1, z2); keys are (n1, n2).
class MatrixPoly2 {
 public:
  MatrixPoly2() = default;

  static MatrixPoly2 Zero(int rows, int cols, Index2 degree,
                          PolyKind kind = PolyKind::kGeneral);
  static MatrixPoly2 General(int rows, int cols, Index2 degree,
                             std::map<Index2, Matrix> coeffs);
  static MatrixPoly2 Hermitian(int dim, Index2 degree,
                               std::map<Index2, Matrix> coeffs);
  static MatrixPoly2 Analytic(int rows, int cols, Index2 degree,
                              std::map<Index2, Matrix> coeffs);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Index2 degree() const { return degree_; }
  PolyKind kind() const { return kind_; }
  bool is_hermitian() const { return kind_ == PolyKind::kHermitian; }
  bool is_analytic() const { return kind_ == PolyKind::kAnalytic; }
  double symmetrization_correction() const { return correction_; }

  Matrix coeff(int n1, int n2) const;
  const std::map<Index2, Matrix>& coeffs() const { return coeffs_; }

  /// Per-variable largest |n_i| with a coefficient above tol.
  Index2 effective_degree(double tol = 0.0) const;

  MatrixPoly2 with_kind(PolyKind kind) const;
  MatrixPoly2 with_degree(Index2 degree) const;

 private:
  void validate() const;

  int rows_ = 0;
  int cols_ = 0;
  Index2 degree_{0, 0};
  PolyKind kind_ = PolyKind::kGeneral;
  double correction_ = 0.0;
  std::map<Index2, Matrix> coeffs_;
};

/// Dense finite section of the block Toeplitz operator; block (i,j) = Q_{i-j}.
struct ToeplitzTruncation {
  int block_rows = 0;
  int block_cols = 0;
  int n_blocks = 0;
  Matrix dense;
};

/// The pair (A(z1), B(z1)) of the block-tridiagonal regrouping of a two
/// variable polynomial along z2: diagonal A, subdiagonal B, superdiagonal B^*.
struct PencilPair {
  MatrixPoly1 a;
  MatrixPoly1 b;
  int group = 0;       // d2: number of z2 degrees per block
  int block_dim = 0;   // k: coefficient size of the source polynomial
};

struct SampleGrid {
  std::vector<Matrix> samples;
  bool aliased = false;  // grid too coarse for the declared degree
};

// ---- evaluation and sampling ----

/// Q(z) for |z| = 1; throws DomainError otherwise.
Matrix evaluate(const MatrixPoly1& p, Complex z);
Matrix evaluate(const MatrixPoly2& p, Complex z1, Complex z2);

/// z = exp(2 pi i t).
Complex unit_point(double t);

/// N samples at z_j = exp(2 pi i j / N).
SampleGrid sample_grid_1d(const MatrixPoly1& p, int n);

/// Inverse of sample_grid_1d for degrees |n| <= max_degree. Throws
/// AliasingError when samples.size() <= 2 * max_degree.
MatrixPoly1 fourier_coeffs_1d(std::span<const Matrix> samples, int max_degree,
                              PolyKind kind = PolyKind::kGeneral);

/// All N Fourier coefficients of the samples, indexed by the signed degree
/// -N/2 < n <= N/2 (wrap-around order of the DFT).
std::map<int, Matrix> full_fourier_coeffs(std::span<const Matrix> samples);

/// max(64, 4 * degree + 1) rounded up to a power of two.
int default_grid_size(int degree);

// ---- Toeplitz sections ----

ToeplitzTruncation toeplitz_truncation(const MatrixPoly1& p, int n_blocks);

// ---- arithmetic ----

MatrixPoly1 adjoint(const MatrixPoly1& p);
MatrixPoly2 adjoint(const MatrixPoly2& p);
MatrixPoly1 operator+(const MatrixPoly1& a, const MatrixPoly1& b);
MatrixPoly2 operator+(const MatrixPoly2& a, const MatrixPoly2& b);
MatrixPoly1 operator*(const MatrixPoly1& a, const MatrixPoly1& b);
MatrixPoly2 operator*(const MatrixPoly2& a, const MatrixPoly2& b);
MatrixPoly1 scale(const MatrixPoly1& p, double s);
MatrixPoly2 scale(const MatrixPoly2& p, double s);

/// sum_m F_m^* F_m, returned as an exactly hermitian polynomial.
MatrixPoly1 hermitian_square_sum(std::span<const MatrixPoly1> factors);
MatrixPoly2 hermitian_square_sum(std::span<const MatrixPoly2> factors);

/// Largest coefficient-wise max-abs difference (missing keys are zero).
double max_coeff_diff(const MatrixPoly1& a, const MatrixPoly1& b);
double max_coeff_diff(const MatrixPoly2& a, const MatrixPoly2& b);

// ---- two-variable structure ----

/// R_m(z1) = sum_{k1} Q_{k1,m} z1^{k1}: the coefficient of z2^m.
MatrixPoly1 z2_coefficient(const MatrixPoly2& q, int m);

/// Groups the z2-Toeplitz structure of a hermitian Q of degree (d1, d2 >= 1)
/// into d2 x d2 blocks. A has block (i,j) = R_{i-j}; B has block (i,j) =
/// R_{d2+i-j} for d2+i-j in [1, d2] and zero otherwise.
PencilPair regroup_blocks(const MatrixPoly2& q);

}  // namespace trigfactor
