#include "trigfactor/fr1d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

#include <Eigen/Eigenvalues>

#include "trigfactor/errors.hpp"
#include "trigfactor/parallel.hpp"
#include "trigfactor/psdcore.hpp"

namespace trigfactor {

void Factor1dOptions::validate() const {
  if (n_blocks_schedule.empty() || eps_schedule.empty()) {
    throw ShapeError("factor options: schedules must be nonempty");
  }
  for (size_t i = 0; i < n_blocks_schedule.size(); ++i) {
    if (n_blocks_schedule[i] < 1 ||
        (i > 0 && n_blocks_schedule[i] <= n_blocks_schedule[i - 1])) {
      throw ShapeError("factor options: n_blocks schedule must be positive and increasing");
    }
  }
  for (size_t i = 0; i < eps_schedule.size(); ++i) {
    if (eps_schedule[i] < 0.0 || (i > 0 && eps_schedule[i] >= eps_schedule[i - 1])) {
      throw ShapeError("factor options: eps schedule must be non-negative and decreasing");
    }
  }
  if (residual_tol <= 0.0) throw ShapeError("factor options: residual_tol must be positive");
  if (grid_size < 1) throw ShapeError("factor options: grid_size must be positive");
}

std::vector<Matrix> corner_schur_sequence(const MatrixPoly1& q, int n) {
  if (!q.is_hermitian()) throw ShapeError("corner_schur_sequence requires a hermitian polynomial");
  if (n < 1) throw ShapeError("corner_schur_sequence: n must be >= 1");
  ToeplitzTruncation t = toeplitz_truncation(q, n + 1);
  const int k = q.rows();
  std::vector<Matrix> out;
  out.reserve(n);
  for (int j = 1; j <= n; ++j) {
    out.push_back(schur_complement(t.dense, j * k, kRankTol, 1e-8).value);
  }
  return out;
}

double factor_residual_1d(const MatrixPoly1& q, const MatrixPoly1& p, int n) {
  std::vector<double> per_point(n, 0.0);
  parallel_for(n, [&](int j) {
    const Complex z = unit_point(static_cast<double>(j) / n);
    Matrix pz = evaluate(p, z);
    per_point[j] = spectral_norm(evaluate(q, z) - pz.adjoint() * pz);
  });
  double r = 0.0;
  for (double v : per_point) r = std::max(r, v);
  return r;
}

namespace {

Matrix psd_sqrt(const Matrix& s) {
  HermitianEigen eig = hermitian_eigen(s);
  Eigen::VectorXd root = eig.values.cwiseMax(0.0).cwiseSqrt();
  return eig.vectors * root.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
}

// Row-by-row block Cholesky T = L L^* of the banded Toeplitz section with
// block (i, j) = Q_{j-i}. Only the last d+1 rows are kept.
class BandedCholesky {
 public:
  BandedCholesky(const MatrixPoly1& q, double eps)
      : k_(q.rows()), d_(q.degree()), rows_(d_ + 1), pinv_(d_ + 1) {
    lower_.reserve(d_ + 1);
    for (int s = 0; s <= d_; ++s) lower_.push_back(q.coeff(-s));
    lower_[0] += eps * Matrix::Identity(k_, k_);
    for (auto& r : rows_) r.assign(d_ + 1, Matrix::Zero(k_, k_));
  }

  int rows_done() const { return next_; }

  void advance_to(int n_rows) {
    while (next_ < n_rows) step();
  }

  // P_s = L_{i,i-s}^* read from the last computed row.
  MatrixPoly1 band_factor() const {
    const auto& row = rows_[(next_ - 1) % (d_ + 1)];
    std::map<int, Matrix> coeffs;
    for (int s = 0; s <= d_; ++s) coeffs[s] = row[s].adjoint();
    return MatrixPoly1::Analytic(k_, k_, d_, std::move(coeffs));
  }

 private:
  // row(i)[s] holds L_{i, i-s}.
  const std::vector<Matrix>& row(int i) const { return rows_[i % (d_ + 1)]; }

  void step() {
    const int i = next_;
    std::vector<Matrix>& cur = rows_[i % (d_ + 1)];
    for (auto& m : cur) m.setZero();
    const int first = std::max(0, i - d_);
    for (int j = first; j < i; ++j) {
      Matrix acc = lower_[i - j];
      const auto& rj = row(j);
      for (int m = first; m < j; ++m) {
        acc -= cur[i - m] * rj[j - m].adjoint();
      }
      cur[i - j] = acc * pinv_[j % (d_ + 1)];
    }
    Matrix s = lower_[0];
    for (int m = first; m < i; ++m) s -= cur[i - m] * cur[i - m].adjoint();
    cur[0] = psd_sqrt(0.5 * (s + s.adjoint()));
    pinv_[i % (d_ + 1)] = hermitian_pinv(cur[0], 1e-13);
    ++next_;
  }

  int k_;
  int d_;
  std::vector<Matrix> lower_;  // Q_{-s} (plus eps I at s = 0)
  std::vector<std::vector<Matrix>> rows_;
  std::vector<Matrix> pinv_;
  int next_ = 0;
};

void check_input_psd(const MatrixPoly1& q, int grid) {
  const int n = std::max(grid, default_grid_size(q.degree()));
  std::vector<double> mins(n);
  parallel_for(n, [&](int j) {
    mins[j] = min_eigenvalue(evaluate(q, unit_point(static_cast<double>(j) / n)));
  });
  int arg = static_cast<int>(std::min_element(mins.begin(), mins.end()) - mins.begin());
  if (mins[arg] < -1e-8) {
    const double t = static_cast<double>(arg) / n;
    std::ostringstream msg;
    msg << "input not positive semidefinite, min eigenvalue " << mins[arg] << " at z=exp(2pi i*"
        << t << ")";
    throw NotPsdError(msg.str(), mins[arg], {t});
  }
}

}  // namespace

Factor1dResult factor_1d_best(const MatrixPoly1& q, const Factor1dOptions& opts) {
  opts.validate();
  if (!q.is_hermitian()) throw ShapeError("factor_1d requires a hermitian polynomial");
  check_input_psd(q, opts.grid_size);

  double scale = 0.0;
  for (const auto& [n, c] : q.coeffs()) scale = std::max(scale, spectral_norm(c));

  Factor1dResult best;
  best.residual = std::numeric_limits<double>::infinity();
  int attempts = 0;
  for (double eps : opts.eps_schedule) {
    BandedCholesky chol(q, eps * std::max(scale, 1e-300));
    MatrixPoly1 previous;
    bool have_previous = false;
    for (int n_blocks : opts.n_blocks_schedule) {
      chol.advance_to(n_blocks);
      MatrixPoly1 p = chol.band_factor();
      const double r = factor_residual_1d(q, p, opts.grid_size);
      ++attempts;
      if (r < best.residual) {
        best.factor = p;
        best.residual = r;
        best.eps = eps;
        best.n_blocks = n_blocks;
      }
      if (r <= opts.residual_tol) {
        best.accepted = true;
        best.attempts = attempts;
        return best;
      }
      // More rows no longer change the band: this shift is exhausted.
      if (have_previous && max_coeff_diff(previous, p) <= 1e-14 * std::max(scale, 1.0)) break;
      previous = std::move(p);
      have_previous = true;
    }
  }
  best.attempts = attempts;
  return best;
}

Factor1dResult outer_factor_1d(const MatrixPoly1& q, const Factor1dOptions& opts) {
  Factor1dResult r = factor_1d_best(q, opts);
  if (!r.accepted) {
    throw ConvergenceError("outer_factor_1d: residual " + std::to_string(r.residual) +
                               " above tolerance " + std::to_string(opts.residual_tol),
                           r.residual, r.attempts);
  }
  return r;
}

OuterCheck is_outer(const MatrixPoly1& p, double tol) {
  if (p.rows() != p.cols()) throw ShapeError("is_outer requires a square polynomial");
  OuterCheck out;
  const int k = p.rows();
  const int deg = k * p.degree();
  const int n = 2 * deg + 1;
  std::vector<Matrix> dets(n);
  for (int j = 0; j < n; ++j) {
    Matrix v(1, 1);
    v(0, 0) = evaluate(p, unit_point(static_cast<double>(j) / n)).determinant();
    dets[j] = v;
  }
  MatrixPoly1 det = fourier_coeffs_1d(dets, deg, PolyKind::kGeneral);

  double pscale = 0.0;
  for (const auto& [m, c] : p.coeffs()) pscale += spectral_norm(c);
  std::vector<Complex> c(deg + 1);
  double cmax = 0.0;
  for (int m = 0; m <= deg; ++m) {
    c[m] = det.coeff(m)(0, 0);
    cmax = std::max(cmax, std::abs(c[m]));
  }
  if (cmax <= 1e-10 * std::pow(std::max(pscale, 1e-300), k)) {
    out.outer = false;
    out.witness = "rank-deficient symbol";
    return out;
  }
  int top = deg;
  while (top > 0 && std::abs(c[top]) <= 1e-10 * cmax) --top;
  if (top > 0) {
    Matrix companion = Matrix::Zero(top, top);
    for (int i = 1; i < top; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < top; ++i) companion(i, top - 1) = -c[i] / c[top];
    Eigen::ComplexEigenSolver<Matrix> es(companion, false);
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
      out.roots.push_back(es.eigenvalues()(i));
    }
  }
  out.outer = true;
  for (const Complex& r : out.roots) {
    if (std::abs(r) < 1.0 - tol) {
      out.outer = false;
      std::ostringstream w;
      w << "root " << r.real() << (r.imag() < 0 ? "-" : "+") << std::abs(r.imag())
        << "i with modulus " << std::abs(r);
      out.witness = w.str();
      break;
    }
  }
  return out;
}

}  // namespace trigfactor
