#include "trigfactor/psdcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "trigfactor/errors.hpp"

namespace trigfactor {

double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  if (m.rows() <= 16 && m.cols() <= 16) return Eigen::JacobiSVD<Matrix>(m).singularValues()(0);
  return Eigen::BDCSVD<Matrix>(m).singularValues()(0);
}

PsdCheck psd_project_check(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) throw ShapeError("psd_project_check: matrix not square");
  PsdCheck out;
  if (m.size() == 0) {
    out.is_psd = true;
    return out;
  }
  Matrix h = 0.5 * (m + m.adjoint());
  double skew = (0.5 * (m - m.adjoint())).cwiseAbs().maxCoeff();
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  out.min_eigenvalue = es.eigenvalues()(0);
  out.is_psd = out.min_eigenvalue >= -tol && skew <= tol;
  return out;
}

double min_eigenvalue(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Matrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

HermitianEigen hermitian_eigen(const Matrix& m) {
  if (m.rows() != m.cols()) throw ShapeError("hermitian_eigen: matrix not square");
  const Eigen::Index n = m.rows();
  HermitianEigen out;
  if (n == 0) {
    out.values.resize(0);
    out.vectors.resize(0, 0);
    return out;
  }
  Matrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index src = n - 1 - i;
    out.values(i) = es.eigenvalues()(src);
    Eigen::VectorXcd v = es.eigenvectors().col(src);
    for (Eigen::Index r = 0; r < n; ++r) {
      if (std::abs(v(r)) > 1e-12) {
        v *= std::conj(v(r)) / std::abs(v(r));
        v(r) = std::abs(v(r));
        break;
      }
    }
    out.vectors.col(i) = v;
  }
  return out;
}

Matrix hermitian_pinv(const Matrix& m, double rank_tol) {
  HermitianEigen eig = hermitian_eigen(m);
  const Eigen::Index n = m.rows();
  if (n == 0) return Matrix(0, 0);
  double scale = eig.values.cwiseAbs().maxCoeff();
  if (scale == 0.0) return Matrix::Zero(n, n);
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double lambda = eig.values(i);
    if (std::abs(lambda) > rank_tol * scale) inv(i) = 1.0 / lambda;
  }
  return eig.vectors * inv.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
}

PsdFactorization psd_factor(const Matrix& m, double rank_tol, double neg_tol) {
  if (m.rows() != m.cols()) throw ShapeError("psd_factor: matrix not square");
  if (neg_tol < 0.0) neg_tol = rank_tol;
  const Eigen::Index n = m.rows();
  HermitianEigen eig = hermitian_eigen(m);
  PsdFactorization out;
  if (n == 0) {
    out.factor.resize(0, 0);
    out.range_basis.resize(0, 0);
    out.singular.resize(0);
    return out;
  }
  const double lmax = std::max(0.0, eig.values(0));
  const double lmin = eig.values(n - 1);
  if (lmin < -neg_tol * std::max(1.0, lmax)) {
    throw NotPsdError("psd_factor: matrix not positive semidefinite, min eigenvalue " +
                          std::to_string(lmin),
                      lmin);
  }
  int r = 0;
  while (r < n && eig.values(r) > rank_tol * lmax && eig.values(r) > 0.0) ++r;
  out.effective_rank = r;
  out.range_basis = eig.vectors.leftCols(r);
  out.singular = eig.values.head(r).cwiseSqrt();
  out.factor = out.singular.cast<Complex>().asDiagonal() * out.range_basis.adjoint();
  return out;
}

SchurResult schur_complement(const Matrix& t, int corner_dim, double rank_tol,
                             double psd_tol) {
  if (t.rows() != t.cols()) throw ShapeError("schur_complement: matrix not square");
  if (corner_dim < 0 || corner_dim > t.rows()) {
    throw ShapeError("schur_complement: corner dimension out of range");
  }
  const Eigen::Index n = t.rows();
  const Eigen::Index c = corner_dim;
  PsdCheck check = psd_project_check(t, psd_tol * std::max(1.0, spectral_norm(t)));
  if (!check.is_psd) {
    throw NotPsdError("schur_complement: matrix not positive semidefinite, min eigenvalue " +
                          std::to_string(check.min_eigenvalue),
                      check.min_eigenvalue);
  }
  SchurResult out;
  Matrix a = t.topLeftCorner(c, c);
  if (c == n) {
    out.value = 0.5 * (a + a.adjoint());
    return out;
  }
  Matrix b = t.bottomLeftCorner(n - c, c);
  Matrix cc = t.bottomRightCorner(n - c, n - c);
  Matrix cpinv = hermitian_pinv(cc, rank_tol);
  Matrix value = a - b.adjoint() * cpinv * b;
  out.value = 0.5 * (value + value.adjoint());
  Matrix proj = cc * cpinv;
  double bnorm = spectral_norm(b);
  out.range_defect = spectral_norm(b - proj * b) / std::max(1.0, bnorm);
  return out;
}

namespace {

double unit_defect(const Eigen::VectorXd& sigma, Eigen::Index slots) {
  double d = 0.0;
  for (Eigen::Index i = 0; i < slots; ++i) {
    const double s = i < sigma.size() ? sigma(i) : 0.0;
    d = std::max(d, std::abs(s - 1.0));
  }
  return d;
}

}  // namespace

Contraction contraction_G(const Matrix& b, const PsdFactorization& e_side,
                          const PsdFactorization& f_side, double tol) {
  const Eigen::Index re = e_side.effective_rank;
  const Eigen::Index rf = f_side.effective_rank;
  if (b.cols() != e_side.range_basis.rows() || b.rows() != f_side.range_basis.rows()) {
    throw ShapeError("contraction_G: shape mismatch between B and the factorizations");
  }
  Contraction out;
  Eigen::VectorXd inv_e = e_side.singular.cwiseInverse();
  Eigen::VectorXd inv_f = f_side.singular.cwiseInverse();
  out.g = inv_f.cast<Complex>().asDiagonal() * (f_side.range_basis.adjoint() * b *
                                                e_side.range_basis) *
          inv_e.cast<Complex>().asDiagonal();
  Matrix rebuilt = f_side.factor.adjoint() * out.g * e_side.factor;
  out.consistency = spectral_norm(rebuilt - b);
  const double bnorm = spectral_norm(b);
  if (out.consistency > tol * bnorm) {
    throw ShapeError("contraction_G: B is not of the form F^*GE (residual " +
                     std::to_string(out.consistency) + ", |B| = " +
                     std::to_string(bnorm) + ")");
  }
  Eigen::VectorXd sigma;
  if (out.g.size() > 0) {
    sigma = Eigen::JacobiSVD<Matrix>(out.g).singularValues();
  }
  out.defect_isometry = unit_defect(sigma, re);
  out.defect_coisometry = unit_defect(sigma, rf);
  return out;
}

}  // namespace trigfactor
