#include "trigfactor/matpoly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <string>

#include "trigfactor/errors.hpp"

namespace trigfactor {
namespace {

double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

void check_on_circle(Complex z) {
  if (std::abs(std::abs(z) - 1.0) > kUnitCircleTol) {
    throw DomainError("evaluation point |z| = " + std::to_string(std::abs(z)) +
                      " is not on the unit circle");
  }
}

void check_shape(const Matrix& m, int rows, int cols, const std::string& where) {
  if (m.rows() != rows || m.cols() != cols) {
    throw ShapeError(where + ": coefficient has shape " +
                     std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                     ", expected " + std::to_string(rows) + "x" +
                     std::to_string(cols));
  }
}

// Q_{-n} <- (Q_{-n} + Q_n^*)/2, Q_n <- Q_{-n}^*, filling in missing partners.
template <typename Key, typename Negate>
std::map<Key, Matrix> symmetrize(std::map<Key, Matrix> coeffs, Negate negate,
                                 double* correction) {
  std::map<Key, Matrix> out;
  double corr = 0.0;
  for (const auto& [key, value] : coeffs) {
    Key neg = negate(key);
    if (out.count(key) != 0) continue;
    if (neg == key) {
      Matrix h = 0.5 * (value + value.adjoint());
      corr = std::max(corr, max_abs(value - h));
      out[key] = h;
      continue;
    }
    auto partner = coeffs.find(neg);
    Matrix lower;  // the coefficient kept at `neg`
    if (partner == coeffs.end()) {
      lower = value.adjoint();
    } else {
      lower = 0.5 * (partner->second + value.adjoint());
      corr = std::max(corr, max_abs(partner->second - lower));
      corr = std::max(corr, max_abs(value - lower.adjoint()));
    }
    out[key] = lower.adjoint();
    out[neg] = std::move(lower);
  }
  *correction = corr;
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// MatrixPoly1

MatrixPoly1 MatrixPoly1::Zero(int rows, int cols, int degree, PolyKind kind) {
  MatrixPoly1 p;
  p.rows_ = rows;
  p.cols_ = cols;
  p.degree_ = degree;
  p.kind_ = kind;
  p.validate();
  return p;
}

MatrixPoly1 MatrixPoly1::General(int rows, int cols, int degree,
                                 std::map<int, Matrix> coeffs) {
  MatrixPoly1 p;
  p.rows_ = rows;
  p.cols_ = cols;
  p.degree_ = degree;
  p.coeffs_ = std::move(coeffs);
  p.validate();
  return p;
}

MatrixPoly1 MatrixPoly1::Hermitian(int dim, int degree,
                                   std::map<int, Matrix> coeffs) {
  for (const auto& [n, c] : coeffs) check_shape(c, dim, dim, "hermitian polynomial");
  MatrixPoly1 p;
  p.rows_ = dim;
  p.cols_ = dim;
  p.degree_ = degree;
  p.kind_ = PolyKind::kHermitian;
  p.coeffs_ = symmetrize(std::move(coeffs), [](int n) { return -n; },
                         &p.correction_);
  p.validate();
  return p;
}

MatrixPoly1 MatrixPoly1::Analytic(int rows, int cols, int degree,
                                  std::map<int, Matrix> coeffs) {
  MatrixPoly1 p;
  p.rows_ = rows;
  p.cols_ = cols;
  p.degree_ = degree;
  p.kind_ = PolyKind::kAnalytic;
  p.coeffs_ = std::move(coeffs);
  p.validate();
  return p;
}

void MatrixPoly1::validate() const {
  if (rows_ < 0 || cols_ < 0 || degree_ < 0) {
    throw ShapeError("negative polynomial dimension or degree");
  }
  if (kind_ == PolyKind::kHermitian && rows_ != cols_) {
    throw ShapeError("hermitian polynomial must be square");
  }
  for (const auto& [n, c] : coeffs_) {
    check_shape(c, rows_, cols_, "polynomial");
    if (std::abs(n) > degree_) {
      throw ShapeError("coefficient of degree " + std::to_string(n) +
                       " exceeds declared degree " + std::to_string(degree_));
    }
    if (kind_ == PolyKind::kAnalytic && n < 0) {
      throw ShapeError("analytic polynomial has a coefficient of negative degree " +
                       std::to_string(n));
    }
  }
}

Matrix MatrixPoly1::coeff(int n) const {
  auto it = coeffs_.find(n);
  if (it == coeffs_.end()) return Matrix::Zero(rows_, cols_);
  return it->second;
}

int MatrixPoly1::effective_degree(double tol) const {
  int d = 0;
  for (const auto& [n, c] : coeffs_) {
    if (max_abs(c) > tol) d = std::max(d, std::abs(n));
  }
  return d;
}

MatrixPoly1 MatrixPoly1::with_kind(PolyKind kind) const {
  switch (kind) {
    case PolyKind::kHermitian:
      return Hermitian(rows_, degree_, coeffs_);
    case PolyKind::kAnalytic:
      return Analytic(rows_, cols_, degree_, coeffs_);
    case PolyKind::kGeneral:
      break;
  }
  return General(rows_, cols_, degree_, coeffs_);
}

MatrixPoly1 MatrixPoly1::with_degree(int degree) const {
  MatrixPoly1 p = *this;
  p.degree_ = degree;
  p.validate();
  return p;
}

// ---------------------------------------------------------------------------
// MatrixPoly2

MatrixPoly2 MatrixPoly2::Zero(int rows, int cols, Index2 degree, PolyKind kind) {
  MatrixPoly2 p;
  p.rows_ = rows;
  p.cols_ = cols;
  p.degree_ = degree;
  p.kind_ = kind;
  p.validate();
  return p;
}

MatrixPoly2 MatrixPoly2::General(int rows, int cols, Index2 degree,
                                 std::map<Index2, Matrix> coeffs) {
  MatrixPoly2 p;
  p.rows_ = rows;
  p.cols_ = cols;
  p.degree_ = degree;
  p.coeffs_ = std::move(coeffs);
  p.validate();
  return p;
}

MatrixPoly2 MatrixPoly2::Hermitian(int dim, Index2 degree,
                                   std::map<Index2, Matrix> coeffs) {
  for (const auto& [n, c] : coeffs) check_shape(c, dim, dim, "hermitian polynomial");
  MatrixPoly2 p;
  p.rows_ = dim;
  p.cols_ = dim;
  p.degree_ = degree;
  p.kind_ = PolyKind::kHermitian;
  p.coeffs_ = symmetrize(
      std::move(coeffs), [](Index2 n) { return Index2{-n.first, -n.second}; },
      &p.correction_);
  p.validate();
  return p;
}

MatrixPoly2 MatrixPoly2::Analytic(int rows, int cols, Index2 degree,
                                  std::map<Index2, Matrix> coeffs) {
  MatrixPoly2 p;
  p.rows_ = rows;
  p.cols_ = cols;
  p.degree_ = degree;
  p.kind_ = PolyKind::kAnalytic;
  p.coeffs_ = std::move(coeffs);
  p.validate();
  return p;
}

void MatrixPoly2::validate() const {
  if (rows_ < 0 || cols_ < 0 || degree_.first < 0 || degree_.second < 0) {
    throw ShapeError("negative polynomial dimension or degree");
  }
  if (kind_ == PolyKind::kHermitian && rows_ != cols_) {
    throw ShapeError("hermitian polynomial must be square");
  }
  for (const auto& [n, c] : coeffs_) {
    check_shape(c, rows_, cols_, "polynomial");
    if (std::abs(n.first) > degree_.first || std::abs(n.second) > degree_.second) {
      throw ShapeError("coefficient of degree (" + std::to_string(n.first) + "," +
                       std::to_string(n.second) + ") lies outside the degree box");
    }
    if (kind_ == PolyKind::kAnalytic && (n.first < 0 || n.second < 0)) {
      throw ShapeError("analytic polynomial has a coefficient of negative degree");
    }
  }
}

Matrix MatrixPoly2::coeff(int n1, int n2) const {
  auto it = coeffs_.find({n1, n2});
  if (it == coeffs_.end()) return Matrix::Zero(rows_, cols_);
  return it->second;
}

Index2 MatrixPoly2::effective_degree(double tol) const {
  Index2 d{0, 0};
  for (const auto& [n, c] : coeffs_) {
    if (max_abs(c) > tol) {
      d.first = std::max(d.first, std::abs(n.first));
      d.second = std::max(d.second, std::abs(n.second));
    }
  }
  return d;
}

MatrixPoly2 MatrixPoly2::with_kind(PolyKind kind) const {
  switch (kind) {
    case PolyKind::kHermitian:
      return Hermitian(rows_, degree_, coeffs_);
    case PolyKind::kAnalytic:
      return Analytic(rows_, cols_, degree_, coeffs_);
    case PolyKind::kGeneral:
      break;
  }
  return General(rows_, cols_, degree_, coeffs_);
}

MatrixPoly2 MatrixPoly2::with_degree(Index2 degree) const {
  MatrixPoly2 p = *this;
  p.degree_ = degree;
  p.validate();
  return p;
}

// ---------------------------------------------------------------------------
// evaluation and sampling

Complex unit_point(double t) {
  return std::polar(1.0, 2.0 * std::numbers::pi * t);
}

Matrix evaluate(const MatrixPoly1& p, Complex z) {
  check_on_circle(z);
  const double theta = std::arg(z);
  Matrix out = Matrix::Zero(p.rows(), p.cols());
  for (const auto& [n, c] : p.coeffs()) {
    out += std::polar(1.0, n * theta) * c;
  }
  return out;
}

Matrix evaluate(const MatrixPoly2& p, Complex z1, Complex z2) {
  check_on_circle(z1);
  check_on_circle(z2);
  const double t1 = std::arg(z1);
  const double t2 = std::arg(z2);
  Matrix out = Matrix::Zero(p.rows(), p.cols());
  for (const auto& [n, c] : p.coeffs()) {
    out += std::polar(1.0, n.first * t1 + n.second * t2) * c;
  }
  return out;
}

SampleGrid sample_grid_1d(const MatrixPoly1& p, int n) {
  if (n < 1) throw ShapeError("grid size must be positive");
  SampleGrid grid;
  grid.aliased = n <= 2 * p.degree();
  grid.samples.reserve(n);
  for (int j = 0; j < n; ++j) {
    Matrix v = Matrix::Zero(p.rows(), p.cols());
    for (const auto& [deg, c] : p.coeffs()) {
      // Reduce the phase index exactly before converting to an angle.
      long long idx = ((static_cast<long long>(deg) * j) % n + n) % n;
      v += std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(idx) / n) * c;
    }
    grid.samples.push_back(std::move(v));
  }
  return grid;
}

namespace {

Matrix dft_coefficient(std::span<const Matrix> samples, int deg) {
  const int n = static_cast<int>(samples.size());
  Matrix acc = Matrix::Zero(samples[0].rows(), samples[0].cols());
  for (int j = 0; j < n; ++j) {
    long long idx = ((-static_cast<long long>(deg) * j) % n + n) % n;
    acc += std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(idx) / n) *
           samples[j];
  }
  return acc / static_cast<double>(n);
}

}  // namespace

MatrixPoly1 fourier_coeffs_1d(std::span<const Matrix> samples, int max_degree,
                              PolyKind kind) {
  if (samples.empty()) throw ShapeError("no samples");
  const int n = static_cast<int>(samples.size());
  if (n <= 2 * max_degree) {
    throw AliasingError("grid of " + std::to_string(n) +
                        " points cannot resolve degree " +
                        std::to_string(max_degree) + " (need N > 2d)");
  }
  const int rows = static_cast<int>(samples[0].rows());
  const int cols = static_cast<int>(samples[0].cols());
  std::map<int, Matrix> coeffs;
  const int lo = kind == PolyKind::kAnalytic ? 0 : -max_degree;
  for (int deg = lo; deg <= max_degree; ++deg) {
    coeffs[deg] = dft_coefficient(samples, deg);
  }
  switch (kind) {
    case PolyKind::kHermitian:
      return MatrixPoly1::Hermitian(rows, max_degree, std::move(coeffs));
    case PolyKind::kAnalytic:
      return MatrixPoly1::Analytic(rows, cols, max_degree, std::move(coeffs));
    case PolyKind::kGeneral:
      break;
  }
  return MatrixPoly1::General(rows, cols, max_degree, std::move(coeffs));
}

std::map<int, Matrix> full_fourier_coeffs(std::span<const Matrix> samples) {
  const int n = static_cast<int>(samples.size());
  std::map<int, Matrix> out;
  for (int deg = -(n - 1) / 2; deg <= n / 2; ++deg) {
    out[deg] = dft_coefficient(samples, deg);
  }
  return out;
}

int default_grid_size(int degree) {
  int target = std::max(64, 4 * degree + 1);
  int n = 1;
  while (n < target) n <<= 1;
  return n;
}

// ---------------------------------------------------------------------------
// Toeplitz sections

ToeplitzTruncation toeplitz_truncation(const MatrixPoly1& p, int n_blocks) {
  if (n_blocks < 1) throw ShapeError("n_blocks must be >= 1");
  ToeplitzTruncation t;
  t.block_rows = p.rows();
  t.block_cols = p.cols();
  t.n_blocks = n_blocks;
  t.dense = Matrix::Zero(static_cast<Eigen::Index>(n_blocks) * p.rows(),
                         static_cast<Eigen::Index>(n_blocks) * p.cols());
  for (int i = 0; i < n_blocks; ++i) {
    for (int j = 0; j < n_blocks; ++j) {
      auto it = p.coeffs().find(i - j);
      if (it == p.coeffs().end()) continue;
      t.dense.block(i * p.rows(), j * p.cols(), p.rows(), p.cols()) = it->second;
    }
  }
  return t;
}

// ---------------------------------------------------------------------------
// arithmetic

MatrixPoly1 adjoint(const MatrixPoly1& p) {
  std::map<int, Matrix> out;
  for (const auto& [n, c] : p.coeffs()) out[-n] = c.adjoint();
  if (p.is_hermitian()) return p;
  return MatrixPoly1::General(p.cols(), p.rows(), p.degree(), std::move(out));
}

MatrixPoly2 adjoint(const MatrixPoly2& p) {
  if (p.is_hermitian()) return p;
  std::map<Index2, Matrix> out;
  for (const auto& [n, c] : p.coeffs()) out[{-n.first, -n.second}] = c.adjoint();
  return MatrixPoly2::General(p.cols(), p.rows(), p.degree(), std::move(out));
}

namespace {

PolyKind sum_kind(PolyKind a, PolyKind b) {
  return a == b ? a : PolyKind::kGeneral;
}

template <typename Key>
std::map<Key, Matrix> add_maps(const std::map<Key, Matrix>& a,
                               const std::map<Key, Matrix>& b) {
  std::map<Key, Matrix> out = a;
  for (const auto& [n, c] : b) {
    auto it = out.find(n);
    if (it == out.end()) {
      out[n] = c;
    } else {
      it->second += c;
    }
  }
  return out;
}

}  // namespace

MatrixPoly1 operator+(const MatrixPoly1& a, const MatrixPoly1& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ShapeError("polynomial sum: shape mismatch");
  }
  const int degree = std::max(a.degree(), b.degree());
  auto coeffs = add_maps(a.coeffs(), b.coeffs());
  switch (sum_kind(a.kind(), b.kind())) {
    case PolyKind::kHermitian:
      return MatrixPoly1::Hermitian(a.rows(), degree, std::move(coeffs));
    case PolyKind::kAnalytic:
      return MatrixPoly1::Analytic(a.rows(), a.cols(), degree, std::move(coeffs));
    case PolyKind::kGeneral:
      break;
  }
  return MatrixPoly1::General(a.rows(), a.cols(), degree, std::move(coeffs));
}

MatrixPoly2 operator+(const MatrixPoly2& a, const MatrixPoly2& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ShapeError("polynomial sum: shape mismatch");
  }
  const Index2 degree{std::max(a.degree().first, b.degree().first),
                      std::max(a.degree().second, b.degree().second)};
  auto coeffs = add_maps(a.coeffs(), b.coeffs());
  switch (sum_kind(a.kind(), b.kind())) {
    case PolyKind::kHermitian:
      return MatrixPoly2::Hermitian(a.rows(), degree, std::move(coeffs));
    case PolyKind::kAnalytic:
      return MatrixPoly2::Analytic(a.rows(), a.cols(), degree, std::move(coeffs));
    case PolyKind::kGeneral:
      break;
  }
  return MatrixPoly2::General(a.rows(), a.cols(), degree, std::move(coeffs));
}

MatrixPoly1 operator*(const MatrixPoly1& a, const MatrixPoly1& b) {
  if (a.cols() != b.rows()) throw ShapeError("polynomial product: shape mismatch");
  std::map<int, Matrix> out;
  for (const auto& [i, ca] : a.coeffs()) {
    for (const auto& [j, cb] : b.coeffs()) {
      auto it = out.find(i + j);
      if (it == out.end()) {
        out[i + j] = ca * cb;
      } else {
        it->second += ca * cb;
      }
    }
  }
  const int degree = a.degree() + b.degree();
  if (a.is_analytic() && b.is_analytic()) {
    return MatrixPoly1::Analytic(a.rows(), b.cols(), degree, std::move(out));
  }
  return MatrixPoly1::General(a.rows(), b.cols(), degree, std::move(out));
}

MatrixPoly2 operator*(const MatrixPoly2& a, const MatrixPoly2& b) {
  if (a.cols() != b.rows()) throw ShapeError("polynomial product: shape mismatch");
  std::map<Index2, Matrix> out;
  for (const auto& [i, ca] : a.coeffs()) {
    for (const auto& [j, cb] : b.coeffs()) {
      Index2 key{i.first + j.first, i.second + j.second};
      auto it = out.find(key);
      if (it == out.end()) {
        out[key] = ca * cb;
      } else {
        it->second += ca * cb;
      }
    }
  }
  const Index2 degree{a.degree().first + b.degree().first,
                      a.degree().second + b.degree().second};
  if (a.is_analytic() && b.is_analytic()) {
    return MatrixPoly2::Analytic(a.rows(), b.cols(), degree, std::move(out));
  }
  return MatrixPoly2::General(a.rows(), b.cols(), degree, std::move(out));
}

MatrixPoly1 scale(const MatrixPoly1& p, double s) {
  std::map<int, Matrix> out;
  for (const auto& [n, c] : p.coeffs()) out[n] = s * c;
  if (p.is_hermitian()) return MatrixPoly1::Hermitian(p.rows(), p.degree(), std::move(out));
  if (p.is_analytic()) {
    return MatrixPoly1::Analytic(p.rows(), p.cols(), p.degree(), std::move(out));
  }
  return MatrixPoly1::General(p.rows(), p.cols(), p.degree(), std::move(out));
}

MatrixPoly2 scale(const MatrixPoly2& p, double s) {
  std::map<Index2, Matrix> out;
  for (const auto& [n, c] : p.coeffs()) out[n] = s * c;
  if (p.is_hermitian()) return MatrixPoly2::Hermitian(p.rows(), p.degree(), std::move(out));
  if (p.is_analytic()) {
    return MatrixPoly2::Analytic(p.rows(), p.cols(), p.degree(), std::move(out));
  }
  return MatrixPoly2::General(p.rows(), p.cols(), p.degree(), std::move(out));
}

// The coefficient of z^n in F^*F is sum_b F_{b-n}^* F_b; only n >= 0 is
// computed and the negative half is filled in by the hermitian factory.
MatrixPoly1 hermitian_square_sum(std::span<const MatrixPoly1> factors) {
  if (factors.empty()) throw ShapeError("hermitian_square_sum: empty factor list");
  const int dim = factors[0].cols();
  int degree = 0;
  std::map<int, Matrix> out;
  for (const auto& f : factors) {
    if (f.cols() != dim) throw ShapeError("hermitian_square_sum: column mismatch");
    const int span = f.is_analytic() ? f.degree() : 2 * f.degree();
    degree = std::max(degree, span);
    for (const auto& [b, fb] : f.coeffs()) {
      for (const auto& [a, fa] : f.coeffs()) {
        const int n = b - a;
        if (n < 0) continue;
        auto it = out.find(n);
        if (it == out.end()) {
          out[n] = fa.adjoint() * fb;
        } else {
          it->second += fa.adjoint() * fb;
        }
      }
    }
  }
  return MatrixPoly1::Hermitian(dim, degree, std::move(out));
}

MatrixPoly2 hermitian_square_sum(std::span<const MatrixPoly2> factors) {
  if (factors.empty()) throw ShapeError("hermitian_square_sum: empty factor list");
  const int dim = factors[0].cols();
  Index2 degree{0, 0};
  std::map<Index2, Matrix> out;
  for (const auto& f : factors) {
    if (f.cols() != dim) throw ShapeError("hermitian_square_sum: column mismatch");
    const int mult = f.is_analytic() ? 1 : 2;
    degree.first = std::max(degree.first, mult * f.degree().first);
    degree.second = std::max(degree.second, mult * f.degree().second);
    for (const auto& [b, fb] : f.coeffs()) {
      for (const auto& [a, fa] : f.coeffs()) {
        Index2 n{b.first - a.first, b.second - a.second};
        // Keep one representative of each (n, -n) pair.
        if (n.first < 0 || (n.first == 0 && n.second < 0)) continue;
        auto it = out.find(n);
        if (it == out.end()) {
          out[n] = fa.adjoint() * fb;
        } else {
          it->second += fa.adjoint() * fb;
        }
      }
    }
  }
  return MatrixPoly2::Hermitian(dim, degree, std::move(out));
}

double max_coeff_diff(const MatrixPoly1& a, const MatrixPoly1& b) {
  double d = 0.0;
  std::set<int> keys;
  for (const auto& [n, c] : a.coeffs()) keys.insert(n);
  for (const auto& [n, c] : b.coeffs()) keys.insert(n);
  for (int n : keys) d = std::max(d, max_abs(a.coeff(n) - b.coeff(n)));
  return d;
}

double max_coeff_diff(const MatrixPoly2& a, const MatrixPoly2& b) {
  double d = 0.0;
  std::set<Index2> keys;
  for (const auto& [n, c] : a.coeffs()) keys.insert(n);
  for (const auto& [n, c] : b.coeffs()) keys.insert(n);
  for (const auto& n : keys) {
    d = std::max(d, max_abs(a.coeff(n.first, n.second) - b.coeff(n.first, n.second)));
  }
  return d;
}

// ---------------------------------------------------------------------------
// two-variable structure

MatrixPoly1 z2_coefficient(const MatrixPoly2& q, int m) {
  std::map<int, Matrix> out;
  for (const auto& [n, c] : q.coeffs()) {
    if (n.second == m) out[n.first] = c;
  }
  return MatrixPoly1::General(q.rows(), q.cols(), q.degree().first, std::move(out));
}

PencilPair regroup_blocks(const MatrixPoly2& q) {
  if (!q.is_hermitian()) throw ShapeError("regroup_blocks requires a hermitian polynomial");
  const int k = q.rows();
  const int d1 = q.degree().first;
  const int d2 = std::max(1, q.degree().second);
  const int n = d2 * k;

  std::map<int, Matrix> a_coeffs;
  std::map<int, Matrix> b_coeffs;
  for (int j = -d1; j <= d1; ++j) {
    Matrix a = Matrix::Zero(n, n);
    Matrix b = Matrix::Zero(n, n);
    bool any_a = false;
    bool any_b = false;
    for (int r = 0; r < d2; ++r) {
      for (int c = 0; c < d2; ++c) {
        auto ia = q.coeffs().find({j, r - c});
        if (ia != q.coeffs().end()) {
          a.block(r * k, c * k, k, k) = ia->second;
          any_a = true;
        }
        const int m = d2 + r - c;
        if (m >= 1 && m <= d2) {
          auto ib = q.coeffs().find({j, m});
          if (ib != q.coeffs().end()) {
            b.block(r * k, c * k, k, k) = ib->second;
            any_b = true;
          }
        }
      }
    }
    if (any_a) a_coeffs[j] = std::move(a);
    if (any_b) b_coeffs[j] = std::move(b);
  }
  PencilPair pair;
  pair.a = MatrixPoly1::Hermitian(n, d1, std::move(a_coeffs));
  pair.b = MatrixPoly1::General(n, n, d1, std::move(b_coeffs));
  pair.group = d2;
  pair.block_dim = k;
  return pair;
}

}  // namespace trigfactor
