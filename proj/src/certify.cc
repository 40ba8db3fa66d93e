#include "trigfactor/certify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "trigfactor/errors.hpp"
#include "trigfactor/parallel.hpp"
#include "trigfactor/psdcore.hpp"

namespace trigfactor {
namespace {

struct PointResult {
  double residual = 0.0;
  double min_eig = 0.0;
};

template <typename Eval>
VerifyReport reduce_grid(int count, Eval eval, const std::vector<std::vector<double>>& angles) {
  std::vector<PointResult> pts(count);
  parallel_for(count, [&](int i) { pts[i] = eval(i); });
  VerifyReport r;
  double sumsq = 0.0;
  r.min_eig = std::numeric_limits<double>::infinity();
  for (int i = 0; i < count; ++i) {
    r.residual_sup = std::max(r.residual_sup, pts[i].residual);
    sumsq += pts[i].residual * pts[i].residual;
    if (pts[i].min_eig < r.min_eig) {
      r.min_eig = pts[i].min_eig;
      r.argmin = angles[i];
    }
  }
  r.residual_rms = count > 0 ? std::sqrt(sumsq / count) : 0.0;
  return r;
}

}  // namespace

VerifyReport verify_certificate(const MatrixPoly2& q, const std::vector<MatrixPoly2>& factors,
                                int n) {
  if (n < 1) throw ShapeError("verify_certificate: grid size must be positive");
  for (const auto& f : factors) {
    if (f.cols() != q.cols() || q.rows() != q.cols()) {
      throw ShapeError("verify_certificate: factor shape does not match the polynomial");
    }
  }
  const int d1 = q.degree().first;
  const int d2 = q.degree().second;
  const int box2 = d2 == 0 ? 0 : 2 * d2 - 1;
  const size_t max_count = d2 == 0 ? 1 : static_cast<size_t>(2 * d2);

  std::vector<std::vector<double>> angles(static_cast<size_t>(n) * n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) angles[a * n + b] = {(a + 0.5) / n, (b + 0.5) / n};
  }
  VerifyReport r = reduce_grid(
      n * n,
      [&](int i) {
        const Complex z1 = unit_point(angles[i][0]);
        const Complex z2 = unit_point(angles[i][1]);
        Matrix qz = evaluate(q, z1, z2);
        Matrix sum = Matrix::Zero(q.rows(), q.cols());
        for (const auto& f : factors) {
          Matrix fz = evaluate(f, z1, z2);
          sum += fz.adjoint() * fz;
        }
        return PointResult{spectral_norm(qz - sum), min_eigenvalue(qz)};
      },
      angles);

  r.count_ok = factors.size() <= max_count;
  r.degree_ok = true;
  for (const auto& f : factors) {
    for (const auto& [key, c] : f.coeffs()) {
      if (key.first < 0 || key.second < 0 || key.first > d1 || key.second > box2) {
        if (c.size() > 0 && c.cwiseAbs().maxCoeff() != 0.0) r.degree_ok = false;
      }
    }
  }
  return r;
}

VerifyReport verify_certificate(const MatrixPoly1& q, const std::vector<MatrixPoly1>& factors,
                                int n) {
  if (n < 1) throw ShapeError("verify_certificate: grid size must be positive");
  for (const auto& f : factors) {
    if (f.cols() != q.cols() || q.rows() != q.cols()) {
      throw ShapeError("verify_certificate: factor shape does not match the polynomial");
    }
  }
  std::vector<std::vector<double>> angles(n);
  for (int j = 0; j < n; ++j) angles[j] = {(j + 0.5) / n};
  VerifyReport r = reduce_grid(
      n,
      [&](int i) {
        const Complex z = unit_point(angles[i][0]);
        Matrix qz = evaluate(q, z);
        Matrix sum = Matrix::Zero(q.rows(), q.cols());
        for (const auto& f : factors) {
          Matrix fz = evaluate(f, z);
          sum += fz.adjoint() * fz;
        }
        return PointResult{spectral_norm(qz - sum), min_eigenvalue(qz)};
      },
      angles);
  r.count_ok = factors.size() <= 1;
  r.degree_ok = true;
  for (const auto& f : factors) {
    for (const auto& [key, c] : f.coeffs()) {
      if (key < 0 || key > q.degree()) {
        if (c.size() > 0 && c.cwiseAbs().maxCoeff() != 0.0) r.degree_ok = false;
      }
    }
  }
  return r;
}

PsdGridReport psd_check_poly(const MatrixPoly1& q, int n) {
  if (n < 1) throw ShapeError("psd_check_poly: grid size must be positive");
  std::vector<double> mins(n);
  parallel_for(n, [&](int j) {
    mins[j] = min_eigenvalue(evaluate(q, unit_point(static_cast<double>(j) / n)));
  });
  const int arg = static_cast<int>(std::min_element(mins.begin(), mins.end()) - mins.begin());
  return {mins[arg], {static_cast<double>(arg) / n}};
}

PsdGridReport psd_check_poly(const MatrixPoly2& q, int n1, int n2) {
  if (n1 < 1 || n2 < 1) throw ShapeError("psd_check_poly: grid size must be positive");
  std::vector<double> mins(static_cast<size_t>(n1) * n2);
  parallel_for(n1 * n2, [&](int i) {
    const int a = i / n2;
    const int b = i % n2;
    mins[i] = min_eigenvalue(evaluate(q, unit_point(static_cast<double>(a) / n1),
                                      unit_point(static_cast<double>(b) / n2)));
  });
  const int arg = static_cast<int>(std::min_element(mins.begin(), mins.end()) - mins.begin());
  return {mins[arg],
          {static_cast<double>(arg / n2) / n1, static_cast<double>(arg % n2) / n2}};
}

MatrixPoly1 cesaro_smooth(const MatrixPoly1& p, int n) {
  if (n < 0) throw ShapeError("cesaro_smooth: n must be non-negative");
  std::map<int, Matrix> out;
  for (const auto& [k, c] : p.coeffs()) {
    if (std::abs(k) > n) continue;
    const double w = static_cast<double>(n + 1 - std::abs(k)) / (n + 1);
    out[k] = w * c;
  }
  const int degree = std::min(p.degree(), n);
  switch (p.kind()) {
    case PolyKind::kHermitian:
      return MatrixPoly1::Hermitian(p.rows(), degree, std::move(out));
    case PolyKind::kAnalytic:
      return MatrixPoly1::Analytic(p.rows(), p.cols(), degree, std::move(out));
    case PolyKind::kGeneral:
      break;
  }
  return MatrixPoly1::General(p.rows(), p.cols(), degree, std::move(out));
}

}  // namespace trigfactor
