#include "trigfactor/fr2d.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>

#include "trigfactor/errors.hpp"
#include "trigfactor/mset.hpp"
#include "trigfactor/parallel.hpp"
#include "trigfactor/psdcore.hpp"

namespace trigfactor {
namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

std::vector<Matrix> samples_of(const MatrixPoly1& p, int n) {
  return sample_grid_1d(p, n).samples;
}

MatrixPoly1 truncate_hermitian(const std::map<int, Matrix>& coeffs, int dim, int degree) {
  std::map<int, Matrix> kept;
  for (const auto& [n, c] : coeffs) {
    if (std::abs(n) <= degree) kept[n] = c;
  }
  return MatrixPoly1::Hermitian(dim, degree, std::move(kept));
}

Matrix block_h(const Matrix& a, const Matrix& b, const Matrix& m) {
  const Eigen::Index n = a.rows();
  Matrix h(2 * n, 2 * n);
  h << a - m, b.adjoint(), b, m;
  return 0.5 * (h + h.adjoint());
}

int pow2_at_least(int n) {
  int p = 1;
  while (p < n) p <<= 1;
  return p;
}

template <typename Fn>
auto run_stage(const std::string& stage, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(stage, e.what());
  }
}

}  // namespace

ExtremalSymbolPair compute_extremal_pair(const PencilPair& pair, int n,
                                         const Factor2dOptions& opts) {
  const int d1 = std::max(pair.a.degree(), pair.b.degree());
  if (n <= 2 * d1) {
    throw AliasingError("extremal pair grid of " + std::to_string(n) +
                        " points cannot resolve degree " + std::to_string(d1));
  }
  const int dim = pair.a.rows();
  std::vector<Matrix> a_samples = samples_of(pair.a, n);
  std::vector<Matrix> b_samples = samples_of(pair.b, n);
  std::vector<Matrix> a_hat(n), m_hat(n);
  std::vector<int> iters(n, 0);
  std::vector<std::string> errors(n);
  parallel_for(n, [&](int j) {
    try {
      ExtremalizationResult r = extremalize(a_samples[j], b_samples[j], opts.mset_tol,
                                            opts.max_iter);
      a_hat[j] = std::move(r.a_hat);
      m_hat[j] = std::move(r.m_hat);
      iters[j] = r.iterations;
    } catch (const std::exception& e) {
      errors[j] = e.what();
    }
  });
  for (int j = 0; j < n; ++j) {
    if (!errors[j].empty()) {
      std::ostringstream msg;
      msg << "pointwise extremalization failed at t=" << static_cast<double>(j) / n << ": "
          << errors[j];
      throw StageError("extremal-pair", msg.str());
    }
  }

  std::map<int, Matrix> a_coeffs = full_fourier_coeffs(a_hat);
  std::map<int, Matrix> m_coeffs = full_fourier_coeffs(m_hat);
  ExtremalSymbolPair out;
  out.grid_size = n;
  out.max_iterations = *std::max_element(iters.begin(), iters.end());
  std::map<int, double> tail;
  for (const auto* coeffs : {&a_coeffs, &m_coeffs}) {
    for (const auto& [deg, c] : *coeffs) {
      const double norm = spectral_norm(c);
      if (std::abs(deg) <= d1) {
        out.leading_norm = std::max(out.leading_norm, norm);
      } else {
        tail[std::abs(deg)] = std::max(tail[std::abs(deg)], norm);
      }
    }
  }
  double tail_max = 0.0;
  for (const auto& [deg, v] : tail) {
    out.decay_report.push_back(v);
    tail_max = std::max(tail_max, v);
  }
  out.tail_ratio = out.leading_norm > 0.0 ? tail_max / out.leading_norm
                                          : (tail_max > 0.0 ? INFINITY : 0.0);
  out.degree_ok = out.tail_ratio <= opts.degree_tol;
  out.a_hat = truncate_hermitian(a_coeffs, dim, d1);
  out.m_hat = truncate_hermitian(m_coeffs, dim, d1);
  return out;
}

MemberSearchResult search_polynomial_member(const PencilPair& pair, const MatrixPoly1& start,
                                            int n) {
  const int d1 = std::max(pair.a.degree(), pair.b.degree());
  if (n <= 2 * d1) throw AliasingError("member search grid too coarse for degree " +
                                       std::to_string(d1));
  const int dim = pair.a.rows();
  std::vector<Matrix> a = samples_of(pair.a, n);
  std::vector<Matrix> b = samples_of(pair.b, n);
  double scale = 0.0;
  for (int j = 0; j < n; ++j) {
    scale = std::max({scale, spectral_norm(a[j]), spectral_norm(b[j])});
  }
  scale = std::max(scale, 1e-300);

  MemberSearchResult res;
  res.m = start.with_degree(std::max(start.degree(), 0));
  std::vector<Matrix> m = samples_of(res.m, n);
  std::vector<double> margins(n);
  std::vector<Matrix> projected(n);

  auto measure = [&]() {
    parallel_for(n, [&](int j) { margins[j] = min_eigenvalue(block_h(a[j], b[j], m[j])); });
    return *std::min_element(margins.begin(), margins.end());
  };

  constexpr int kStageIters = 300;
  bool done = false;
  for (double level : {1e-1, 1e-2, 1e-3, 1e-4, 0.0}) {
    const double delta = level * scale;
    const double target = level > 0.0 ? 0.5 * delta : -1e-12 * scale;
    for (int it = 0; it < kStageIters; ++it) {
      if (measure() >= target) {
        done = true;
        break;
      }
      parallel_for(n, [&](int j) {
        HermitianEigen eig = hermitian_eigen(block_h(a[j], b[j], m[j]));
        Eigen::VectorXd clipped = eig.values.cwiseMax(delta);
        Matrix h = eig.vectors * clipped.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
        Matrix next = 0.5 * ((a[j] - h.topLeftCorner(dim, dim)) + h.bottomRightCorner(dim, dim));
        projected[j] = 0.5 * (next + next.adjoint());
      });
      res.m = fourier_coeffs_1d(projected, d1, PolyKind::kHermitian);
      m = samples_of(res.m, n);
      ++res.iterations;
    }
    if (done) break;
  }

  // Independent check on a finer, offset grid.
  const int fine = 4 * n;
  std::vector<double> fine_margin(fine);
  parallel_for(fine, [&](int j) {
    const Complex z = unit_point((j + 0.5) / fine);
    fine_margin[j] = min_eigenvalue(
        block_h(evaluate(pair.a, z), evaluate(pair.b, z), evaluate(res.m, z)));
  });
  res.margin = std::min(*std::min_element(fine_margin.begin(), fine_margin.end()), measure());
  res.feasible = res.margin >= -1e-9 * scale;
  return res;
}

MatrixPoly1 assemble_H(const PencilPair& pair, const MatrixPoly1& m, int n, double psd_tol) {
  const int dim = pair.a.rows();
  if (m.rows() != dim || m.cols() != dim || pair.b.rows() != dim || pair.b.cols() != dim) {
    throw ShapeError("assemble_H: shape mismatch");
  }
  const int degree = std::max({pair.a.degree(), pair.b.degree(), m.degree()});
  MatrixPoly1 b_adj = adjoint(pair.b);
  std::map<int, Matrix> coeffs;
  for (int j = -degree; j <= degree; ++j) {
    Matrix h(2 * dim, 2 * dim);
    h << pair.a.coeff(j) - m.coeff(j), b_adj.coeff(j), pair.b.coeff(j), m.coeff(j);
    if (h.cwiseAbs().maxCoeff() != 0.0) coeffs[j] = std::move(h);
  }
  MatrixPoly1 h = MatrixPoly1::Hermitian(2 * dim, degree, std::move(coeffs));

  std::vector<double> mins(n);
  std::vector<double> norms(n);
  parallel_for(n, [&](int j) {
    Matrix v = evaluate(h, unit_point(static_cast<double>(j) / n));
    mins[j] = min_eigenvalue(v);
    norms[j] = spectral_norm(v);
  });
  const int arg = static_cast<int>(std::min_element(mins.begin(), mins.end()) - mins.begin());
  const double hnorm = *std::max_element(norms.begin(), norms.end());
  if (mins[arg] < -psd_tol * std::max(1.0, hnorm)) {
    const double t = static_cast<double>(arg) / n;
    throw NotPsdError("assembled H is not positive semidefinite, min eigenvalue " +
                          std::to_string(mins[arg]) + " at t=" + std::to_string(t),
                      mins[arg], {t});
  }
  return h;
}

std::vector<MatrixPoly2> unpack_factors(const MatrixPoly1& p_h, int d1, int d2, int k) {
  if (d2 < 1 || k < 1 || d1 < 0) throw ShapeError("unpack_factors: invalid degrees");
  const int groups = 2 * d2;
  if (p_h.rows() != groups * k || p_h.cols() != groups * k) {
    throw ShapeError("unpack_factors: factor must be " + std::to_string(groups * k) +
                     " x " + std::to_string(groups * k));
  }
  for (const auto& [j, c] : p_h.coeffs()) {
    if ((j < 0 || j > d1) && c.cwiseAbs().maxCoeff() != 0.0) {
      throw ShapeError("unpack_factors: factor has a coefficient outside degree 0.." +
                       std::to_string(d1));
    }
  }
  const double norm = 1.0 / std::sqrt(static_cast<double>(d2));
  std::vector<MatrixPoly2> out;
  for (int g = 0; g < groups; ++g) {
    std::map<Index2, Matrix> coeffs;
    for (const auto& [j, c] : p_h.coeffs()) {
      if (j < 0 || j > d1) continue;
      for (int p = 0; p < groups; ++p) {
        Matrix blk = norm * c.block(g * k, p * k, k, k);
        if (blk.cwiseAbs().maxCoeff() == 0.0) continue;
        coeffs[{j, groups - 1 - p}] = std::move(blk);
      }
    }
    if (coeffs.empty()) continue;
    out.push_back(MatrixPoly2::Analytic(k, k, {d1, groups - 1}, std::move(coeffs)));
  }
  return out;
}

namespace {

SosCertificate finish(const MatrixPoly2& q, std::vector<MatrixPoly2> factors,
                      const Factor2dOptions& opts, SosCertificate cert) {
  auto t0 = Clock::now();
  VerifyReport rep = verify_certificate(q, factors, opts.verify_grid);
  cert.metadata["ms_verify"] = elapsed_ms(t0);
  cert.factors = std::move(factors);
  cert.residual = rep.residual_sup;
  cert.residual_rms = rep.residual_rms;
  cert.degree_ok = rep.degree_ok;
  cert.count_ok = rep.count_ok;
  cert.accepted = rep.degree_ok && rep.count_ok && rep.residual_sup <= opts.certificate_tol;
  return cert;
}

}  // namespace

SosCertificate factor_2d(const MatrixPoly2& q, const Factor2dOptions& opts) {
  if (!q.is_hermitian()) throw ShapeError("factor_2d requires a hermitian polynomial");
  const auto [d1, d2] = q.degree();
  const int k = q.rows();

  PsdGridReport psd = psd_check_poly(q, 4 * d1 + 1, 4 * d2 + 1);
  if (psd.min_eigenvalue < -1e-8) {
    std::ostringstream msg;
    msg << "input not positive semidefinite, min eigenvalue " << psd.min_eigenvalue
        << " at z=exp(2pi i*(" << psd.argmin[0] << ", " << psd.argmin[1] << "))";
    throw NotPsdError(msg.str(), psd.min_eigenvalue, psd.argmin);
  }

  SosCertificate cert;
  auto start = Clock::now();

  if (d2 == 0) {
    cert.route = "one-variable";
    cert.degree_box = {d1, 0};
    MatrixPoly1 r0 = z2_coefficient(q, 0).with_kind(PolyKind::kHermitian);
    Factor1dResult f = run_stage("factor-H", [&] { return factor_1d_best(r0, opts.fr1d); });
    cert.metadata["fr1d_residual"] = f.residual;
    cert.metadata["fr1d_eps"] = f.eps;
    cert.metadata["fr1d_n_blocks"] = f.n_blocks;
    cert.metadata["ms_factor"] = elapsed_ms(start);
    std::map<Index2, Matrix> coeffs;
    for (const auto& [j, c] : f.factor.coeffs()) coeffs[{j, 0}] = c;
    std::vector<MatrixPoly2> factors{MatrixPoly2::Analytic(k, k, {d1, 0}, std::move(coeffs))};
    return finish(q, std::move(factors), opts, std::move(cert));
  }

  cert.degree_box = {d1, 2 * d2 - 1};
  PencilPair pair = run_stage("regroup", [&] { return regroup_blocks(q); });

  // Extremal symbols, doubling the grid while the tail beyond d1 is too large.
  auto t_ext = Clock::now();
  int n = opts.grid_size > 0 ? opts.grid_size : std::max(64, 8 * d1);
  std::optional<ExtremalSymbolPair> ext;
  std::string ext_error;
  int doublings = 0;
  try {
    double previous_tail = INFINITY;
    for (;; ++doublings) {
      ext = compute_extremal_pair(pair, n, opts);
      if (ext->degree_ok || doublings == opts.max_doublings) break;
      // Aliasing shrinks as the grid doubles; a tail that does not at least
      // halve is genuine slow decay.
      if (ext->tail_ratio > 0.5 * previous_tail) break;
      previous_tail = ext->tail_ratio;
      n *= 2;
    }
  } catch (const std::exception& e) {
    ext_error = e.what();
    if (!opts.member_search) {
      throw StageError("extremal-pair", e.what());
    }
  }
  cert.metadata["ms_extremal"] = elapsed_ms(t_ext);
  cert.metadata["extremal_doublings"] = doublings;
  if (ext) {
    cert.metadata["extremal_grid"] = ext->grid_size;
    cert.metadata["extremal_tail_ratio"] = ext->tail_ratio;
    cert.metadata["extremal_max_iterations"] = ext->max_iterations;
  }

  MatrixPoly1 h;
  if (ext && ext->degree_ok) {
    cert.route = "extremal";
    h = run_stage("assemble-H", [&] { return assemble_H(pair, ext->m_hat); });
  } else {
    if (!opts.member_search) {
      throw StageError("extremal-pair",
                       "degree validation failed, increase N or inspect continuity (tail ratio " +
                           std::to_string(ext->tail_ratio) + ")");
    }
    cert.route = "member-search";
    auto t_search = Clock::now();
    const int search_n = pow2_at_least(std::max(128, 8 * d1 + 1));
    MemberSearchResult found = run_stage("member-search", [&] {
      MemberSearchResult r;
      if (ext) r = search_polynomial_member(pair, ext->m_hat, search_n);
      if (!r.feasible) {
        // Restart from the midpoint of the extreme members.
        std::vector<Matrix> a = samples_of(pair.a, search_n);
        std::vector<Matrix> b = samples_of(pair.b, search_n);
        std::vector<Matrix> mid(search_n);
        parallel_for(search_n, [&](int j) {
          mid[j] = 0.5 * (m_plus(a[j], b[j]) + m_minus(a[j], b[j]));
        });
        MatrixPoly1 seed = fourier_coeffs_1d(mid, d1, PolyKind::kHermitian);
        MemberSearchResult second = search_polynomial_member(pair, seed, search_n);
        second.iterations += r.iterations;
        if (second.feasible || !ext || second.margin > r.margin) r = second;
      }
      if (!r.feasible) {
        throw NotPsdError("no degree-" + std::to_string(d1) +
                              " member found (best margin " + std::to_string(r.margin) + ")",
                          r.margin);
      }
      return r;
    });
    cert.metadata["ms_member_search"] = elapsed_ms(t_search);
    cert.metadata["member_margin"] = found.margin;
    cert.metadata["member_iterations"] = found.iterations;
    h = run_stage("assemble-H", [&] { return assemble_H(pair, found.m); });
  }

  auto t_fac = Clock::now();
  Factor1dResult f = run_stage("factor-H", [&] { return factor_1d_best(h, opts.fr1d); });
  cert.metadata["ms_factor"] = elapsed_ms(t_fac);
  cert.metadata["fr1d_residual"] = f.residual;
  cert.metadata["fr1d_eps"] = f.eps;
  cert.metadata["fr1d_n_blocks"] = f.n_blocks;

  std::vector<MatrixPoly2> factors =
      run_stage("unpack", [&] { return unpack_factors(f.factor, d1, d2, k); });
  cert.metadata["ms_total_before_verify"] = elapsed_ms(start);
  if (!ext_error.empty()) cert.metadata["extremal_failed"] = 1.0;
  return finish(q, std::move(factors), opts, std::move(cert));
}

MatrixPoly2 swap_variables(const MatrixPoly2& q) {
  std::map<Index2, Matrix> out;
  for (const auto& [n, c] : q.coeffs()) out[{n.second, n.first}] = c;
  const Index2 degree{q.degree().second, q.degree().first};
  switch (q.kind()) {
    case PolyKind::kHermitian:
      return MatrixPoly2::Hermitian(q.rows(), degree, std::move(out));
    case PolyKind::kAnalytic:
      return MatrixPoly2::Analytic(q.rows(), q.cols(), degree, std::move(out));
    case PolyKind::kGeneral:
      break;
  }
  return MatrixPoly2::General(q.rows(), q.cols(), degree, std::move(out));
}

}  // namespace trigfactor
