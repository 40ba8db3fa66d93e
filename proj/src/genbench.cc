#include "trigfactor/genbench.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <random>

#include "trigfactor/errors.hpp"
#include "trigfactor/parallel.hpp"
#include "trigfactor/psdcore.hpp"

namespace trigfactor {
namespace {

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed), unit_(-1.0, 1.0) {}

  Matrix matrix(int rows, int cols) {
    Matrix m(rows, cols);
    for (int c = 0; c < cols; ++c) {
      for (int r = 0; r < rows; ++r) {
        const double re = unit_(rng_);
        const double im = unit_(rng_);
        m(r, c) = Complex(re, im);
      }
    }
    return m;
  }

  double uniform01() { return 0.5 * (unit_(rng_) + 1.0); }

 private:
  std::mt19937_64 rng_;
  std::uniform_real_distribution<double> unit_;
};

void check_params(int k, int d1, int d2, int n_factors) {
  if (k < 1) throw ShapeError("k must be >= 1");
  if (d1 < 0 || d2 < 0) throw ShapeError("degrees must be >= 0");
  if (n_factors < 0) throw ShapeError("n_factors must be >= 0");
}

double grid_norm(const MatrixPoly2& q) {
  const int n1 = 4 * q.degree().first + 4;
  const int n2 = 4 * q.degree().second + 4;
  double out = 0.0;
  for (int a = 0; a < n1; ++a) {
    for (int b = 0; b < n2; ++b) {
      out = std::max(out, spectral_norm(evaluate(q, unit_point(static_cast<double>(a) / n1),
                                                 unit_point(static_cast<double>(b) / n2))));
    }
  }
  return out;
}

double grid_norm(const MatrixPoly1& q) {
  const int n = 4 * q.degree() + 4;
  double out = 0.0;
  for (int a = 0; a < n; ++a) {
    out = std::max(out, spectral_norm(evaluate(q, unit_point(static_cast<double>(a) / n))));
  }
  return out;
}

}  // namespace

SosInstance2 random_sos_2d(int k, int d1, int d2, int n_factors, std::uint64_t seed) {
  check_params(k, d1, d2, n_factors);
  SosInstance2 out;
  if (n_factors == 0) {
    out.q = MatrixPoly2::Hermitian(k, {d1, d2}, {});
    return out;
  }
  Sampler s(seed);
  std::vector<std::map<Index2, Matrix>> raw(n_factors);
  for (auto& f : raw) {
    for (int a = 0; a <= d1; ++a) {
      for (int b = 0; b <= d2; ++b) f[{a, b}] = s.matrix(k, k);
    }
  }
  for (auto& f : raw) out.planted.push_back(MatrixPoly2::Analytic(k, k, {d1, d2}, f));
  const double norm = grid_norm(hermitian_square_sum(out.planted));
  const double scale = norm > 0.0 ? 1.0 / std::sqrt(norm) : 1.0;
  out.planted.clear();
  for (auto& f : raw) {
    for (auto& [key, c] : f) c *= scale;
    out.planted.push_back(MatrixPoly2::Analytic(k, k, {d1, d2}, f));
  }
  out.q = hermitian_square_sum(out.planted);
  return out;
}

SosInstance1 random_sos_1d(int k, int d, int n_factors, std::uint64_t seed) {
  check_params(k, d, 0, n_factors);
  SosInstance1 out;
  if (n_factors == 0) {
    out.q = MatrixPoly1::Hermitian(k, d, {});
    return out;
  }
  Sampler s(seed);
  std::vector<std::map<int, Matrix>> raw(n_factors);
  for (auto& f : raw) {
    for (int a = 0; a <= d; ++a) f[a] = s.matrix(k, k);
  }
  for (auto& f : raw) out.planted.push_back(MatrixPoly1::Analytic(k, k, d, f));
  const double norm = grid_norm(hermitian_square_sum(out.planted));
  const double scale = norm > 0.0 ? 1.0 / std::sqrt(norm) : 1.0;
  out.planted.clear();
  for (auto& f : raw) {
    for (auto& [key, c] : f) c *= scale;
    out.planted.push_back(MatrixPoly1::Analytic(k, k, d, f));
  }
  out.q = hermitian_square_sum(out.planted);
  return out;
}

BoundarySingular random_boundary_singular_1d(int k, int d, std::uint64_t seed,
                                             std::optional<double> zeta_angle) {
  if (k < 1) throw ShapeError("k must be >= 1");
  if (d < 1) throw ShapeError("boundary-singular instances need degree >= 1");
  Sampler s(seed);
  BoundarySingular out;
  const double angle = zeta_angle ? *zeta_angle : s.uniform01();
  out.zeta = std::polar(1.0, 2.0 * std::numbers::pi * angle);

  // sum_j |R_j| <= 1/2 keeps R invertible on the closed disk.
  const double c = 0.5 / (k * std::max(1, d - 1) * std::numbers::sqrt2);
  std::map<int, Matrix> r;
  r[0] = Matrix::Identity(k, k);
  for (int j = 1; j < d; ++j) r[j] = c * s.matrix(k, k);
  Eigen::VectorXcd v = s.matrix(k, 1).col(0);
  v.normalize();

  std::map<int, Matrix> lin;
  lin[0] = Matrix::Identity(k, k);
  lin[1] = -std::conj(out.zeta) * (v * v.adjoint());
  out.p = MatrixPoly1::Analytic(k, k, d - 1, r) * MatrixPoly1::Analytic(k, k, 1, lin);
  out.q = hermitian_square_sum(std::vector<MatrixPoly1>{out.p});
  return out;
}

BenchConfig default_bench_config() {
  BenchConfig cfg;
  const int shapes[][3] = {{1, 1, 1}, {1, 2, 1}, {2, 1, 1}, {1, 1, 2}, {2, 2, 2}};
  std::uint64_t seed = 1;
  for (const auto& sh : shapes) {
    BenchInstance inst;
    inst.k = sh[0];
    inst.d1 = sh[1];
    inst.d2 = sh[2];
    inst.n_factors = 2;
    inst.seed = seed++;
    inst.id = "sos_k" + std::to_string(inst.k) + "_d" + std::to_string(inst.d1) + "x" +
              std::to_string(inst.d2) + "_s" + std::to_string(inst.seed);
    cfg.instances.push_back(inst);
  }
  return cfg;
}

std::vector<BenchRow> bench_suite(const BenchConfig& config) {
  using Clock = std::chrono::steady_clock;
  const int n = static_cast<int>(config.instances.size());
  std::vector<std::vector<BenchRow>> per(n);
  parallel_for(n, [&](int i) {
    const BenchInstance& inst = config.instances[i];
    auto row = [&](std::string stage, double ms, double residual, int iters,
                   std::string accepted) {
      per[i].push_back({inst.id, inst.k, inst.d1, inst.d2, std::move(stage), ms, residual,
                        iters, std::move(accepted)});
    };
    auto t0 = Clock::now();
    try {
      SosInstance2 gen = random_sos_2d(inst.k, inst.d1, inst.d2, inst.n_factors, inst.seed);
      const double gen_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
      row("generate", gen_ms, 0.0, 0, "true");
      auto t1 = Clock::now();
      SosCertificate cert = factor_2d(gen.q, config.options);
      const double total =
          gen_ms + std::chrono::duration<double, std::milli>(Clock::now() - t1).count();
      auto meta = [&](const char* key) {
        auto it = cert.metadata.find(key);
        return it == cert.metadata.end() ? 0.0 : it->second;
      };
      const std::string verdict = total > config.time_budget_ms
                                      ? "over_budget"
                                      : (cert.accepted ? "true" : "false");
      row("extremal", meta("ms_extremal"), meta("extremal_tail_ratio"),
          static_cast<int>(meta("extremal_max_iterations")), verdict);
      if (cert.metadata.count("ms_member_search") != 0) {
        row("member_search", meta("ms_member_search"), meta("member_margin"),
            static_cast<int>(meta("member_iterations")), verdict);
      }
      row("factor", meta("ms_factor"), meta("fr1d_residual"),
          static_cast<int>(meta("fr1d_n_blocks")), verdict);
      row("verify", meta("ms_verify"), cert.residual, 0, verdict);
      row("total", total, cert.residual, 0, verdict);
    } catch (const std::exception&) {
      const double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
      row("total", ms, std::numeric_limits<double>::quiet_NaN(), 0, "error");
    }
  });
  std::vector<BenchRow> rows;
  for (auto& p : per) {
    for (auto& r : p) rows.push_back(std::move(r));
  }
  return rows;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << "instance_id,k,d1,d2,stage,wall_ms,residual,iters,accepted\n";
  char buf[64];
  for (const auto& r : rows) {
    out << r.instance_id << ',' << r.k << ',' << r.d1 << ',' << r.d2 << ',' << r.stage << ',';
    std::snprintf(buf, sizeof(buf), "%.3f", r.wall_ms);
    out << buf << ',';
    std::snprintf(buf, sizeof(buf), "%.17g", r.residual);
    out << buf << ',' << r.iters << ',' << r.accepted << '\n';
  }
}

}  // namespace trigfactor
