#pragma once

// Seeded random instances and a small benchmark harness.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "trigfactor/fr2d.hpp"
#include "trigfactor/matpoly.hpp"

namespace trigfactor {

struct SosInstance2 {
  MatrixPoly2 q;
  std::vector<MatrixPoly2> planted;
};

struct SosInstance1 {
  MatrixPoly1 q;
  std::vector<MatrixPoly1> planted;
};

/// Q = sum F^*F over n_factors analytic k x k factors of degree (d1, d2) with
/// entries uniform on [-1,1] + i[-1,1], rescaled so max_grid |Q| is about 1.
SosInstance2 random_sos_2d(int k, int d1, int d2, int n_factors, std::uint64_t seed);
SosInstance1 random_sos_1d(int k, int d, int n_factors, std::uint64_t seed);

struct BoundarySingular {
  MatrixPoly1 q;
  MatrixPoly1 p;        // planted factor, Q = P^*P
  Complex zeta;         // planted root of det P on the unit circle
};

/// P(z) = R(z) (I - conj(zeta) z v v^*) with R = I + sum_{j<d} R_j z^j small
/// enough that det R has no zeros in the closed disk. When zeta_angle is
/// unset the root is drawn from the seed; zeta = exp(2 pi i angle).
BoundarySingular random_boundary_singular_1d(int k, int d, std::uint64_t seed,
                                             std::optional<double> zeta_angle = {});

struct BenchInstance {
  std::string id;
  int k = 1;
  int d1 = 1;
  int d2 = 1;
  int n_factors = 2;
  std::uint64_t seed = 0;
};

struct BenchConfig {
  std::vector<BenchInstance> instances;
  double time_budget_ms = 600000.0;
  Factor2dOptions options;
};

struct BenchRow {
  std::string instance_id;
  int k = 0;
  int d1 = 0;
  int d2 = 0;
  std::string stage;
  double wall_ms = 0.0;
  double residual = 0.0;
  int iters = 0;
  std::string accepted;   // "true", "false", "over_budget" or "error"
};

BenchConfig default_bench_config();
std::vector<BenchRow> bench_suite(const BenchConfig& config);
void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows);

}  // namespace trigfactor
