#include "trigfactor/genbench.hpp"

#include <gtest/gtest.h>

#include <sstream>

#include "trigfactor/certify.hpp"
#include "trigfactor/errors.hpp"
#include "trigfactor/fr1d.hpp"
#include "trigfactor/psdcore.hpp"

namespace trigfactor {
namespace {

TEST(RandomSos2d, NoFactorsGiveZero) {
  SosInstance2 inst = random_sos_2d(2, 1, 1, 0, 1);
  EXPECT_TRUE(inst.planted.empty());
  for (const auto& [key, c] : inst.q.coeffs()) EXPECT_EQ(c.norm(), 0.0);
  EXPECT_TRUE(inst.q.is_hermitian());
}

TEST(RandomSos2d, SeedDeterminism) {
  SosInstance2 a = random_sos_2d(2, 2, 1, 3, 42);
  SosInstance2 b = random_sos_2d(2, 2, 1, 3, 42);
  SosInstance2 c = random_sos_2d(2, 2, 1, 3, 43);
  ASSERT_EQ(a.q.coeffs().size(), b.q.coeffs().size());
  for (const auto& [key, m] : a.q.coeffs()) EXPECT_EQ(m, b.q.coeff(key.first, key.second));
  EXPECT_GT(max_coeff_diff(a.q, c.q), 0.0);
}

TEST(RandomSos2d, PlantedFactorsReproduceQ) {
  SosInstance2 inst = random_sos_2d(2, 1, 2, 2, 5);
  ASSERT_EQ(inst.planted.size(), 2u);
  for (const auto& f : inst.planted) {
    EXPECT_TRUE(f.is_analytic());
    EXPECT_EQ(f.degree(), (Index2{1, 2}));
  }
  EXPECT_LE(max_coeff_diff(hermitian_square_sum(inst.planted), inst.q), 1e-14);
}

TEST(RandomSos2d, NormalizedAndPositive) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    SosInstance2 inst = random_sos_2d(1 + seed % 2, 1 + seed % 3, 1 + seed % 2, 2, seed);
    EXPECT_GE(psd_check_poly(inst.q, 16, 16).min_eigenvalue, -1e-10) << "seed " << seed;
  }
  SosInstance2 inst = random_sos_2d(2, 2, 2, 2, 0);
  double top = 0.0;
  for (int a = 0; a < 32; ++a) {
    for (int b = 0; b < 32; ++b) {
      top = std::max(top, spectral_norm(evaluate(inst.q, unit_point(a / 32.0),
                                                 unit_point(b / 32.0))));
    }
  }
  EXPECT_NEAR(top, 1.0, 0.2);
}

TEST(RandomSos2d, InvalidParameters) {
  EXPECT_THROW(random_sos_2d(0, 1, 1, 1, 0), ShapeError);
  EXPECT_THROW(random_sos_2d(1, -1, 1, 1, 0), ShapeError);
  EXPECT_THROW(random_sos_2d(1, 1, 1, -1, 0), ShapeError);
}

TEST(RandomSos1d, DeterministicAndPositive) {
  SosInstance1 a = random_sos_1d(3, 4, 2, 9);
  SosInstance1 b = random_sos_1d(3, 4, 2, 9);
  EXPECT_EQ(max_coeff_diff(a.q, b.q), 0.0);
  EXPECT_GE(psd_check_poly(a.q, 256).min_eigenvalue, -1e-10);
  EXPECT_THROW(random_sos_1d(0, 1, 1, 0), ShapeError);
}

TEST(BoundarySingular, ScalarRootAtOneIsTwoMinusZ) {
  BoundarySingular inst = random_boundary_singular_1d(1, 1, 0, 0.0);
  MatrixPoly1 expected = MatrixPoly1::Hermitian(
      1, 1, {{0, Matrix::Constant(1, 1, 2.0)}, {1, Matrix::Constant(1, 1, -1.0)}});
  EXPECT_LE(max_coeff_diff(inst.q, expected), 1e-15);
  EXPECT_NEAR(std::abs(inst.zeta - 1.0), 0.0, 1e-15);
}

TEST(BoundarySingular, TouchesZeroOnTheCircle) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    BoundarySingular inst = random_boundary_singular_1d(2, 3, seed);
    EXPECT_NEAR(std::abs(inst.zeta), 1.0, 1e-15);
    const double arg = std::arg(inst.zeta) / (2.0 * M_PI);
    double fine_min = 1e300;
    for (int j = -50; j <= 50; ++j) {
      fine_min = std::min(fine_min, min_eigenvalue(evaluate(inst.q, unit_point(arg + j * 1e-6))));
    }
    EXPECT_LE(fine_min, 1e-6);
    EXPECT_GE(psd_check_poly(inst.q, 4096).min_eigenvalue, -1e-10);
  }
}

TEST(BoundarySingular, RootRecoveredFromAcceptedFactor) {
  for (std::uint64_t seed = 10; seed < 13; ++seed) {
    BoundarySingular inst = random_boundary_singular_1d(2, 2, seed);
    Factor1dResult r = factor_1d_best(inst.q);
    ASSERT_LE(r.residual, 1e-5);
    double closest = 1e300;
    for (const Complex& root : is_outer(r.factor, 1e-4).roots) {
      closest = std::min(closest, std::abs(root - inst.zeta));
    }
    EXPECT_LE(closest, 1e-4);
  }
}

TEST(BoundarySingular, InvalidParameters) {
  EXPECT_THROW(random_boundary_singular_1d(0, 1, 0), ShapeError);
  EXPECT_THROW(random_boundary_singular_1d(1, 0, 0), ShapeError);
}

TEST(Bench, EmptyCorpus) {
  BenchConfig cfg;
  EXPECT_TRUE(bench_suite(cfg).empty());
  std::ostringstream out;
  write_bench_csv(out, {});
  EXPECT_EQ(out.str(), "instance_id,k,d1,d2,stage,wall_ms,residual,iters,accepted\n");
}

TEST(Bench, DefaultCorpusIsAccepted) {
  std::vector<BenchRow> rows = bench_suite(default_bench_config());
  ASSERT_FALSE(rows.empty());
  int totals = 0;
  for (const auto& r : rows) {
    if (r.stage != "total") continue;
    ++totals;
    EXPECT_EQ(r.accepted, "true") << r.instance_id;
    EXPECT_LE(r.residual, 1e-5) << r.instance_id;
  }
  EXPECT_EQ(totals, static_cast<int>(default_bench_config().instances.size()));
  std::ostringstream out;
  write_bench_csv(out, rows);
  std::string header;
  std::istringstream in(out.str());
  std::getline(in, header);
  EXPECT_EQ(header, "instance_id,k,d1,d2,stage,wall_ms,residual,iters,accepted");
}

TEST(Bench, BudgetOverrunIsFlaggedAndRunContinues) {
  BenchConfig cfg;
  cfg.instances = {{"a", 1, 1, 1, 2, 1}, {"b", 1, 1, 1, 2, 2}};
  cfg.time_budget_ms = 1e-9;
  std::vector<BenchRow> rows = bench_suite(cfg);
  int flagged = 0;
  for (const auto& r : rows) {
    if (r.stage == "total") {
      EXPECT_EQ(r.accepted, "over_budget");
      ++flagged;
    }
  }
  EXPECT_EQ(flagged, 2);
}

TEST(Bench, RowsFollowInstanceOrder) {
  BenchConfig cfg;
  cfg.instances = {{"first", 1, 1, 1, 2, 1}, {"second", 1, 1, 1, 2, 2}};
  std::vector<BenchRow> rows = bench_suite(cfg);
  ASSERT_FALSE(rows.empty());
  EXPECT_EQ(rows.front().instance_id, "first");
  EXPECT_EQ(rows.back().instance_id, "second");
  EXPECT_EQ(rows.front().stage, "generate");
  EXPECT_EQ(rows.back().stage, "total");
}

}  // namespace
}  // namespace trigfactor
