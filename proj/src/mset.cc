#include "trigfactor/mset.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "trigfactor/errors.hpp"

namespace trigfactor {
namespace {

// Factorizations inside the singleton test run close to rank boundaries;
// the consistency of B with the factor ranges is checked loosely.
constexpr double kMemberRankTol = 1e-12;
constexpr double kMemberNegTol = 1e-8;
constexpr double kConsistencyTol = 1e-5;

void check_pencil(const Matrix& a, const Matrix& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
    throw ShapeError("pencil matrices must be square and of equal size");
  }
}

Matrix hermitian_part(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

// Symbol A + B z + B^* conj(z) of the tridiagonal operator on a coarse grid.
void check_symbol_psd(const Matrix& a, const Matrix& b, double scale) {
  constexpr int kGrid = 64;
  for (int j = 0; j < kGrid; ++j) {
    const double t = static_cast<double>(j) / kGrid;
    const Complex z = unit_point(t);
    Matrix s = a + z * b + std::conj(z) * b.adjoint();
    const double lmin = min_eigenvalue(s);
    if (lmin < -1e-10 * scale) {
      throw NotPsdError("tridiagonal operator is not positive semidefinite, min eigenvalue " +
                            std::to_string(lmin) + " at t=" + std::to_string(t),
                        lmin, {t});
    }
  }
}

}  // namespace

bool mset_membership(const Matrix& a, const Matrix& b, const Matrix& m, double tol) {
  check_pencil(a, b);
  if (m.rows() != a.rows() || m.cols() != a.cols()) {
    throw ShapeError("mset_membership: M has the wrong shape");
  }
  const Eigen::Index n = a.rows();
  Matrix h(2 * n, 2 * n);
  h << a - m, b.adjoint(), b, m;
  return min_eigenvalue(h) >= -tol;
}

Matrix m_plus(const Matrix& a, const Matrix& b, double tol, int max_iter) {
  check_pencil(a, b);
  const double scale = std::max({1.0, spectral_norm(a), spectral_norm(b)});
  check_symbol_psd(a, b, scale);

  Matrix corner = hermitian_part(a);
  Matrix diag = corner;
  Matrix sub = b;
  Matrix super = b.adjoint();
  for (int it = 1; it <= max_iter; ++it) {
    Matrix inv = hermitian_pinv(diag, kRankTol);
    Matrix inv_sub = inv * sub;
    Matrix inv_super = inv * super;
    Matrix next_corner = hermitian_part(corner - super * inv_sub);
    Matrix next_diag = hermitian_part(diag - sub * inv_super - super * inv_sub);
    Matrix next_sub = -sub * inv_sub;
    Matrix next_super = -super * inv_super;

    // The symbol passed the PSD check, so a reduced diagonal turning
    // indefinite is rounding amplified near the boundary of the PSD cone; the
    // previous corner is as accurate as the data allow.
    if (min_eigenvalue(next_diag) < -1e-12 * std::max(spectral_norm(diag), 1e-300)) {
      return corner;
    }
    const double delta = spectral_norm(next_corner - corner);
    corner = std::move(next_corner);
    diag = std::move(next_diag);
    sub = std::move(next_sub);
    super = std::move(next_super);
    if (delta <= tol * scale || spectral_norm(sub) <= 1e-300) {
      if (min_eigenvalue(corner) < -1e-9 * scale) {
        throw NotPsdError("maximal element is not positive semidefinite",
                          min_eigenvalue(corner));
      }
      return corner;
    }
    if (it == max_iter) {
      throw ConvergenceError("m_plus: no convergence after " + std::to_string(max_iter) +
                                 " reduction steps",
                             delta, it);
    }
  }
  return corner;
}

Matrix m_minus(const Matrix& a, const Matrix& b, double tol, int max_iter) {
  check_pencil(a, b);
  Matrix n_plus = m_plus(a, b.adjoint(), tol, max_iter);
  return hermitian_part(a - n_plus);
}

MemberAnalysis analyze_member(const Matrix& a, const Matrix& b, const Matrix& m) {
  check_pencil(a, b);
  MemberAnalysis out;
  // Effective ranges are cut relative to the pencil, not to each factor, so a
  // side that has shrunk to rounding level counts as trivial.
  const double scale = std::max({1.0, spectral_norm(a), spectral_norm(b)});
  auto factor = [&](const Matrix& s) {
    const Matrix h = hermitian_part(s);
    const double top = std::max(spectral_norm(h), 1e-300);
    return psd_factor(h, kMemberRankTol * std::max(1.0, scale / top), kMemberNegTol);
  };
  out.e_side = factor(a - m);
  out.f_side = factor(m);
  out.contraction = contraction_G(b, out.e_side, out.f_side, kConsistencyTol);
  return out;
}

double MSetReport::max_defect() const {
  return std::max({star_defects.isometry, star_defects.coisometry, plus_defects.isometry,
                   plus_defects.coisometry, minus_defects.isometry,
                   minus_defects.coisometry});
}

namespace {

DefectPair defects_of(const MemberAnalysis& m) {
  return {m.contraction.defect_isometry, m.contraction.defect_coisometry};
}

}  // namespace

MSetReport extremality_report(const Matrix& a, const Matrix& b, double tol) {
  MSetReport r;
  r.m_plus = m_plus(a, b);
  r.m_minus = m_minus(a, b);
  r.m_star = 0.5 * (r.m_plus + r.m_minus);
  r.gap = spectral_norm(r.m_plus - r.m_minus);
  r.star_defects = defects_of(analyze_member(a, b, r.m_star));
  r.plus_defects = defects_of(analyze_member(a, b, r.m_plus));
  r.minus_defects = defects_of(analyze_member(a, b, r.m_minus));
  r.is_singleton = r.gap <= tol && r.max_defect() <= tol;
  return r;
}

std::string to_string(ShrinkKind kind) {
  return kind == ShrinkKind::kShrinkESide ? "shrink_E_side" : "shrink_F_side";
}

ExtremalizationResult extremalize(const Matrix& a, const Matrix& b, double tol,
                                  int max_iter) {
  check_pencil(a, b);
  const double scale = std::max({1.0, spectral_norm(a), spectral_norm(b)});
  ExtremalizationResult res;
  Matrix cur = hermitian_part(a);
  for (int it = 0;; ++it) {
    MSetReport report = extremality_report(cur, b, tol);
    if (report.is_singleton) {
      res.a_hat = cur;
      res.m_hat = report.m_star;
      res.iterations = it;
      res.final_report = std::move(report);
      return res;
    }
    if (it == max_iter) {
      throw ConvergenceError("extremalize: no singleton after " + std::to_string(max_iter) +
                                 " iterations (gap " + std::to_string(report.gap) + ")",
                             report.gap, it);
    }

    const std::array<const Matrix*, 3> members{&report.m_star, &report.m_plus,
                                               &report.m_minus};
    // First member whose contraction fails unitarity; when the gap is open but
    // every defect is already below tol, the member with the largest defect.
    int chosen = -1;
    bool e_side = true;
    double best = 0.0;
    int best_member = -1;
    bool best_e_side = true;
    std::array<MemberAnalysis, 3> analyses;
    for (int i = 0; i < 3; ++i) {
      analyses[i] = analyze_member(cur, b, *members[i]);
      const Contraction& g = analyses[i].contraction;
      if (g.defect_isometry > tol) {
        chosen = i;
        e_side = true;
        break;
      }
      if (g.defect_coisometry > tol) {
        chosen = i;
        e_side = false;
        break;
      }
      if (g.defect_isometry > best) {
        best = g.defect_isometry;
        best_member = i;
        best_e_side = true;
      }
      if (g.defect_coisometry > best) {
        best = g.defect_coisometry;
        best_member = i;
        best_e_side = false;
      }
    }
    if (chosen < 0) {
      if (best_member < 0 || best <= 1e-15) {
        throw ConvergenceError("extremalize: contractions unitary but gap " +
                                   std::to_string(report.gap) + " above tolerance",
                               report.gap, it);
      }
      chosen = best_member;
      e_side = best_e_side;
    }

    const MemberAnalysis& m = analyses[chosen];
    const Matrix& g = m.contraction.g;
    Matrix next;
    if (e_side) {
      Matrix ge = g * m.e_side.factor;
      next = ge.adjoint() * ge + *members[chosen];
    } else {
      const Eigen::Index rf = g.rows();
      Matrix defect = Matrix::Identity(rf, rf) - g * g.adjoint();
      next = cur - m.f_side.factor.adjoint() * defect * m.f_side.factor;
    }
    next = hermitian_part(next);
    const double decrement = spectral_norm(cur - next);
    res.trace_log.push_back({e_side ? ShrinkKind::kShrinkESide : ShrinkKind::kShrinkFSide,
                             decrement, min_eigenvalue(cur - next)});
    if (decrement <= 1e-16 * scale) {
      throw ConvergenceError("extremalize: stalled with gap " + std::to_string(report.gap),
                             report.gap, it);
    }
    cur = std::move(next);
  }
}

}  // namespace trigfactor
