// trigfactor: factor, verify and analyze matrix trigonometric polynomials.
//
// Exit codes: 0 accepted, 2 rejected (residual or feasibility), 1 usage or
// input error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "trigfactor/certify.hpp"
#include "trigfactor/errors.hpp"
#include "trigfactor/fr1d.hpp"
#include "trigfactor/fr2d.hpp"
#include "trigfactor/genbench.hpp"
#include "trigfactor/json_io.hpp"
#include "trigfactor/mset.hpp"
#include "trigfactor/psdcore.hpp"

namespace tf = trigfactor;
using tf::Json;

namespace {

constexpr int kAccepted = 0;
constexpr int kFailure = 1;
constexpr int kRejected = 2;

// Raised for conditions that map to exit code 2 rather than 1.
class Rejection : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Common {
  std::optional<double> tol;
  int grid_size = 0;
  int max_iter = tf::kMsetMaxIter;
  std::vector<double> eps_schedule;
  double degree_tol = 1e-6;
  bool swap_vars = false;
  std::string out;
};

void emit(const std::string& out, const std::string& text) {
  if (out.empty()) {
    std::cout << text;
  } else {
    tf::write_text_atomic(out, text);
  }
}

Json report_json(const tf::VerifyReport& r) {
  return Json{{"residual_sup", r.residual_sup}, {"residual_rms", r.residual_rms},
              {"degree_ok", r.degree_ok},       {"count_ok", r.count_ok},
              {"min_eig", r.min_eig},           {"argmin", r.argmin}};
}

tf::MatrixPoly1 load_hermitian1(const Json& j) {
  tf::MatrixPoly1 p = tf::poly1_from_json(j);
  if (p.is_hermitian()) return p;
  if (p.rows() != p.cols()) throw tf::FormatError("field 'dim': polynomial must be square");
  tf::MatrixPoly1 h = p.with_kind(tf::PolyKind::kHermitian);
  if (h.symmetrization_correction() > tf::kAlgebraicTol) {
    throw tf::FormatError("field 'coeffs': polynomial is not hermitian");
  }
  return h;
}

tf::MatrixPoly2 load_hermitian2(const Json& j) {
  tf::MatrixPoly2 p;
  if (j.is_object() && j.value("vars", 0) == 1) {
    tf::MatrixPoly1 q = load_hermitian1(j);
    std::map<tf::Index2, tf::Matrix> coeffs;
    for (const auto& [n, c] : q.coeffs()) coeffs[{n, 0}] = c;
    return tf::MatrixPoly2::Hermitian(q.rows(), {q.degree(), 0}, std::move(coeffs));
  }
  p = tf::poly2_from_json(j);
  if (p.is_hermitian()) return p;
  if (p.rows() != p.cols()) throw tf::FormatError("field 'dim': polynomial must be square");
  tf::MatrixPoly2 h = p.with_kind(tf::PolyKind::kHermitian);
  if (h.symmetrization_correction() > tf::kAlgebraicTol) {
    throw tf::FormatError("field 'coeffs': polynomial is not hermitian");
  }
  return h;
}

const Json& factors_field(const Json& cert) {
  if (cert.is_object() && cert.contains("certificate")) {
    const Json& c = cert.at("certificate");
    if (!c.is_object() || !c.contains("factors")) {
      throw tf::FormatError("missing field 'certificate.factors'");
    }
    return c.at("factors");
  }
  if (!cert.is_object() || !cert.contains("factors")) {
    throw tf::FormatError("missing field 'factors'");
  }
  return cert.at("factors");
}

int cmd_factor1d(const std::string& input, const Common& c) {
  Json in = tf::read_json_file(input);
  tf::MatrixPoly1 q = load_hermitian1(in);
  tf::Factor1dOptions opts;
  opts.residual_tol = c.tol.value_or(1e-8);
  if (c.grid_size > 0) opts.grid_size = c.grid_size;
  if (!c.eps_schedule.empty()) opts.eps_schedule = c.eps_schedule;
  tf::Factor1dResult f = tf::factor_1d_best(q, opts);
  tf::VerifyReport rep = tf::verify_certificate(q, {f.factor}, opts.grid_size);
  const bool accepted = rep.residual_sup <= opts.residual_tol && rep.degree_ok && rep.count_ok;
  tf::OuterCheck outer = tf::is_outer(f.factor);

  Json report = report_json(rep);
  report["accepted"] = accepted;
  report["factor_residual"] = f.residual;
  report["eps"] = f.eps;
  report["n_blocks"] = f.n_blocks;
  report["outer"] = outer.outer;
  if (!outer.witness.empty()) report["outer_witness"] = outer.witness;
  Json out{{"polynomial", tf::to_json(q)},
           {"certificate",
            {{"factors", Json::array({tf::to_json(f.factor)})},
             {"residual", rep.residual_sup},
             {"degrees", Json::array({Json::array({f.factor.degree()})})},
             {"count", 1},
             {"accepted", accepted}}},
           {"report", report}};
  emit(c.out, tf::dump_json(out));
  return accepted ? kAccepted : kRejected;
}

int cmd_factor2d(const std::string& input, const Common& c) {
  Json in = tf::read_json_file(input);
  tf::MatrixPoly2 q = load_hermitian2(in);
  tf::Factor2dOptions opts;
  opts.certificate_tol = c.tol.value_or(1e-5);
  opts.grid_size = c.grid_size;
  opts.max_iter = c.max_iter;
  opts.degree_tol = c.degree_tol;
  if (!c.eps_schedule.empty()) opts.fr1d.eps_schedule = c.eps_schedule;

  tf::MatrixPoly2 target = c.swap_vars ? tf::swap_variables(q) : q;
  tf::SosCertificate cert = tf::factor_2d(target, opts);
  std::vector<tf::MatrixPoly2> factors;
  for (const auto& f : cert.factors) {
    factors.push_back(c.swap_vars ? tf::swap_variables(f) : f);
  }
  Json fjson = Json::array();
  Json degrees = Json::array();
  for (const auto& f : factors) {
    fjson.push_back(tf::to_json(f));
    degrees.push_back({f.degree().first, f.degree().second});
  }
  Json report{{"residual_sup", cert.residual},
              {"residual_rms", cert.residual_rms},
              {"degree_ok", cert.degree_ok},
              {"count_ok", cert.count_ok},
              {"accepted", cert.accepted},
              {"route", cert.route},
              {"swapped", c.swap_vars},
              {"metadata", cert.metadata}};
  Json out{{"polynomial", tf::to_json(q)},
           {"certificate",
            {{"factors", fjson},
             {"residual", cert.residual},
             {"degrees", degrees},
             {"count", factors.size()},
             {"accepted", cert.accepted}}},
           {"report", report}};
  emit(c.out, tf::dump_json(out));
  return cert.accepted ? kAccepted : kRejected;
}

int cmd_verify(const std::string& q_path, const std::string& cert_path, const Common& c) {
  Json qj = tf::read_json_file(q_path);
  Json cj = tf::read_json_file(cert_path);
  const Json& flist = factors_field(cj);
  if (!flist.is_array()) throw tf::FormatError("field 'factors' must be an array");
  const double tol = c.tol.value_or(1e-5);
  tf::VerifyReport rep;
  if (qj.is_object() && qj.value("vars", 0) == 1) {
    tf::MatrixPoly1 q = load_hermitian1(qj);
    std::vector<tf::MatrixPoly1> factors;
    for (const auto& f : flist) factors.push_back(tf::poly1_from_json(f));
    rep = tf::verify_certificate(q, factors, c.grid_size > 0 ? c.grid_size : 512);
  } else {
    tf::MatrixPoly2 q = load_hermitian2(qj);
    std::vector<tf::MatrixPoly2> factors;
    for (const auto& f : flist) factors.push_back(tf::poly2_from_json(f));
    const int n = c.grid_size > 0 ? c.grid_size : 64;
    rep = tf::verify_certificate(q, factors, n);
    if (!(rep.degree_ok && rep.count_ok)) {
      // Certificates produced with the variables exchanged obey the mirrored box.
      std::vector<tf::MatrixPoly2> swapped;
      for (const auto& f : factors) swapped.push_back(tf::swap_variables(f));
      tf::VerifyReport alt = tf::verify_certificate(tf::swap_variables(q), swapped, n);
      if (alt.degree_ok && alt.count_ok) {
        rep.degree_ok = true;
        rep.count_ok = true;
      }
    }
  }
  emit(c.out, tf::dump_json(report_json(rep)));
  return rep.residual_sup <= tol ? kAccepted : kRejected;
}

tf::PencilPair load_pair(const Json& j) {
  if (j.is_object() && j.contains("a") && j.contains("b")) {
    tf::PencilPair pair;
    pair.a = load_hermitian1(j.at("a"));
    pair.b = tf::poly1_from_json(j.at("b"));
    if (pair.a.rows() != pair.b.rows() || pair.b.rows() != pair.b.cols()) {
      throw tf::FormatError("field 'b': shape must match field 'a'");
    }
    pair.group = 1;
    pair.block_dim = pair.a.rows();
    return pair;
  }
  return tf::regroup_blocks(load_hermitian2(j));
}

int cmd_analyze_mset(const std::string& input, const Common& c, bool extremalize_flag) {
  Json in = tf::read_json_file(input);
  tf::PencilPair pair = load_pair(in);
  const int d1 = std::max(pair.a.degree(), pair.b.degree());
  const int n = c.grid_size > 0 ? c.grid_size : std::max(64, 8 * d1);
  const double tol = c.tol.value_or(tf::kMsetTol);
  std::vector<tf::Matrix> a = tf::sample_grid_1d(pair.a, n).samples;
  std::vector<tf::Matrix> b = tf::sample_grid_1d(pair.b, n).samples;

  Json per = Json::array();
  double max_gap = 0.0, min_gap = INFINITY, sum_gap = 0.0, max_defect = 0.0;
  bool all_singleton = true;
  for (int j = 0; j < n; ++j) {
    const double t = static_cast<double>(j) / n;
    tf::MSetReport r;
    try {
      r = tf::extremality_report(a[j], b[j], tol);
    } catch (const tf::NotPsdError& e) {
      std::ostringstream msg;
      msg << "set is empty at t=" << t << ": " << e.what();
      throw Rejection(msg.str());
    }
    max_gap = std::max(max_gap, r.gap);
    min_gap = std::min(min_gap, r.gap);
    sum_gap += r.gap;
    max_defect = std::max(max_defect, r.max_defect());
    all_singleton = all_singleton && r.is_singleton;
    per.push_back({{"t", t},
                   {"gap", r.gap},
                   {"max_defect", r.max_defect()},
                   {"is_singleton", r.is_singleton}});
  }
  Json out{{"grid_size", n},
           {"aggregate",
            {{"max_gap", max_gap},
             {"min_gap", min_gap},
             {"mean_gap", sum_gap / n},
             {"max_defect", max_defect},
             {"singleton_everywhere", all_singleton}}},
           {"frequencies", per}};

  if (extremalize_flag) {
    tf::Factor2dOptions opts;
    opts.mset_tol = tol;
    opts.max_iter = c.max_iter;
    opts.degree_tol = c.degree_tol;
    tf::ExtremalSymbolPair ext;
    try {
      ext = tf::compute_extremal_pair(pair, n, opts);
    } catch (const tf::StageError& e) {
      throw Rejection(e.what());
    }
    Json after = Json::array();
    bool all_after = true;
    for (int j = 0; j < n; ++j) {
      tf::ExtremalizationResult r = tf::extremalize(a[j], b[j], tol, c.max_iter);
      all_after = all_after && r.final_report.is_singleton;
      after.push_back({{"t", static_cast<double>(j) / n},
                       {"iterations", r.iterations},
                       {"gap", r.final_report.gap},
                       {"max_defect", r.final_report.max_defect()},
                       {"is_singleton", r.final_report.is_singleton}});
    }
    out["extremal"] = {{"a_hat", tf::to_json(ext.a_hat)},
                       {"m_hat", tf::to_json(ext.m_hat)},
                       {"decay_report", ext.decay_report},
                       {"tail_ratio", ext.tail_ratio},
                       {"degree_ok", ext.degree_ok},
                       {"grid_size", ext.grid_size},
                       {"singleton_everywhere", all_after},
                       {"frequencies", after}};
  }
  emit(c.out, tf::dump_json(out));
  return kAccepted;
}

struct GenerateArgs {
  std::string kind = "sos2d";
  int k = 1;
  int d1 = 1;
  int d2 = 1;
  int n_factors = 2;
  std::uint64_t seed = 0;
  std::optional<double> zeta_angle;
};

int cmd_generate(const GenerateArgs& g, const Common& c) {
  Json out;
  if (g.kind == "sos2d") {
    out = tf::to_json(tf::random_sos_2d(g.k, g.d1, g.d2, g.n_factors, g.seed).q);
  } else if (g.kind == "sos1d") {
    out = tf::to_json(tf::random_sos_1d(g.k, g.d1, g.n_factors, g.seed).q);
  } else if (g.kind == "boundary1d") {
    out = tf::to_json(tf::random_boundary_singular_1d(g.k, g.d1, g.seed, g.zeta_angle).q);
  } else {
    throw tf::ShapeError("unknown --kind '" + g.kind + "' (sos2d, sos1d, boundary1d)");
  }
  emit(c.out, tf::dump_json(out));
  return kAccepted;
}

tf::BenchConfig load_bench_config(const std::string& path) {
  if (path.empty()) return tf::default_bench_config();
  Json j = tf::read_json_file(path);
  tf::BenchConfig cfg;
  if (!j.is_object()) throw tf::FormatError("bench config must be an object");
  cfg.time_budget_ms = j.value("time_budget_ms", cfg.time_budget_ms);
  if (!j.contains("instances") || !j.at("instances").is_array()) {
    throw tf::FormatError("missing field 'instances'");
  }
  int idx = 0;
  for (const auto& e : j.at("instances")) {
    const std::string where = "instances[" + std::to_string(idx) + "]";
    if (!e.is_object()) throw tf::FormatError("field '" + where + "' must be an object");
    tf::BenchInstance inst;
    try {
      inst.k = e.value("k", 1);
      inst.d1 = e.value("d1", 1);
      inst.d2 = e.value("d2", 1);
      inst.n_factors = e.value("n_factors", 2);
      inst.seed = e.value("seed", static_cast<std::uint64_t>(idx));
      inst.id = e.value("id", "instance_" + std::to_string(idx));
    } catch (const Json::exception& ex) {
      throw tf::FormatError("field '" + where + "': " + ex.what());
    }
    if (inst.k < 1 || inst.d1 < 0 || inst.d2 < 0 || inst.n_factors < 0) {
      throw tf::FormatError("field '" + where + "' has an out-of-range parameter");
    }
    cfg.instances.push_back(inst);
    ++idx;
  }
  return cfg;
}

int cmd_bench(const std::string& config_path, const Common& c) {
  tf::BenchConfig cfg = load_bench_config(config_path);
  std::vector<tf::BenchRow> rows = tf::bench_suite(cfg);
  std::ostringstream csv;
  tf::write_bench_csv(csv, rows);
  emit(c.out, csv.str());
  return kAccepted;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Factor positive matrix trigonometric polynomials as sums of hermitian squares"};
  app.require_subcommand(1);

  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--tol", common.tol, "acceptance tolerance");
    sub->add_option("--grid-size", common.grid_size, "frequency grid size");
    sub->add_option("--out", common.out, "output path (default: stdout)");
  };

  std::string input, cert_path, config_path;
  bool extremalize_flag = false;
  GenerateArgs gen;

  auto* f1 = app.add_subcommand("factor1d", "factor a one-variable polynomial");
  f1->add_option("input", input, "polynomial JSON")->required();
  add_common(f1);
  f1->add_option("--eps-schedule", common.eps_schedule, "regularization shifts a,b,c")
      ->delimiter(',');

  auto* f2 = app.add_subcommand("factor2d", "factor a two-variable polynomial");
  f2->add_option("input", input, "polynomial JSON")->required();
  add_common(f2);
  f2->add_option("--max-iter", common.max_iter, "extremalization iteration cap");
  f2->add_option("--eps-schedule", common.eps_schedule, "regularization shifts a,b,c")
      ->delimiter(',');
  f2->add_option("--degree-tol", common.degree_tol, "relative Fourier tail tolerance");
  f2->add_flag("--swap-vars", common.swap_vars, "factor with z1 and z2 exchanged");

  auto* ver = app.add_subcommand("verify", "verify a certificate against a polynomial");
  ver->add_option("polynomial", input, "polynomial JSON")->required();
  ver->add_option("certificate", cert_path, "certificate JSON")->required();
  add_common(ver);

  auto* an = app.add_subcommand("analyze-mset", "extreme members of the regrouped pencil");
  an->add_option("input", input, "2-variable polynomial or {\"a\", \"b\"} pair JSON")
      ->required();
  add_common(an);
  an->add_option("--max-iter", common.max_iter, "extremalization iteration cap");
  an->add_option("--degree-tol", common.degree_tol, "relative Fourier tail tolerance");
  an->add_flag("--extremalize", extremalize_flag, "also emit the extremal symbols");

  auto* ge = app.add_subcommand("generate", "write a seeded random instance");
  ge->add_option("--kind", gen.kind, "sos2d, sos1d or boundary1d");
  ge->add_option("--k", gen.k, "coefficient size");
  ge->add_option("--d1", gen.d1, "degree in z1 (or z)");
  ge->add_option("--d2", gen.d2, "degree in z2");
  ge->add_option("--n-factors", gen.n_factors, "number of planted factors");
  ge->add_option("--seed", gen.seed, "random seed");
  ge->add_option("--zeta-angle", gen.zeta_angle, "planted root exp(2 pi i angle)");
  ge->add_option("--out", common.out, "output path (default: stdout)");

  auto* be = app.add_subcommand("bench", "run the benchmark corpus and write CSV");
  be->add_option("config", config_path, "corpus JSON (default: built-in corpus)");
  be->add_option("--out", common.out, "output path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e) == 0 ? 0 : kFailure;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kFailure;
  }

  try {
    if (*f1) return cmd_factor1d(input, common);
    if (*f2) return cmd_factor2d(input, common);
    if (*ver) return cmd_verify(input, cert_path, common);
    if (*an) return cmd_analyze_mset(input, common, extremalize_flag);
    if (*ge) return cmd_generate(gen, common);
    if (*be) return cmd_bench(config_path, common);
  } catch (const Rejection& e) {
    std::cerr << "rejected: " << e.what() << "\n";
    return kRejected;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kFailure;
}
