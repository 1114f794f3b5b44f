// fockcalc: command-line front end for the Fock-coefficient calculus.
//
// Exit codes: 0 success / all identities hold, 1 identity violation,
// 2 usage or schema error.

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fockcalc/clark_ocone.hpp"
#include "fockcalc/covariance.hpp"
#include "fockcalc/errors.hpp"
#include "fockcalc/json_io.hpp"
#include "fockcalc/noise_bridge.hpp"
#include "fockcalc/operators.hpp"
#include "fockcalc/suite.hpp"

namespace {

using namespace fockcalc;

constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

std::string read_input(const std::string& path) {
  if (path.empty() || path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

FunctionalDocument load(const std::string& path) { return parse_functional(read_input(path)); }

void emit(const Json& doc, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << doc.dump(2) << '\n';
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw Error("cannot write '" + out_path + "'");
  out << doc.dump(2) << '\n';
}

struct Options {
  std::string file;
  std::string file2;
  std::string out;
  std::string set_text;
  std::string pipeline;
  std::string suite = "all";
  std::string mode = "exhaustive";
  std::string csv;
  std::vector<double> q_values;
  std::vector<double> p_grid{0.0, 1.0, 2.0};
  double p = 0.0;
  std::optional<double> q;
  std::optional<int> k;
  std::optional<int> n;
  int trials = 500;
  std::uint64_t seed = 0;
  int support_max = 10;
  int max_terms = 24;
  std::optional<double> tolerance;
  std::optional<double> bridge_tolerance;
  int horizon = 8;
  std::uint64_t paths = 10000;
  unsigned threads = 1;
};

int cmd_lambda(const Options& o) {
  Json doc = Json::object();
  if (!o.set_text.empty()) {
    const auto j = Json::parse(o.set_text);
    if (!j.is_array()) throw SchemaError("set must be a JSON array of integers");
    std::vector<std::int64_t> elems;
    for (const auto& e : j) {
      if (!e.is_number_integer()) throw SchemaError("set elements must be integers");
      elems.push_back(e.get<std::int64_t>());
    }
    const auto sigma = canonical_subset(elems);
    doc["set"] = subset_to_json(sigma);
    doc["lambda"] = lambda_weight(sigma);
  }
  if (o.n) {
    doc["p"] = o.p;
    doc["max_index"] = *o.n;
    doc["weight_sum"] = gamma_weight_sum(o.p, *o.n);
    if (o.p > 1.0) doc["weight_sum_bound"] = weight_sum_bound(o.p);
  }
  if (doc.empty()) throw SchemaError("lambda needs a set argument or --n");
  emit(doc, o.out);
  return 0;
}

int cmd_norm(const Options& o) {
  const auto doc = load(o.file);
  const auto& phi = doc.functional;
  Json out = {{"p", o.p},
              {"terms", phi.size()},
              {"support_max", phi.support_max()},
              {"norm", norm_p(phi, o.p)},
              {"dual_norm", norm_dual(phi, o.p)}};
  std::optional<GrowthEnvelope> env = doc.envelope;
  if (env) {
    out["envelope_certified"] = certifies(*env, phi);
  } else if (!phi.is_zero()) {
    env = fit_envelope(phi, o.p);
  }
  if (env) out["envelope"] = {{"C", env->C}, {"p", env->p}};
  if (o.q && env) {
    out["q"] = *o.q;
    out["dual_norm_q"] = norm_dual(phi, *o.q);
    out["dual_norm_bound"] = dual_norm_bound(*env, *o.q);
  }
  emit(out, o.out);
  return 0;
}

int cmd_apply(const Options& o) {
  const auto pipeline = parse_pipeline(o.pipeline);
  const auto phi = fockcalc::apply(std::span<const OperatorTag>(pipeline), load(o.file).functional);
  emit(functional_to_json(phi), o.out);
  return 0;
}

int cmd_decompose(const Options& o) {
  const auto phi = load(o.file).functional;
  const auto q = o.q_values.empty() ? kDefaultQProbe : o.q_values;
  const auto report = decompose(phi, q);
  emit(decomposition_to_json(report), o.out);
  return report.terminated ? 0 : kExitViolation;
}

int cmd_cov(const Options& o) {
  const auto phi = load(o.file).functional;
  const auto psi = o.file2.empty() ? phi : load(o.file2).functional;
  const auto report = cov_identity(phi, psi, o.p);
  const auto vb = var_bound(phi, o.p);
  const double tol = o.tolerance.value_or(1e-12);
  Json out = covariance_to_json(report);
  out["p"] = o.p;
  out["variance"] = var_p(phi, o.p);
  out["variance_bound"] = {{"lhs", vb.lhs}, {"rhs", vb.rhs}, {"holds", vb.holds(tol)}};
  out["pass"] = report.within(tol) && vb.holds(tol);
  emit(out, o.out);
  return out["pass"].get<bool>() ? 0 : kExitViolation;
}

int cmd_verify(const Options& o) {
  SuiteConfig cfg;
  cfg.suite = parse_suite_kind(o.suite);
  cfg.trials = o.trials;
  cfg.seed = o.seed;
  cfg.support_max = o.support_max;
  cfg.max_terms = o.max_terms;
  cfg.p_grid = o.p_grid;
  if (o.tolerance) cfg.tolerance = *o.tolerance;
  if (o.bridge_tolerance) cfg.bridge_tolerance = *o.bridge_tolerance;
  cfg.horizon = o.horizon;
  cfg.threads = o.threads;
  const auto report = run_suite(cfg);
  emit(report.to_json(), o.out);
  return report.pass() ? 0 : kExitViolation;
}

int cmd_bridge(const Options& o) {
  const auto phi = load(o.file).functional;
  const double tol = o.bridge_tolerance.value_or(1e-10);
  Json records = Json::array();
  Json out = {{"N", o.horizon}, {"mode", o.mode}};

  if (o.mode == "sampled") {
    const auto space = build_space(o.horizon, PathMode::sampled, o.paths, o.seed);
    const auto est = mc_estimate(phi, space, o.threads);
    const Complex exact = phi.coefficient(SubsetIndex{});
    out["paths"] = o.paths;
    out["seed"] = o.seed;
    out["mean"] = {est.mean.real(), est.mean.imag()};
    out["stderr"] = est.standard_error;
    out["exact_mean"] = {exact.real(), exact.imag()};
    // CLT band: reported, never a hard failure
    out["within_4_stderr"] = std::abs(est.mean - exact) <= 4.0 * est.standard_error + 1e-15;
    if (!o.csv.empty()) {
      std::ofstream csv(o.csv);
      write_observable_csv(evaluate(phi, space, o.threads), csv);
    }
    emit(out, o.out);
    return 0;
  }
  if (o.mode != "exhaustive") throw SchemaError("--mode must be exhaustive or sampled");

  const auto space = build_space(o.horizon);
  const auto xi = evaluate(phi, space, o.threads);
  const auto mean = path_expectation(xi);
  out["expectation"] = {mean.real(), mean.imag()};
  if (o.horizon <= kMaxOrthonormalityHorizon) {
    records.push_back(verification_record("orthonormality", o.horizon, check_orthonormality(o.horizon), 1e-12));
    const auto cc = classical_clark_ocone_check(phi, o.horizon, o.threads);
    records.push_back(verification_record("classical_clark_ocone", o.horizon, cc.max_gap, tol));
    records.push_back(verification_record("predictable_term_realization", o.horizon, cc.term_gap, tol));
  }
  IntertwiningGaps worst;
  const int k_lo = o.k ? *o.k : 0;
  const int k_hi = o.k ? *o.k : o.horizon - 1;
  for (int k = k_lo; k <= k_hi; ++k) {
    const auto g = check_intertwining(phi, k, o.horizon, o.threads);
    worst.annihilation = std::max(worst.annihilation, g.annihilation);
    worst.creation = std::max(worst.creation, g.creation);
    worst.expectation = std::max(worst.expectation, g.expectation);
    worst.conditional = std::max(worst.conditional, g.conditional);
  }
  records.push_back(verification_record("intertwining_annihilation", o.horizon, worst.annihilation, tol));
  records.push_back(verification_record("intertwining_creation", o.horizon, worst.creation, tol));
  records.push_back(verification_record("intertwining_expectation", o.horizon, worst.expectation, tol));
  records.push_back(verification_record("intertwining_conditional", o.horizon, worst.conditional, tol));
  const double n0 = norm_p(phi, 0.0);
  records.push_back(
      verification_record("plancherel", o.horizon, plancherel_gap(phi, o.horizon, o.threads) / (1.0 + n0 * n0), 1e-12));

  if (!o.csv.empty()) {
    std::ofstream csv(o.csv);
    write_observable_csv(xi, csv);
  }
  bool pass = true;
  for (const auto& r : records) pass = pass && r["pass"].get<bool>();
  out["records"] = std::move(records);
  out["pass"] = pass;
  emit(out, o.out);
  return pass ? 0 : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete-time chaotic calculus on Fock coefficients"};
  app.require_subcommand(1);
  Options o;

  auto* lambda = app.add_subcommand("lambda", "lambda weight of a subset, or weight sums over a window");
  lambda->add_option("set", o.set_text, "subset as a JSON array, e.g. [1,3]");
  lambda->add_option("--p", o.p, "exponent for the weight sum");
  lambda->add_option("--n", o.n, "window {0..n-1} for the weight sum");

  auto* norm = app.add_subcommand("norm", "weighted norms and growth envelope of a functional");
  norm->add_option("file", o.file, "functional JSON (stdin if omitted or '-')");
  norm->add_option("--p", o.p, "chain level p >= 0")->check(CLI::NonNegativeNumber);
  norm->add_option("--q", o.q, "dual level for the envelope bound (q > p + 1/2)");

  auto* apply_cmd = app.add_subcommand("apply", "apply an operator pipeline");
  apply_cmd->add_option("file", o.file, "functional JSON (stdin if omitted or '-')");
  apply_cmd->add_option("--pipeline", o.pipeline, "e.g. annihilate:2,create:2,condexp:1,expect")->required();

  auto* decompose_cmd = app.add_subcommand("decompose", "Clark-Ocone decomposition report");
  decompose_cmd->add_option("file", o.file, "functional JSON (stdin if omitted or '-')");
  decompose_cmd->add_option("--q", o.q_values, "dual levels probed for residuals (default 0 1 2)");

  auto* cov = app.add_subcommand("cov", "p-covariance identity and variance bound");
  cov->add_option("file", o.file, "first functional")->required();
  cov->add_option("file2", o.file2, "second functional (defaults to the first)");
  cov->add_option("--p", o.p, "level p >= 0")->check(CLI::NonNegativeNumber);
  cov->add_option("--tolerance", o.tolerance);

  auto* verify = app.add_subcommand("verify", "seeded verification suite");
  verify->add_option("--suite", o.suite, "car|bounds|commutation|clark|covariance|bridge|all");
  verify->add_option("--trials", o.trials)->check(CLI::PositiveNumber);
  verify->add_option("--seed", o.seed);
  verify->add_option("--support-max", o.support_max)->check(CLI::Range(0, 20));
  verify->add_option("--max-terms", o.max_terms)->check(CLI::PositiveNumber);
  verify->add_option("--p-grid", o.p_grid);
  verify->add_option("--tolerance", o.tolerance);
  verify->add_option("--bridge-tolerance", o.bridge_tolerance);
  verify->add_option("--horizon", o.horizon)->check(CLI::Range(1, 16));
  verify->add_option("--threads", o.threads)->check(CLI::PositiveNumber);

  auto* bridge = app.add_subcommand("bridge", "Rademacher path-space checks for a functional");
  bridge->add_option("file", o.file, "functional JSON (stdin if omitted or '-')");
  bridge->add_option("--horizon", o.horizon)->check(CLI::Range(1, 64));
  bridge->add_option("--mode", o.mode, "exhaustive|sampled");
  bridge->add_option("--paths", o.paths, "sample count in sampled mode")->check(CLI::PositiveNumber);
  bridge->add_option("--seed", o.seed);
  bridge->add_option("--k", o.k, "restrict intertwining checks to one site");
  bridge->add_option("--csv", o.csv, "write the observable as path_index,re,im");
  bridge->add_option("--bridge-tolerance", o.bridge_tolerance);
  bridge->add_option("--threads", o.threads)->check(CLI::PositiveNumber);

  for (auto* sub : {lambda, norm, apply_cmd, decompose_cmd, cov, verify, bridge}) {
    sub->add_option("--out", o.out, "write the JSON result to a file");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*lambda) return cmd_lambda(o);
    if (*norm) return cmd_norm(o);
    if (*apply_cmd) return cmd_apply(o);
    if (*decompose_cmd) return cmd_decompose(o);
    if (*cov) return cmd_cov(o);
    if (*verify) return cmd_verify(o);
    if (*bridge) return cmd_bridge(o);
  } catch (const fockcalc::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
