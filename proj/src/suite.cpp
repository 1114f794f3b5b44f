#include "fockcalc/suite.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>

#include "fockcalc/clark_ocone.hpp"
#include "fockcalc/covariance.hpp"
#include "fockcalc/errors.hpp"
#include "fockcalc/noise_bridge.hpp"
#include "fockcalc/operators.hpp"
#include "fockcalc/random_functional.hpp"
#include "parallel.hpp"

namespace fockcalc {

SuiteKind parse_suite_kind(std::string_view name) {
  if (name == "car") return SuiteKind::car;
  if (name == "bounds") return SuiteKind::bounds;
  if (name == "commutation") return SuiteKind::commutation;
  if (name == "clark") return SuiteKind::clark;
  if (name == "covariance") return SuiteKind::covariance;
  if (name == "bridge") return SuiteKind::bridge;
  if (name == "all") return SuiteKind::all;
  throw BadTagError("unknown suite '" + std::string(name) + "'");
}

std::string to_string(SuiteKind kind) {
  switch (kind) {
    case SuiteKind::car: return "car";
    case SuiteKind::bounds: return "bounds";
    case SuiteKind::commutation: return "commutation";
    case SuiteKind::clark: return "clark";
    case SuiteKind::covariance: return "covariance";
    case SuiteKind::bridge: return "bridge";
    case SuiteKind::all: return "all";
  }
  return {};
}

bool SuiteReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass(); });
}

Json SuiteReport::to_json() const {
  Json checks_json = Json::array();
  for (const auto& c : checks) {
    Json rec = {{"check", c.check},         {"identity", c.identity}, {"max_gap", c.max_gap},
                {"tolerance", c.tolerance}, {"cases", c.cases},       {"pass", c.pass()}};
    if (c.horizon) rec["N"] = *c.horizon;
    checks_json.push_back(std::move(rec));
  }
  return {
      {"suite", to_string(config.suite)},
      {"seed", config.seed},
      {"trials", config.trials},
      {"support_max", config.support_max},
      {"max_terms", config.max_terms},
      {"p_grid", config.p_grid},
      {"tolerance", config.tolerance},
      {"bridge_tolerance", config.bridge_tolerance},
      {"horizon", config.horizon},
      {"checks", std::move(checks_json)},
      {"pass", pass()},
  };
}

namespace {

// NaN-propagating max so a NaN gap can never read as a pass.
double worse(double a, double b) { return (std::isnan(a) || a >= b) ? a : b; }

double positive_part(double x) { return std::isnan(x) ? x : std::max(x, 0.0); }

// Runs fn(i) for every trial and reduces each of the M gap slots by max, in
// ascending trial order.
template <std::size_t M>
std::array<double, M> per_trial_max(std::size_t n, unsigned threads,
                                    const std::function<std::array<double, M>(std::size_t)>& fn) {
  std::vector<std::array<double, M>> slots(n);
  detail::parallel_for(n, threads, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) slots[i] = fn(i);
  });
  std::array<double, M> out{};
  for (const auto& s : slots) {
    for (std::size_t j = 0; j < M; ++j) out[j] = worse(out[j], s[j]);
  }
  return out;
}

double scale_of(const FockFunctional& phi) { return 1.0 + norm_dual(phi, 0.0); }

std::int64_t site_limit(const SuiteConfig& cfg) { return cfg.support_max + 1; }

void run_car(const SuiteConfig& cfg, const std::vector<FockFunctional>& corpus, std::vector<CheckResult>& out) {
  const auto top = site_limit(cfg);
  auto gaps = per_trial_max<2>(corpus.size(), cfg.threads, [&](std::size_t i) {
    const auto& phi = corpus[i];
    const double s = scale_of(phi);
    std::array<double, 2> g{};
    for (std::int64_t k = 0; k <= top; ++k) {
      g[0] = worse(g[0], verify_car(phi, k) / s);
      const auto number = create(annihilate(phi, k), k);
      const auto hole = annihilate(create(phi, k), k);
      for (const auto& [sigma, c] : phi.terms()) {
        const bool in = sigma.contains(static_cast<SubsetIndex::value_type>(k));
        g[1] = worse(g[1], std::abs(number.coefficient(sigma) - (in ? c : Complex{})) / s);
        g[1] = worse(g[1], std::abs(hole.coefficient(sigma) - (in ? Complex{} : c)) / s);
      }
      g[1] = worse(g[1], max_abs_difference(number + hole, phi) / s);
    }
    return g;
  });
  const auto n = corpus.size() * static_cast<std::size_t>(top + 1);
  out.push_back({"car", "a_k^+ a_k + a_k a_k^+ = I", gaps[0], cfg.tolerance, n, {}});
  out.push_back({"car_coefficients", "(a_k^+ a_k Phi)^(s) = 1_s(k) Phi^(s), (a_k a_k^+ Phi)^(s) = (1 - 1_s(k)) Phi^(s)",
                 gaps[1], cfg.tolerance, n, {}});
}

void run_bounds(const SuiteConfig& cfg, const std::vector<FockFunctional>& corpus, std::vector<CheckResult>& out) {
  const auto top = site_limit(cfg);
  auto gaps = per_trial_max<1>(corpus.size(), cfg.threads, [&](std::size_t i) {
    std::array<double, 1> g{};
    for (std::int64_t k = 0; k <= top; ++k) {
      for (double p : cfg.p_grid) g[0] = worse(g[0], positive_part(verify_norm_bounds(corpus[i], k, p).max_excess));
    }
    return g;
  });
  out.push_back({"norm_bounds",
                 "||a_k Phi||_{-p} <= (1+k)^p ||Phi||_{-p}, ||a_k^+ Phi||_{-p} <= (1+k)^{-p} ||Phi||_{-p}, "
                 "||E_k Phi||_{-p} <= ||Phi||_{-p}",
                 gaps[0], cfg.tolerance, corpus.size() * static_cast<std::size_t>(top + 1) * cfg.p_grid.size(), {}});

  double tight = 0.0;
  std::size_t cases = 0;
  for (std::int64_t k = 0; k <= top; ++k) {
    for (double p : cfg.p_grid) {
      const auto single = FockFunctional::basis(SubsetIndex::singleton(static_cast<SubsetIndex::value_type>(k)));
      const auto a = verify_norm_bounds(single, k, p);
      const auto c = verify_norm_bounds(FockFunctional::basis({}), k, p);
      tight = worse(tight, std::abs(a.annihilation_ratio - a.annihilation_factor) / a.annihilation_factor);
      tight = worse(tight, std::abs(c.creation_ratio - c.creation_factor) / c.creation_factor);
      cases += 2;
    }
  }
  out.push_back({"norm_bounds_tightness", "Z_{k} attains (1+k)^p under a_k; Z_{} attains (1+k)^{-p} under a_k^+", tight,
                 cfg.tolerance, cases, {}});
}

void run_commutation(const SuiteConfig& cfg, const std::vector<FockFunctional>& corpus,
                     std::vector<CheckResult>& out) {
  const auto top = site_limit(cfg);
  auto gaps = per_trial_max<2>(corpus.size(), cfg.threads, [&](std::size_t i) {
    const double s = scale_of(corpus[i]);
    std::array<double, 2> g{};
    for (std::int64_t k = 0; k <= top; ++k) {
      const auto r = verify_commutation(corpus[i], k);
      g[0] = worse(g[0], r.create_residual / s);
      g[1] = worse(g[1], r.annihilate_residual / s);
    }
    return g;
  });
  const auto n = corpus.size() * static_cast<std::size_t>(top + 1);
  out.push_back({"commutation_create", "E_k a_k^+ = a_k^+ E_k", gaps[0], cfg.tolerance, n, {}});
  out.push_back({"commutation_annihilate", "E_k a_k = E_{k-1} a_k, E_{-1} = E", gaps[1], cfg.tolerance, n, {}});
}

void run_clark(const SuiteConfig& cfg, const std::vector<FockFunctional>& corpus, std::vector<CheckResult>& out) {
  auto gaps = per_trial_max<5>(corpus.size(), cfg.threads, [&](std::size_t i) {
    const auto& phi = corpus[i];
    const double s = scale_of(phi);
    std::array<double, 5> g{};

    const auto rc = reconstruct_check(phi);
    g[0] = rc.residual / s;
    g[1] = rc.terms_identical ? rc.form_gap / s : worse(1.0, rc.form_gap / s);

    // residual ||Phi - E Phi - Psi_n||_{-q}: nonincreasing in n, zero at the end
    const auto report = decompose(phi, cfg.p_grid, cfg.tolerance);
    for (double q : cfg.p_grid) {
      double prev = HUGE_VAL;
      for (std::int64_t n = 0; n <= report.termination_index; ++n) {
        const double r = report.residual(n, q);
        g[2] = worse(g[2], positive_part(r - prev) / s);
        prev = r;
      }
      if (report.termination_index >= 0) g[2] = worse(g[2], report.residual(report.termination_index, q) / s);
    }

    // pointwise convergence and the uniform envelope sup_n |Psi_n^| <= |Phi^| on the window
    const auto top = std::max<std::int64_t>(report.termination_index, 0);
    std::vector<FockFunctional> seq;
    for (std::int64_t n = 0; n <= top; ++n) seq.push_back(partial_sum(phi, n));
    const GammaCursor window{static_cast<int>(top + 1), std::nullopt, kDefaultGammaCap};
    const auto limit = phi - expect(phi);
    const auto diag = check_strong_convergence(seq, limit, window, {}, cfg.tolerance);
    g[3] = diag.final_gap / s;
    for (const auto& sigma : enumerate_gamma(window)) {
      double sup = 0.0;
      for (const auto& psi : seq) sup = std::max(sup, std::abs(psi.coefficient(sigma)));
      g[3] = worse(g[3], positive_part(sup - std::abs(phi.coefficient(sigma))) / s);
    }

    // predictable representation
    const auto u = predictable_sequence(phi);
    for (const auto& [k, uk] : u.terms()) {
      if (!PredictableSequence::is_predictable(k, uk)) g[4] = worse(g[4], 1.0);
    }
    g[4] = worse(g[4], norm_dual(phi - expect(phi) - integrate(u), 0.0) / s);
    return g;
  });
  const auto n = corpus.size();
  out.push_back({"clark_ocone_reconstruction", "Phi = E Phi + sum_k a_k^+ E_{k-1} a_k Phi", gaps[0], cfg.tolerance, n, {}});
  out.push_back({"clark_ocone_forms", "E_k a_k^+ a_k Phi = a_k^+ E_{k-1} a_k Phi for every k", gaps[1], cfg.tolerance, n, {}});
  out.push_back({"partial_sum_residuals", "||Phi - E Phi - Psi_n||_{-q} nonincreasing, zero at n = support_max", gaps[2],
                 cfg.tolerance, n, {}});
  out.push_back({"strong_convergence_conditions", "Psi_n -> Phi - E Phi pointwise; sup_n |Psi_n^(s)| <= |Phi^(s)|",
                 gaps[3], cfg.tolerance, n, {}});
  out.push_back({"predictable_representation", "u_k = E_{k-1} a_k Phi is predictable and Phi = E Phi + I(u)", gaps[4],
                 cfg.tolerance, n, {}});
}

void run_covariance(const SuiteConfig& cfg, std::vector<CheckResult>& out) {
  const RandomFunctionalSpec spec{cfg.support_max, cfg.max_terms, false};
  const auto pairs = random_corpus(mix_seed(cfg.seed, 0xC0FFEE), 2 * static_cast<std::size_t>(cfg.trials), spec);
  auto gaps = per_trial_max<3>(static_cast<std::size_t>(cfg.trials), cfg.threads, [&](std::size_t i) {
    const auto& phi = pairs[2 * i];
    const auto& psi = pairs[2 * i + 1];
    std::array<double, 3> g{};
    for (double p : cfg.p_grid) {
      const auto rep = cov_identity(phi, psi, p);
      g[0] = worse(g[0], rep.gap / (1.0 + std::abs(rep.lhs)));
      for (const auto* f : {&phi, &psi}) {
        const auto vb = var_bound(*f, p);
        g[1] = worse(g[1], positive_part(vb.lhs - vb.rhs) / (1.0 + vb.rhs));
      }
      const Complex ab = cov_p(phi, psi, p);
      const Complex ba = cov_p(psi, phi, p);
      g[2] = worse(g[2], std::abs(ab - std::conj(ba)) / (1.0 + std::abs(ab)));
    }
    return g;
  });
  const auto n = static_cast<std::size_t>(cfg.trials) * cfg.p_grid.size();
  out.push_back({"covariance_identity", "Cov_p(Phi,Psi) = sum_k <E_k a_k^+ a_k Phi, E_k a_k^+ a_k Psi>_{-p}", gaps[0],
                 cfg.tolerance, n, {}});
  out.push_back({"variance_bound", "Var_p(Phi) <= sum_k ||a_k^+ a_k Phi||_{-p}^2", gaps[1], cfg.tolerance, 2 * n, {}});
  out.push_back({"covariance_hermitian", "Cov_p(Phi,Psi) = conj Cov_p(Psi,Phi)", gaps[2], cfg.tolerance, n, {}});
}

void run_bridge(const SuiteConfig& cfg, std::vector<CheckResult>& out) {
  const int horizon = cfg.horizon;
  const RandomFunctionalSpec spec{std::min(cfg.support_max, horizon - 1), cfg.max_terms, false};
  const auto corpus = random_corpus(mix_seed(cfg.seed, 0xB81D6E), static_cast<std::size_t>(cfg.trials), spec);
  const auto bt = cfg.bridge_tolerance;

  out.push_back({"orthonormality", "E[Z_s Z_t] = delta_{s,t}", check_orthonormality(std::min(horizon, 16)),
                 cfg.tolerance, std::size_t{1} << (2 * std::min(horizon, 16)), horizon});

  // Path evaluation runs single-threaded inside; trials are split instead.
  auto gaps = per_trial_max<7>(corpus.size(), cfg.threads, [&](std::size_t i) {
    const auto& phi = corpus[i];
    std::array<double, 7> g{};
    const auto cc = classical_clark_ocone_check(phi, horizon);
    g[0] = cc.max_gap;
    g[1] = cc.term_gap;
    for (int k = 0; k < horizon; ++k) {
      const auto it = check_intertwining(phi, k, horizon);
      g[2] = worse(g[2], it.annihilation);
      g[3] = worse(g[3], it.creation);
      g[4] = worse(g[4], it.expectation);
      g[5] = worse(g[5], it.conditional);
    }
    const double n0 = norm_p(phi, 0.0);
    g[6] = plancherel_gap(phi, horizon) / (1.0 + n0 * n0);
    return g;
  });
  const auto n = corpus.size();
  const auto nk = n * static_cast<std::size_t>(horizon);
  out.push_back({"classical_clark_ocone", "xi = E xi + sum_k zeta_k E[d_k xi | F_{k-1}] pathwise", gaps[0], bt, n, horizon});
  out.push_back({"predictable_term_realization", "d_k^* P_{k-1} d_k xi = zeta_k P_{k-1} d_k xi", gaps[1], bt, n, horizon});
  out.push_back({"intertwining_annihilation", "a_k R = R d_k (sign-flip gradient)", gaps[2], bt, nk, horizon});
  out.push_back({"intertwining_creation", "a_k^+ R = R d_k^*", gaps[3], bt, nk, horizon});
  out.push_back({"intertwining_expectation", "E R = R E", gaps[4], bt, nk, horizon});
  out.push_back({"intertwining_conditional", "E_k R = R P_k", gaps[5], bt, nk, horizon});
  out.push_back({"plancherel", "E|xi|^2 = ||xi||_0^2", gaps[6], cfg.tolerance, n, horizon});
}

}  // namespace

SuiteReport run_suite(const SuiteConfig& config) {
  if (config.trials < 1) throw Error("trials must be >= 1");
  if (config.horizon < 1 || config.horizon > kMaxExhaustiveHorizon) {
    throw HorizonTooLargeError("bridge horizon must lie in [1, 20]");
  }
  SuiteReport report{config, {}};
  const auto wants = [&](SuiteKind k) { return config.suite == SuiteKind::all || config.suite == k; };

  const bool algebra = wants(SuiteKind::car) || wants(SuiteKind::bounds) || wants(SuiteKind::commutation) ||
                       wants(SuiteKind::clark);
  std::vector<FockFunctional> corpus;
  if (algebra) {
    corpus = random_corpus(config.seed, static_cast<std::size_t>(config.trials),
                           {config.support_max, config.max_terms, false});
  }
  if (wants(SuiteKind::car)) run_car(config, corpus, report.checks);
  if (wants(SuiteKind::bounds)) run_bounds(config, corpus, report.checks);
  if (wants(SuiteKind::commutation)) run_commutation(config, corpus, report.checks);
  if (wants(SuiteKind::clark)) run_clark(config, corpus, report.checks);
  if (wants(SuiteKind::covariance)) run_covariance(config, report.checks);
  if (wants(SuiteKind::bridge)) run_bridge(config, report.checks);
  return report;
}

}  // namespace fockcalc
