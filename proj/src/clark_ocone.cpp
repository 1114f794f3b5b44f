#include "fockcalc/clark_ocone.hpp"

#include <string>

#include "fockcalc/errors.hpp"
#include "fockcalc/operators.hpp"

namespace fockcalc {

FockFunctional co_term(const FockFunctional& phi, std::int64_t k) {
  return cond_expect(create(annihilate(phi, k), k), k);
}

FockFunctional partial_sum(const FockFunctional& phi, std::int64_t n) {
  FockFunctional sum;
  for (std::int64_t k = 0; k <= n; ++k) sum = sum + co_term(phi, k);
  return sum;
}

double DecompositionReport::residual(std::int64_t n, double q) const {
  for (const auto& r : residuals) {
    if (r.n == n && r.q == q) return r.residual;
  }
  throw Error("no residual recorded for n=" + std::to_string(n));
}

DecompositionReport decompose(const FockFunctional& phi, std::span<const double> q_probe, double tolerance) {
  DecompositionReport report;
  report.mean = expect(phi);
  report.termination_index = phi.support_max();
  const auto centered = phi - report.mean;

  FockFunctional psi;
  for (std::int64_t n = 0; n <= report.termination_index; ++n) {
    auto term = co_term(phi, n);
    if (!term.is_zero()) report.terms.emplace(n, term);
    psi = psi + term;
    const auto rest = centered - psi;
    for (double q : q_probe) report.residuals.push_back({n, q, norm_dual(rest, q)});
  }

  const double scale = 1.0 + norm_dual(phi, 0.0);
  if (report.termination_index < 0) {
    report.terminated = centered.is_zero();
  } else {
    report.terminated = norm_dual(centered - psi, 0.0) <= tolerance * scale;
  }
  return report;
}

bool PredictableSequence::is_predictable(std::int64_t k, const FockFunctional& u) {
  for (const auto& [sigma, c] : u.terms()) {
    if (sigma.max_element() > k - 1) return false;
  }
  return true;
}

PredictableSequence::PredictableSequence(std::map<std::int64_t, FockFunctional> terms) {
  for (const auto& [k, u] : terms) {
    if (k < 0) throw NegativeIndexError("predictable sequence index must be >= 0");
    if (!is_predictable(k, u)) {
      throw PredictabilityViolatedError("u_" + std::to_string(k) + " is not E_{k-1}-measurable");
    }
  }
  std::erase_if(terms, [](const auto& kv) { return kv.second.is_zero(); });
  terms_ = std::move(terms);
}

FockFunctional PredictableSequence::at(std::int64_t k) const {
  auto it = terms_.find(k);
  return it == terms_.end() ? FockFunctional{} : it->second;
}

PredictableSequence predictable_sequence(const FockFunctional& phi) {
  std::map<std::int64_t, FockFunctional> u;
  for (std::int64_t k = 0; k <= phi.support_max(); ++k) {
    auto uk = cond_expect(annihilate(phi, k), k - 1);
    if (!uk.is_zero()) u.emplace(k, std::move(uk));
  }
  return PredictableSequence(std::move(u));
}

FockFunctional integrate(const PredictableSequence& u) {
  FockFunctional sum;
  for (const auto& [k, uk] : u.terms()) sum = sum + create(uk, k);
  return sum;
}

FockFunctional integrate(const std::map<std::int64_t, FockFunctional>& u) {
  return integrate(PredictableSequence(u));
}

ReconstructionCheck reconstruct_check(const FockFunctional& phi) {
  ReconstructionCheck out;
  const auto mean = expect(phi);
  const auto u = predictable_sequence(phi);
  out.residual = norm_dual(phi - mean - integrate(u), 0.0);

  out.terms_identical = true;
  FockFunctional selector_sum;
  FockFunctional predictable_sum;
  for (std::int64_t k = 0; k <= phi.support_max(); ++k) {
    const auto a = co_term(phi, k);
    const auto b = create(u.at(k), k);
    if (!(a == b)) out.terms_identical = false;
    selector_sum = selector_sum + a;
    predictable_sum = predictable_sum + b;
  }
  out.form_gap = max_abs_difference(selector_sum, predictable_sum);
  return out;
}

}  // namespace fockcalc
