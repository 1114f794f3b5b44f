#include "fockcalc/functional.hpp"

#include <algorithm>
#include <cmath>

#include "fockcalc/errors.hpp"

namespace fockcalc {

FockFunctional FockFunctional::from_map(Map terms) {
  std::erase_if(terms, [](const auto& kv) { return kv.second == Complex{}; });
  FockFunctional out;
  out.terms_ = std::move(terms);
  return out;
}

FockFunctional FockFunctional::basis(SubsetIndex sigma) {
  FockFunctional out;
  out.terms_.emplace(std::move(sigma), Complex{1.0, 0.0});
  return out;
}

Complex FockFunctional::coefficient(const SubsetIndex& sigma) const {
  auto it = terms_.find(sigma);
  return it == terms_.end() ? Complex{} : it->second;
}

std::int64_t FockFunctional::support_max() const {
  std::int64_t m = -1;
  for (const auto& [sigma, c] : terms_) m = std::max(m, sigma.max_element());
  return m;
}

FockFunctional make_functional(std::span<const std::pair<SubsetIndex, Complex>> terms) {
  FockFunctional::Map map;
  for (const auto& [sigma, c] : terms) {
    if (!map.emplace(sigma, c).second) throw DuplicateKeyError("duplicate subset in functional terms");
  }
  return FockFunctional::from_map(std::move(map));
}

FockFunctional make_functional(std::initializer_list<std::pair<SubsetIndex, Complex>> terms) {
  return make_functional(std::span<const std::pair<SubsetIndex, Complex>>(terms.begin(), terms.size()));
}

FockFunctional linear_combine(Complex a, const FockFunctional& phi, Complex b, const FockFunctional& psi) {
  FockFunctional::Map out;
  if (a != Complex{}) {
    for (const auto& [sigma, c] : phi.terms()) out.emplace(sigma, a * c);
  }
  if (b != Complex{}) {
    for (const auto& [sigma, c] : psi.terms()) out[sigma] += b * c;
  }
  return FockFunctional::from_map(std::move(out));
}

double max_abs_difference(const FockFunctional& phi, const FockFunctional& psi) {
  double gap = 0.0;
  for (const auto& [sigma, c] : phi.terms()) gap = std::max(gap, std::abs(c - psi.coefficient(sigma)));
  for (const auto& [sigma, c] : psi.terms()) {
    if (!phi.terms().contains(sigma)) gap = std::max(gap, std::abs(c));
  }
  return gap;
}

namespace {

// lambda^{e}, with e == 0 short-circuited so p = 0 is exact.
double weight_pow(const SubsetIndex& sigma, double e) {
  if (e == 0.0 || sigma.empty()) return 1.0;
  return std::pow(lambda_weight(sigma), e);
}

}  // namespace

Complex inner_p(const FockFunctional& xi, const FockFunctional& eta, double p) {
  Complex sum{};
  for (const auto& [sigma, c] : xi.terms()) {
    auto it = eta.terms().find(sigma);
    if (it == eta.terms().end()) continue;
    sum += weight_pow(sigma, 2.0 * p) * std::conj(c) * it->second;
  }
  return sum;
}

double norm_p(const FockFunctional& xi, double p) {
  double sum = 0.0;
  for (const auto& [sigma, c] : xi.terms()) sum += weight_pow(sigma, 2.0 * p) * std::norm(c);
  return std::sqrt(sum);
}

double norm_dual(const FockFunctional& phi, double p) {
  double sum = 0.0;
  for (const auto& [sigma, c] : phi.terms()) sum += weight_pow(sigma, -2.0 * p) * std::norm(c);
  return std::sqrt(sum);
}

Complex inner_dual(const FockFunctional& phi, const FockFunctional& psi, double p) {
  Complex sum{};
  for (const auto& [sigma, c] : phi.terms()) {
    auto it = psi.terms().find(sigma);
    if (it == psi.terms().end()) continue;
    sum += weight_pow(sigma, -2.0 * p) * c * std::conj(it->second);
  }
  return sum;
}

Complex dual_pair(const FockFunctional& phi, const FockFunctional& xi) {
  Complex sum{};
  for (const auto& [sigma, c] : xi.terms()) sum += c * phi.coefficient(sigma);
  return sum;
}

FockFunctional riesz(const FockFunctional& eta) {
  FockFunctional::Map out;
  for (const auto& [sigma, c] : eta.terms()) out.emplace(sigma, std::conj(c));
  return FockFunctional::from_map(std::move(out));
}

GrowthEnvelope fit_envelope(const FockFunctional& phi, double p) {
  if (phi.is_zero()) throw EmptySupportError("cannot fit an envelope to the zero functional");
  double C = 0.0;
  for (const auto& [sigma, c] : phi.terms()) C = std::max(C, std::abs(c) / weight_pow(sigma, p));
  return {C, p};
}

bool certifies(const GrowthEnvelope& env, const FockFunctional& phi, double rel_slack) {
  return std::all_of(phi.terms().begin(), phi.terms().end(), [&](const auto& kv) {
    const double bound = env.C * weight_pow(kv.first, env.p);
    return std::abs(kv.second) <= bound * (1.0 + rel_slack);
  });
}

double dual_norm_bound(const GrowthEnvelope& env, double q) {
  if (!(q > env.p + 0.5)) throw ExponentTooSmallError("dual_norm_bound requires q > p + 1/2");
  if (env.C == 0.0) return 0.0;
  return env.C * std::sqrt(weight_series_upper(2.0 * (q - env.p)));
}

ConvergenceDiagnostic check_strong_convergence(std::span<const FockFunctional> seq,
                                               const FockFunctional& limit, const GammaCursor& probe,
                                               std::span<const double> p_grid, double tolerance) {
  if (seq.empty()) throw Error("check_strong_convergence needs a nonempty sequence");
  const auto window = enumerate_gamma(probe);

  ConvergenceDiagnostic diag;
  std::vector<double> sup_abs(window.size(), 0.0);
  double limit_scale = 0.0;
  for (const auto& sigma : window) limit_scale = std::max(limit_scale, std::abs(limit.coefficient(sigma)));

  for (const auto& phi_n : seq) {
    double gap = 0.0;
    for (std::size_t i = 0; i < window.size(); ++i) {
      const Complex c = phi_n.coefficient(window[i]);
      gap = std::max(gap, std::abs(c - limit.coefficient(window[i])));
      sup_abs[i] = std::max(sup_abs[i], std::abs(c));
    }
    diag.pointwise_gaps.push_back(gap);
  }
  diag.final_gap = diag.pointwise_gaps.back();
  diag.pointwise_ok = diag.final_gap <= tolerance * (1.0 + limit_scale);

  for (double p : p_grid) {
    double C = 0.0;
    for (std::size_t i = 0; i < window.size(); ++i) C = std::max(C, sup_abs[i] / weight_pow(window[i], p));
    diag.uniform_envelopes.push_back({C, p});
  }
  return diag;
}

}  // namespace fockcalc
