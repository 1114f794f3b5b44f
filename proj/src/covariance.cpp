#include "fockcalc/covariance.hpp"

#include <algorithm>

#include "fockcalc/clark_ocone.hpp"
#include "fockcalc/operators.hpp"

namespace fockcalc {

Complex cov_p(const FockFunctional& phi, const FockFunctional& psi, double p) {
  return inner_dual(phi - expect(phi), psi - expect(psi), p);
}

double var_p(const FockFunctional& phi, double p) {
  const double n = norm_dual(phi - expect(phi), p);
  return n * n;
}

CovarianceReport cov_identity(const FockFunctional& phi, const FockFunctional& psi, double p) {
  CovarianceReport report;
  report.lhs = cov_p(phi, psi, p);
  const auto top = std::max(phi.support_max(), psi.support_max());
  for (std::int64_t k = 0; k <= top; ++k) {
    const Complex c = inner_dual(co_term(phi, k), co_term(psi, k), p);
    report.per_k.emplace(k, c);
    report.rhs += c;
  }
  report.gap = std::abs(report.lhs - report.rhs);
  return report;
}

VarianceBound var_bound(const FockFunctional& phi, double p) {
  VarianceBound out;
  out.lhs = var_p(phi, p);
  for (std::int64_t k = 0; k <= phi.support_max(); ++k) {
    const double n = norm_dual(create(annihilate(phi, k), k), p);
    out.rhs += n * n;
  }
  return out;
}

}  // namespace fockcalc
