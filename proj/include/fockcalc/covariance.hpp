#pragma once

#include <cstdint>
#include <map>

#include "fockcalc/functional.hpp"

namespace fockcalc {

/// Cov_p(Phi, Psi) = <Phi - E Phi, Psi - E Psi>_{-p}, with Psi's coefficients
/// conjugated (same orientation as inner_dual).
Complex cov_p(const FockFunctional& phi, const FockFunctional& psi, double p);

/// ||Phi - E Phi||_{-p}^2.
double var_p(const FockFunctional& phi, double p);

struct CovarianceReport {
  Complex lhs;                           // cov_p computed directly
  Complex rhs;                           // sum over k of the per-k contributions
  std::map<std::int64_t, Complex> per_k;  // <co_term(Phi,k), co_term(Psi,k)>_{-p}
  double gap = 0.0;                      // |lhs - rhs|

  bool within(double tolerance) const { return gap <= tolerance * (1.0 + std::abs(lhs)); }
};

CovarianceReport cov_identity(const FockFunctional& phi, const FockFunctional& psi, double p);

struct VarianceBound {
  double lhs = 0.0;  // var_p(Phi, p)
  double rhs = 0.0;  // sum_k ||a_k^+ a_k Phi||_{-p}^2
  bool holds(double tolerance = 1e-12) const { return lhs <= rhs + tolerance * (1.0 + rhs); }
};

VarianceBound var_bound(const FockFunctional& phi, double p);

}  // namespace fockcalc
