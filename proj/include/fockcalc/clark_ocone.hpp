#pragma once

// Clark-Ocone decomposition of finitely supported generalized functionals:
//
//   Phi = E Phi + sum_k E_k a_k^+ a_k Phi          (selector form)
//       = E Phi + sum_k a_k^+ E_{k-1} a_k Phi      (predictable form)
//
// For finite support both series stop at k = support_max(Phi).

#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "fockcalc/functional.hpp"

namespace fockcalc {

/// E_k a_k^+ a_k Phi: exactly the terms of Phi whose support set has max k.
FockFunctional co_term(const FockFunctional& phi, std::int64_t k);

/// Psi_n = sum_{k=0}^n co_term(Phi, k).
FockFunctional partial_sum(const FockFunctional& phi, std::int64_t n);

inline const std::vector<double> kDefaultQProbe{0.0, 1.0, 2.0};

struct ResidualEntry {
  std::int64_t n = 0;
  double q = 0.0;
  double residual = 0.0;  // ||Phi - E Phi - Psi_n||_{-q}
};

struct DecompositionReport {
  FockFunctional mean;
  std::map<std::int64_t, FockFunctional> terms;  // nonzero summands only
  std::int64_t termination_index = -1;           // support_max(Phi); -1 for constants
  std::vector<ResidualEntry> residuals;          // ordered by n, then q
  bool terminated = false;  // residual at termination_index within tolerance

  double residual(std::int64_t n, double q) const;
};

DecompositionReport decompose(const FockFunctional& phi, std::span<const double> q_probe = kDefaultQProbe,
                              double tolerance = 1e-12);

/// A sequence (u_k) with u_k = E_{k-1} u_k for every k.
class PredictableSequence {
 public:
  PredictableSequence() = default;

  /// Throws PredictabilityViolatedError if some u_k has a support set with
  /// max >= k, or NegativeIndexError for k < 0.
  explicit PredictableSequence(std::map<std::int64_t, FockFunctional> terms);

  const std::map<std::int64_t, FockFunctional>& terms() const { return terms_; }
  FockFunctional at(std::int64_t k) const;

  static bool is_predictable(std::int64_t k, const FockFunctional& u);

 private:
  std::map<std::int64_t, FockFunctional> terms_;
};

/// u_k = E_{k-1} a_k Phi for k = 0..support_max(Phi) (zero entries omitted).
PredictableSequence predictable_sequence(const FockFunctional& phi);

/// Generalized stochastic integral sum_k a_k^+ u_k.
FockFunctional integrate(const PredictableSequence& u);

/// Raw-map overload: validates predictability on entry and throws
/// PredictabilityViolatedError on failure.
FockFunctional integrate(const std::map<std::int64_t, FockFunctional>& u);

struct ReconstructionCheck {
  double residual = 0.0;      // ||Phi - E Phi - I(u)||_{-0}
  double form_gap = 0.0;      // max coefficient gap between the two forms' term sums
  bool terms_identical = false;  // per-k summands of both forms coincide exactly
};

ReconstructionCheck reconstruct_check(const FockFunctional& phi);

}  // namespace fockcalc
