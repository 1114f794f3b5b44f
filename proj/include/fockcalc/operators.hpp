#pragma once

// Annihilation, creation, expectation and conditional-expectation operators
// acting on Fock coefficients, plus numerical checks of their algebra.
//
// Conventions: max({}) is taken as -infinity, so the empty set belongs to
// every Gamma_{k]} = {sigma : max sigma <= k}, including k = -1. With that,
// cond_expect(phi, -1) keeps only the constant term and equals expect(phi).

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "fockcalc/functional.hpp"

namespace fockcalc {

/// (a_k Phi)^(sigma) = [k not in sigma] Phi^(sigma u k). Requires k >= 0.
FockFunctional annihilate(const FockFunctional& phi, std::int64_t k);

/// (a_k^+ Phi)^(sigma) = [k in sigma] Phi^(sigma \ k). Requires k >= 0.
FockFunctional create(const FockFunctional& phi, std::int64_t k);

/// Keeps the terms with max sigma <= k. Requires k >= -1.
FockFunctional cond_expect(const FockFunctional& phi, std::int64_t k);

/// {{}: Phi^({})}, the constant part.
FockFunctional expect(const FockFunctional& phi);

/// ||(a_k^+ a_k + a_k a_k^+ - I) Phi||_{-0}.
double verify_car(const FockFunctional& phi, std::int64_t k);

struct NormBoundCheck {
  // measured ||op Phi||_{-p} / ||Phi||_{-p} (0 for the zero functional)
  double annihilation_ratio = 0.0;
  double creation_ratio = 0.0;
  double cond_expect_ratio = 0.0;
  // bound constants (1+k)^p, (1+k)^{-p}, 1
  double annihilation_factor = 1.0;
  double creation_factor = 1.0;
  // largest relative excess over the three bounds; <= 0 when all hold exactly
  double max_excess = 0.0;
  bool annihilation_ok = false;
  bool creation_ok = false;
  bool cond_expect_ok = false;

  bool all_ok() const { return annihilation_ok && creation_ok && cond_expect_ok; }
};

/// Checks ||a_k Phi||_{-p} <= (1+k)^p ||Phi||_{-p},
/// ||a_k^+ Phi||_{-p} <= (1+k)^{-p} ||Phi||_{-p} and ||E_k Phi||_{-p} <= ||Phi||_{-p}.
NormBoundCheck verify_norm_bounds(const FockFunctional& phi, std::int64_t k, double p,
                                  double rel_slack = 1e-12);

struct CommutationResiduals {
  double create_residual = 0.0;       // ||(E_k a_k^+ - a_k^+ E_k) Phi||_{-0}
  double annihilate_residual = 0.0;   // ||(E_k a_k - E_{k-1} a_k) Phi||_{-0}
};

CommutationResiduals verify_commutation(const FockFunctional& phi, std::int64_t k);

// --- string-addressable operators for pipelines ------------------------------

enum class OperatorKind { annihilate, create, cond_expect, expect };

struct OperatorTag {
  OperatorKind kind = OperatorKind::expect;
  std::int64_t k = -1;  // unused for expect
};

/// Parses `annihilate:k`, `create:k`, `condexp:k` or `expect`.
/// Throws BadTagError on malformed text, NegativeIndexError on an index below
/// the operator's domain.
OperatorTag parse_operator_tag(std::string_view text);

/// Comma-separated tags, applied left to right.
std::vector<OperatorTag> parse_pipeline(std::string_view text);

std::string to_string(const OperatorTag& tag);

FockFunctional apply(const OperatorTag& tag, const FockFunctional& phi);
FockFunctional apply(std::span<const OperatorTag> pipeline, FockFunctional phi);

}  // namespace fockcalc
