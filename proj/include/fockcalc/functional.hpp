#pragma once

// Sparse Fock-coefficient representation of generalized functionals and the
// norms of the weighted chain S_p / S_p^*.
//
// One FockFunctional type serves two roles:
//   * a square-integrable functional xi, stored as its chaos coefficients
//     <Z_sigma, xi>;
//   * a generalized functional Phi, stored as its Fock transform
//     Phi^(sigma) = <<Phi, Z_sigma>>.
// The Riesz embedding between the two is coefficient-wise conjugation
// (see riesz()); for real coefficients the arrays coincide.

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "fockcalc/gamma.hpp"

namespace fockcalc {

using Complex = std::complex<double>;

class FockFunctional {
 public:
  using Map = std::map<SubsetIndex, Complex>;

  FockFunctional() = default;

  /// Drops entries whose coefficient is exactly zero.
  static FockFunctional from_map(Map terms);

  /// The canonical basis element Z_sigma (single unit coefficient).
  static FockFunctional basis(SubsetIndex sigma);

  const Map& terms() const { return terms_; }
  Complex coefficient(const SubsetIndex& sigma) const;

  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Max element over every support set; -1 when the support is empty or {{}}.
  std::int64_t support_max() const;

  friend bool operator==(const FockFunctional&, const FockFunctional&) = default;

 private:
  Map terms_;
};

/// Throws DuplicateKeyError if a subset appears twice.
FockFunctional make_functional(std::span<const std::pair<SubsetIndex, Complex>> terms);
FockFunctional make_functional(std::initializer_list<std::pair<SubsetIndex, Complex>> terms);

inline Complex coefficient(const FockFunctional& phi, const SubsetIndex& sigma) {
  return phi.coefficient(sigma);
}

/// a * phi + b * psi, coefficient-wise; exact cancellations are removed.
FockFunctional linear_combine(Complex a, const FockFunctional& phi, Complex b, const FockFunctional& psi);

inline FockFunctional operator+(const FockFunctional& a, const FockFunctional& b) {
  return linear_combine(1.0, a, 1.0, b);
}
inline FockFunctional operator-(const FockFunctional& a, const FockFunctional& b) {
  return linear_combine(1.0, a, -1.0, b);
}
inline FockFunctional operator*(Complex c, const FockFunctional& a) {
  return linear_combine(c, a, 0.0, FockFunctional{});
}

/// max_sigma |phi^(sigma) - psi^(sigma)|.
double max_abs_difference(const FockFunctional& phi, const FockFunctional& psi);

// --- test-space chain S_p (conjugate-linear in the first slot) -------------

Complex inner_p(const FockFunctional& xi, const FockFunctional& eta, double p);
double norm_p(const FockFunctional& xi, double p);

// --- dual chain S_p^* --------------------------------------------------------

/// ||Phi||_{-p} = sqrt(sum lambda^{-2p} |Phi^(sigma)|^2).
double norm_dual(const FockFunctional& phi, double p);

/// <Phi, Psi>_{-p} = sum lambda^{-2p} Phi^(sigma) conj(Psi^(sigma)).
/// Note the orientation: the second slot is conjugated, unlike inner_p.
Complex inner_dual(const FockFunctional& phi, const FockFunctional& psi, double p);

/// Canonical bilinear pairing <<Phi, xi>> = sum xi^(sigma) Phi^(sigma), where
/// xi holds chaos coefficients <Z_sigma, xi>. No conjugation.
Complex dual_pair(const FockFunctional& phi, const FockFunctional& xi);

/// Riesz image of a square-integrable functional: R(eta)^(sigma) = <eta, Z_sigma>
/// = conj(<Z_sigma, eta>), so that dual_pair(riesz(eta), xi) = <eta, xi>.
FockFunctional riesz(const FockFunctional& eta);

// --- growth envelopes --------------------------------------------------------

/// |Phi^(sigma)| <= C lambda_sigma^p on the support.
struct GrowthEnvelope {
  double C = 0.0;
  double p = 0.0;
};

/// Smallest C for the given p. Throws EmptySupportError for the zero functional.
GrowthEnvelope fit_envelope(const FockFunctional& phi, double p);

/// Whether the envelope holds on every support set, with relative slack.
bool certifies(const GrowthEnvelope& env, const FockFunctional& phi, double rel_slack = 1e-12);

/// C * sqrt(sum_{sigma in Gamma} lambda^{-2(q-p)}), an upper bound on
/// ||Phi||_{-q} for anything obeying the envelope. Requires q > p + 1/2,
/// otherwise throws ExponentTooSmallError.
double dual_norm_bound(const GrowthEnvelope& env, double q);

// --- pointwise / uniform-envelope convergence diagnostic ---------------------

struct ConvergenceDiagnostic {
  std::vector<double> pointwise_gaps;  // per sequence element, max over the probe window
  double final_gap = 0.0;              // gap of the last element
  bool pointwise_ok = false;           // final_gap within tolerance
  std::vector<GrowthEnvelope> uniform_envelopes;  // sup_n |Phi_n^| fitted per p
};

/// Checks, on the subsets enumerated by `probe`, that the sequence agrees
/// with `limit` coefficient-wise at its last element and fits a uniform
/// envelope sup_n |Phi_n^(sigma)| <= C lambda^p for each p in p_grid.
/// This does not establish topological convergence beyond the window.
ConvergenceDiagnostic check_strong_convergence(std::span<const FockFunctional> seq,
                                               const FockFunctional& limit, const GammaCursor& probe,
                                               std::span<const double> p_grid, double tolerance = 1e-12);

}  // namespace fockcalc
