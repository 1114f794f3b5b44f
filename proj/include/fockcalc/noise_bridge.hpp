#pragma once

// Rademacher realization of the noise: zeta_k in {-1, +1}, independent and
// fair. Z_sigma(omega) = prod_{i in sigma} zeta_i(omega). With exhaustive
// enumeration of {-1,+1}^N every expectation below is exact, which makes the
// path space an independent oracle for the coefficient-level operators.
//
// Path encoding: path i carries zeta_k = +1 iff bit k of its code is set.
// Exhaustive spaces use code == i, so paths are in ascending binary order.

#include <cstdint>
#include <memory>
#include <vector>

#include "fockcalc/functional.hpp"

namespace fockcalc {

enum class PathMode { exhaustive, sampled };

inline constexpr int kMaxExhaustiveHorizon = 20;
inline constexpr int kMaxOrthonormalityHorizon = 16;
inline constexpr int kMaxSampledHorizon = 64;

class PathSpace {
 public:
  int horizon() const { return horizon_; }
  PathMode mode() const { return mode_; }
  std::size_t path_count() const;
  double weight() const { return 1.0 / static_cast<double>(path_count()); }

  /// Sign bits of path i (bit k set <=> zeta_k = +1).
  std::uint64_t code(std::size_t i) const {
    return mode_ == PathMode::exhaustive ? static_cast<std::uint64_t>(i) : (*codes_)[i];
  }
  int zeta(std::size_t i, int k) const { return ((code(i) >> k) & 1U) != 0 ? 1 : -1; }
  std::vector<int> path(std::size_t i) const;

  friend PathSpace build_space(int horizon, PathMode mode, std::uint64_t paths, std::uint64_t seed);

 private:
  int horizon_ = 1;
  PathMode mode_ = PathMode::exhaustive;
  std::shared_ptr<const std::vector<std::uint64_t>> codes_;  // sampled mode only
};

/// Exhaustive: all 2^N paths (N <= 20). Sampled: `paths` draws from
/// std::mt19937_64 seeded with `seed`, one 64-bit word per path truncated to
/// N bits (N <= 64). Throws HorizonTooLargeError beyond the caps.
PathSpace build_space(int horizon, PathMode mode = PathMode::exhaustive, std::uint64_t paths = 0,
                      std::uint64_t seed = 0);

struct PathObservable {
  PathSpace space;
  std::vector<Complex> values;  // one per path, in path order
};

/// omega -> sum_sigma Phi^(sigma) Z_sigma(omega). Paths are split across
/// `threads` workers; each value is computed independently so the result
/// does not depend on the thread count. Throws SupportExceedsHorizonError
/// when support_max(Phi) >= N.
PathObservable evaluate(const FockFunctional& phi, const PathSpace& space, unsigned threads = 1);

/// Weighted mean in ascending path order.
Complex path_expectation(const PathObservable& obs);

/// E[obs | F_k]: average over the paths sharing zeta_0..zeta_k. k = -1 gives
/// the constant expectation. Throws RequiresExhaustiveError in sampled mode.
PathObservable path_cond_expect(const PathObservable& obs, std::int64_t k);

/// (1/2)[xi(omega^{k,+}) - xi(omega^{k,-})], the Rademacher gradient.
PathObservable flip_difference(const PathObservable& obs, int k);

/// zeta_k (1/2)[xi(omega^{k,+}) + xi(omega^{k,-})], the Rademacher divergence.
PathObservable flip_create(const PathObservable& obs, int k);

double max_abs_gap(const PathObservable& a, const PathObservable& b);

/// max over pairs (sigma, tau) of subsets of {0..N-1} of
/// |E[Z_sigma Z_tau] - delta|. Uses direct pathwise products for N <= 8 and
/// the reduction Z_sigma Z_tau = Z_{sigma xor tau} above that.
/// Throws HorizonTooLargeError for N > 16.
double check_orthonormality(int horizon);

struct ClassicalClarkOconeCheck {
  double max_gap = 0.0;   // max_omega |xi - E xi - sum_k zeta_k E[d_k xi | F_{k-1}]|
  double term_gap = 0.0;  // per-k gap between zeta_k P_{k-1} d_k xi and a_k^+ E_{k-1} a_k evaluated
};

/// Pathwise Clark-Ocone on the exhaustive space of horizon N (<= 16).
ClassicalClarkOconeCheck classical_clark_ocone_check(const FockFunctional& phi, int horizon,
                                                     unsigned threads = 1);

struct IntertwiningGaps {
  double annihilation = 0.0;  // evaluate(a_k Phi) vs flip_difference
  double creation = 0.0;      // evaluate(a_k^+ Phi) vs flip_create
  double expectation = 0.0;   // evaluate(E Phi) vs constant path mean
  double conditional = 0.0;   // evaluate(E_k Phi) vs path_cond_expect

  double max() const;
};

IntertwiningGaps check_intertwining(const FockFunctional& phi, int k, int horizon, unsigned threads = 1);

/// |E|xi|^2 - ||xi||_0^2| on the exhaustive space.
double plancherel_gap(const FockFunctional& phi, int horizon, unsigned threads = 1);

struct MonteCarloEstimate {
  Complex mean;
  double standard_error = 0.0;
};

/// Sample mean and standard error of evaluate(Phi), accumulated in path order.
MonteCarloEstimate mc_estimate(const FockFunctional& phi, const PathSpace& space, unsigned threads = 1);

}  // namespace fockcalc
