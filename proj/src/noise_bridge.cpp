#include "fockcalc/noise_bridge.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <string>

#include "fockcalc/errors.hpp"
#include "fockcalc/operators.hpp"
#include "parallel.hpp"

namespace fockcalc {

std::size_t PathSpace::path_count() const {
  return mode_ == PathMode::exhaustive ? std::size_t{1} << horizon_ : codes_->size();
}

std::vector<int> PathSpace::path(std::size_t i) const {
  std::vector<int> out(static_cast<std::size_t>(horizon_));
  for (int k = 0; k < horizon_; ++k) out[k] = zeta(i, k);
  return out;
}

PathSpace build_space(int horizon, PathMode mode, std::uint64_t paths, std::uint64_t seed) {
  if (horizon < 1) throw HorizonTooLargeError("horizon must be >= 1");
  PathSpace space;
  space.horizon_ = horizon;
  space.mode_ = mode;
  if (mode == PathMode::exhaustive) {
    if (horizon > kMaxExhaustiveHorizon) {
      throw HorizonTooLargeError("exhaustive horizon " + std::to_string(horizon) + " exceeds " +
                                 std::to_string(kMaxExhaustiveHorizon));
    }
    return space;
  }
  if (horizon > kMaxSampledHorizon) throw HorizonTooLargeError("sampled horizon exceeds 64");
  if (paths == 0) throw Error("sampled path space needs at least one path");
  const std::uint64_t keep = horizon == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << horizon) - 1;
  std::mt19937_64 gen(seed);
  auto codes = std::make_shared<std::vector<std::uint64_t>>(paths);
  for (auto& c : *codes) c = gen() & keep;
  space.codes_ = std::move(codes);
  return space;
}

namespace {

void require_within(const FockFunctional& phi, int horizon) {
  if (phi.support_max() >= horizon) {
    throw SupportExceedsHorizonError("support reaches index " + std::to_string(phi.support_max()) +
                                     " but horizon is " + std::to_string(horizon));
  }
}

void require_exhaustive(const PathSpace& space) {
  if (space.mode() != PathMode::exhaustive) throw RequiresExhaustiveError("operation needs an exhaustive path space");
}

void require_site(const PathSpace& space, int k) {
  if (k < 0 || k >= space.horizon()) {
    throw SupportExceedsHorizonError("site " + std::to_string(k) + " outside horizon " +
                                     std::to_string(space.horizon()));
  }
}

PathObservable with_values(const PathObservable& like) {
  PathObservable out{like.space, {}};
  out.values.resize(like.values.size());
  return out;
}

}  // namespace

PathObservable evaluate(const FockFunctional& phi, const PathSpace& space, unsigned threads) {
  require_within(phi, space.horizon());
  std::vector<std::pair<std::uint64_t, Complex>> terms;
  terms.reserve(phi.size());
  for (const auto& [sigma, c] : phi.terms()) terms.emplace_back(*sigma.mask(), c);

  PathObservable obs{space, std::vector<Complex>(space.path_count())};
  detail::parallel_for(obs.values.size(), threads, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      const std::uint64_t code = space.code(i);
      Complex v{};
      for (const auto& [mask, c] : terms) {
        // Z_sigma is -1 to the number of -1 coordinates inside sigma
        v += (std::popcount(mask & ~code) & 1) ? -c : c;
      }
      obs.values[i] = v;
    }
  });
  return obs;
}

Complex path_expectation(const PathObservable& obs) {
  Complex sum{};
  for (const auto& v : obs.values) sum += v;
  return sum * obs.space.weight();
}

PathObservable path_cond_expect(const PathObservable& obs, std::int64_t k) {
  require_exhaustive(obs.space);
  if (k < -1) throw NegativeIndexError("conditioning index must be >= -1");
  const int n = obs.space.horizon();
  if (k >= n - 1) return obs;

  const std::uint64_t low = (std::uint64_t{1} << (k + 1)) - 1;
  std::vector<Complex> sums(static_cast<std::size_t>(low) + 1);
  for (std::size_t i = 0; i < obs.values.size(); ++i) sums[i & low] += obs.values[i];
  const double group = std::ldexp(1.0, n - static_cast<int>(k) - 1);

  auto out = with_values(obs);
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] = sums[i & low] / group;
  return out;
}

PathObservable flip_difference(const PathObservable& obs, int k) {
  require_exhaustive(obs.space);
  require_site(obs.space, k);
  const std::size_t bit = std::size_t{1} << k;
  auto out = with_values(obs);
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    out.values[i] = 0.5 * (obs.values[i | bit] - obs.values[i & ~bit]);
  }
  return out;
}

PathObservable flip_create(const PathObservable& obs, int k) {
  require_exhaustive(obs.space);
  require_site(obs.space, k);
  const std::size_t bit = std::size_t{1} << k;
  auto out = with_values(obs);
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    const Complex avg = 0.5 * (obs.values[i | bit] + obs.values[i & ~bit]);
    out.values[i] = (i & bit) ? avg : -avg;
  }
  return out;
}

double max_abs_gap(const PathObservable& a, const PathObservable& b) {
  if (a.values.size() != b.values.size()) throw Error("observables live on different path spaces");
  double gap = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) gap = std::max(gap, std::abs(a.values[i] - b.values[i]));
  return gap;
}

double check_orthonormality(int horizon) {
  if (horizon > kMaxOrthonormalityHorizon) {
    throw HorizonTooLargeError("orthonormality check is capped at horizon 16");
  }
  const auto space = build_space(horizon);
  const std::size_t count = space.path_count();
  double gap = 0.0;

  if (horizon <= 8) {
    std::vector<PathObservable> basis;
    basis.reserve(count);
    for (std::uint64_t m = 0; m < count; ++m) basis.push_back(evaluate(FockFunctional::basis(SubsetIndex::from_mask(m)), space));
    for (std::size_t s = 0; s < count; ++s) {
      for (std::size_t t = 0; t < count; ++t) {
        Complex sum{};
        for (std::size_t i = 0; i < count; ++i) sum += std::conj(basis[s].values[i]) * basis[t].values[i];
        const double delta = s == t ? 1.0 : 0.0;
        gap = std::max(gap, std::abs(sum * space.weight() - delta));
      }
    }
    return gap;
  }

  // Every pair reduces to its symmetric difference; the diagonal maps to {}.
  for (std::uint64_t m = 0; m < count; ++m) {
    std::int64_t sum = 0;
    for (std::uint64_t i = 0; i < count; ++i) sum += (std::popcount(m & ~i) & 1) ? -1 : 1;
    const double delta = m == 0 ? 1.0 : 0.0;
    gap = std::max(gap, std::abs(static_cast<double>(sum) * space.weight() - delta));
  }
  return gap;
}

ClassicalClarkOconeCheck classical_clark_ocone_check(const FockFunctional& phi, int horizon, unsigned threads) {
  if (horizon > kMaxOrthonormalityHorizon) {
    throw HorizonTooLargeError("pathwise Clark-Ocone check is capped at horizon 16");
  }
  const auto space = build_space(horizon);
  const auto xi = evaluate(phi, space, threads);

  auto rhs = with_values(xi);
  std::fill(rhs.values.begin(), rhs.values.end(), path_expectation(xi));

  ClassicalClarkOconeCheck out;
  for (int k = 0; k < horizon; ++k) {
    const auto grad = path_cond_expect(evaluate(annihilate(phi, k), space, threads), k - 1);
    auto term = with_values(xi);
    for (std::size_t i = 0; i < term.values.size(); ++i) {
      term.values[i] = static_cast<double>(space.zeta(i, k)) * grad.values[i];
      rhs.values[i] += term.values[i];
    }
    const auto coefficient_term = evaluate(create(cond_expect(annihilate(phi, k), k - 1), k), space, threads);
    out.term_gap = std::max(out.term_gap, max_abs_gap(term, coefficient_term));
  }
  out.max_gap = max_abs_gap(xi, rhs);
  return out;
}

double IntertwiningGaps::max() const { return std::max({annihilation, creation, expectation, conditional}); }

IntertwiningGaps check_intertwining(const FockFunctional& phi, int k, int horizon, unsigned threads) {
  if (k < 0 || k >= horizon) {
    throw SupportExceedsHorizonError("site " + std::to_string(k) + " outside horizon " + std::to_string(horizon));
  }
  const auto space = build_space(horizon);
  const auto xi = evaluate(phi, space, threads);

  IntertwiningGaps gaps;
  gaps.annihilation = max_abs_gap(evaluate(annihilate(phi, k), space, threads), flip_difference(xi, k));
  gaps.creation = max_abs_gap(evaluate(create(phi, k), space, threads), flip_create(xi, k));

  auto mean = with_values(xi);
  std::fill(mean.values.begin(), mean.values.end(), path_expectation(xi));
  gaps.expectation = max_abs_gap(evaluate(expect(phi), space, threads), mean);

  gaps.conditional = max_abs_gap(evaluate(cond_expect(phi, k), space, threads), path_cond_expect(xi, k));
  return gaps;
}

double plancherel_gap(const FockFunctional& phi, int horizon, unsigned threads) {
  const auto space = build_space(horizon);
  const auto xi = evaluate(phi, space, threads);
  double second_moment = 0.0;
  for (const auto& v : xi.values) second_moment += std::norm(v);
  second_moment *= space.weight();
  const double n = norm_p(phi, 0.0);
  return std::abs(second_moment - n * n);
}

MonteCarloEstimate mc_estimate(const FockFunctional& phi, const PathSpace& space, unsigned threads) {
  const auto xi = evaluate(phi, space, threads);
  const auto m = static_cast<double>(xi.values.size());
  MonteCarloEstimate est;
  Complex sum{};
  for (const auto& v : xi.values) sum += v;
  est.mean = sum / m;
  if (xi.values.size() > 1) {
    double ss = 0.0;
    for (const auto& v : xi.values) ss += std::norm(v - est.mean);
    est.standard_error = std::sqrt(ss / (m - 1.0) / m);
  }
  return est;
}

}  // namespace fockcalc
