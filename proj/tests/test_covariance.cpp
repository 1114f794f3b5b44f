#include <doctest.h>

#include "fockcalc/covariance.hpp"
#include "fockcalc/random_functional.hpp"

using namespace fockcalc;

namespace {

FockFunctional Z(std::initializer_list<std::int64_t> s) { return FockFunctional::basis(canonical_subset(s)); }

const FockFunctional& singles() {
  static const auto phi =
      make_functional({{SubsetIndex{}, 1.0}, {canonical_subset({0}), 2.0}, {canonical_subset({1}), 1.0}});
  return phi;
}

bool all_singletons(const FockFunctional& phi) {
  for (const auto& [s, c] : phi.terms()) {
    if (s.size() > 1) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("cov_p and var_p examples") {
  CHECK(cov_p(singles(), singles(), 1.0).real() == doctest::Approx(4.25));
  CHECK(cov_p(singles(), singles(), 1.0).imag() == 0.0);
  CHECK(cov_p(Z({}), singles(), 0.0) == Complex{});
  CHECK(var_p(singles(), 0.0) == doctest::Approx(5.0));
  CHECK(var_p(Z({}), 2.0) == 0.0);
  CHECK(var_p(Z({1, 3}), 1.0) == doctest::Approx(1.0 / 64.0));
  // second argument conjugated
  const Complex i{0.0, 1.0};
  CHECK(cov_p(i * Z({1}), Z({1}), 0.0) == i);
  CHECK(cov_p(Z({1}), i * Z({1}), 0.0) == -i);
}

TEST_CASE("cov_identity examples") {
  const auto r = cov_identity(singles(), singles(), 0.0);
  CHECK(r.lhs.real() == doctest::Approx(5.0));
  CHECK(r.rhs.real() == doctest::Approx(5.0));
  REQUIRE(r.per_k.size() == 2);
  CHECK(r.per_k.at(0).real() == doctest::Approx(4.0));
  CHECK(r.per_k.at(1).real() == doctest::Approx(1.0));
  CHECK(r.within(1e-12));

  const auto d = cov_identity(Z({0, 1}), Z({2}), 0.0);
  CHECK(d.lhs == Complex{});
  CHECK(d.rhs == Complex{});
  for (const auto& [k, v] : d.per_k) CHECK(v == Complex{});
}

TEST_CASE("var_bound examples") {
  const auto strict = var_bound(Z({0, 1}), 0.0);
  CHECK(strict.lhs == doctest::Approx(1.0));
  CHECK(strict.rhs == doctest::Approx(2.0));
  CHECK(strict.holds());
  const auto eq = var_bound(singles(), 0.0);
  CHECK(eq.lhs == doctest::Approx(5.0));
  CHECK(eq.rhs == doctest::Approx(5.0));
  const auto zero = var_bound(FockFunctional{}, 1.0);
  CHECK(zero.lhs == 0.0);
  CHECK(zero.rhs == 0.0);
}

TEST_CASE("property: identity, symmetry, scaling, bound") {
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const auto phi = random_functional(mix_seed(seed, 10), {10, 24});
    const auto psi = random_functional(mix_seed(seed, 11), {10, 24});
    const Complex c{0.3 * static_cast<double>(seed % 7) - 1.0, 0.25};
    for (double p : {0.0, 1.0}) {
      CHECK(cov_identity(phi, psi, p).within(1e-12));
      const Complex a = cov_p(phi, psi, p);
      const Complex b = cov_p(psi, phi, p);
      CHECK(std::abs(a - std::conj(b)) <= 1e-14 * (1.0 + std::abs(a)));
      const double v = var_p(phi, p);
      CHECK(std::abs(var_p(c * phi, p) - std::norm(c) * v) <= 1e-12 * (1.0 + v));
      CHECK(std::abs(cov_p(phi, phi, p).real() - v) <= 1e-12 * (1.0 + v));
      const auto vb = var_bound(phi, p);
      CHECK(vb.holds());
      if (all_singletons(phi)) {
        CHECK(std::abs(vb.lhs - vb.rhs) <= 1e-12 * (1.0 + vb.rhs));
      } else {
        CHECK(vb.lhs < vb.rhs);
      }
    }
  }
}

TEST_CASE("property: bound is an equality for all-singleton supports") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto base = random_functional(seed, {10, 24});
    FockFunctional::Map terms;
    for (const auto& [s, c] : base.terms()) {
      if (s.size() <= 1) terms[s] = c;
    }
    const auto phi = FockFunctional::from_map(terms);
    const auto vb = var_bound(phi, 1.0);
    CHECK(std::abs(vb.lhs - vb.rhs) <= 1e-12 * (1.0 + vb.rhs));
  }
}
