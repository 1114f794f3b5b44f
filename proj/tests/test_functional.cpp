#include <doctest.h>

#include <cmath>
#include <random>

#include "fockcalc/errors.hpp"
#include "fockcalc/functional.hpp"
#include "fockcalc/gamma.hpp"
#include "fockcalc/random_functional.hpp"
#include "oracles.hpp"

using namespace fockcalc;

namespace {

const Complex I{0.0, 1.0};

FockFunctional Z(std::initializer_list<std::int64_t> s) { return FockFunctional::basis(canonical_subset(s)); }

}  // namespace

TEST_CASE("make_functional and coefficient") {
  const auto phi = make_functional({{canonical_subset({0, 2}), 3.0}});
  CHECK(phi.size() == 1);
  CHECK(phi.coefficient(canonical_subset({0, 2})) == Complex{3.0});
  CHECK(coefficient(phi, SubsetIndex{}) == Complex{});
  CHECK(make_functional({{SubsetIndex{}, 0.0}}).is_zero());
  CHECK_THROWS_AS(make_functional({{canonical_subset({1}), 1.0}, {canonical_subset({1}), 2.0}}), DuplicateKeyError);
  CHECK(Z({3, 5}).coefficient(canonical_subset({3, 5})) == Complex{1.0});
  CHECK(Z({3, 5}).support_max() == 5);
  CHECK(Z({}).support_max() == -1);
}

TEST_CASE("linear_combine") {
  const auto phi = make_functional({{canonical_subset({0, 2}), 3.0}, {SubsetIndex{}, I}});
  CHECK(linear_combine(1.0, phi, -1.0, phi).is_zero());
  CHECK(linear_combine(2.0, Z({}), 0.0, phi) == make_functional({{SubsetIndex{}, 2.0}}));
  CHECK(linear_combine(1.0, Z({0}), 1.0, Z({1})) ==
        make_functional({{canonical_subset({0}), 1.0}, {canonical_subset({1}), 1.0}}));
  CHECK((phi - phi).is_zero());
  CHECK(max_abs_difference(phi + phi, 2.0 * phi) == 0.0);
}

TEST_CASE("test-space inner product and norm") {
  CHECK(inner_p(Z({1}), Z({1}), 1.0) == Complex{4.0});
  for (double p : {0.0, 1.0, 2.5}) CHECK(inner_p(Z({0}), Z({1}), p) == Complex{});
  const auto phi = make_functional({{SubsetIndex{}, 1.0}, {canonical_subset({0}), I}, {canonical_subset({1}), 2.0}});
  CHECK(inner_p(phi, phi, 0.0).real() == doctest::Approx(6.0));
  // conjugate-linear in the first slot
  CHECK(inner_p(I * Z({1}), Z({1}), 0.0) == -I);
  CHECK(inner_p(Z({1}), I * Z({1}), 0.0) == I);

  for (double p : {0.0, 1.0, 3.0}) CHECK(norm_p(Z({}), p) == 1.0);
  CHECK(norm_p(Z({1, 3}), 1.0) == doctest::Approx(8.0));
  CHECK(norm_p(make_functional({{SubsetIndex{}, 1.0}, {canonical_subset({0}), 1.0}, {canonical_subset({1}), 1.0}}),
               0.0) == doctest::Approx(std::sqrt(3.0)));
}

TEST_CASE("dual norm and dual inner product") {
  const auto phi = make_functional({{SubsetIndex{}, 1.0}, {canonical_subset({0}), 1.0}, {canonical_subset({1}), 1.0}});
  CHECK(norm_dual(phi, 1.0) == doctest::Approx(1.5));
  CHECK(norm_dual(Z({1, 3}), 1.0) == doctest::Approx(1.0 / 8.0));
  CHECK(norm_dual(Z({2}), 2.0) == doctest::Approx(1.0 / 9.0));
  CHECK(norm_dual(FockFunctional{}, 1.0) == 0.0);

  const auto a = make_functional({{canonical_subset({1}), 2.0 * I}});
  const auto b = Z({1});
  const Complex v = inner_dual(a, b, 1.0);
  CHECK(v.real() == doctest::Approx(0.0));
  CHECK(v.imag() == doctest::Approx(0.5));
  // second slot conjugated
  CHECK(inner_dual(b, a, 1.0).imag() == doctest::Approx(-0.5));
  CHECK(inner_dual(Z({0}), Z({1}), 0.0) == Complex{});
  CHECK(inner_dual(phi, phi, 1.0).real() == doctest::Approx(norm_dual(phi, 1.0) * norm_dual(phi, 1.0)));
}

TEST_CASE("dual pairing and Riesz map") {
  const auto phi = make_functional({{canonical_subset({0, 2}), 3.0 - I}, {SubsetIndex{}, 0.5}});
  CHECK(dual_pair(phi, Z({0, 2})) == 3.0 - I);
  CHECK(dual_pair(phi, Z({})) == Complex{0.5});
  CHECK(dual_pair(FockFunctional{}, phi) == Complex{});

  const auto eta = make_functional({{canonical_subset({1}), 1.0 + 2.0 * I}, {canonical_subset({0, 3}), -I}});
  const auto xi = make_functional({{canonical_subset({1}), 0.5 - I}, {canonical_subset({0, 3}), 2.0}});
  const Complex lhs = dual_pair(riesz(eta), xi);
  const Complex rhs = inner_p(eta, xi, 0.0);
  CHECK(std::abs(lhs - rhs) < 1e-15);
  CHECK(riesz(riesz(eta)) == eta);
}

TEST_CASE("fit_envelope and certifies") {
  CHECK(fit_envelope(make_functional({{SubsetIndex{}, 3.0}}), 0.0).C == 3.0);
  CHECK(fit_envelope(make_functional({{canonical_subset({1}), 8.0}}), 1.0).C == 4.0);

  std::vector<std::pair<SubsetIndex, Complex>> terms;
  for (const auto& s : enumerate_gamma({6})) terms.emplace_back(s, lambda_weight(s));
  const auto lam = make_functional(terms);
  CHECK(fit_envelope(lam, 1.0).C == doctest::Approx(1.0));
  CHECK(certifies({1.0, 1.0}, lam));
  CHECK_FALSE(certifies({0.9, 1.0}, lam));
  CHECK_THROWS_AS(fit_envelope(FockFunctional{}, 0.0), EmptySupportError);
}

TEST_CASE("dual_norm_bound") {
  // sqrt(sinh(pi)/pi) is the exact infinite product value for C=1, p=0, q=1
  const double b = dual_norm_bound({1.0, 0.0}, 1.0);
  CHECK(b >= 1.91731007152598500105073439389);
  CHECK(b - 1.91731007152598500105073439389 < 1e-5);
  CHECK(b <= 2.27610815162573409479106141203);
  CHECK(b <= 2.2761);
  CHECK(dual_norm_bound({0.0, 1.0}, 3.0) == 0.0);
  CHECK_THROWS_AS(dual_norm_bound({1.0, 1.0}, 1.0), ExponentTooSmallError);
  CHECK_THROWS_AS(dual_norm_bound({1.0, 1.0}, 1.5), ExponentTooSmallError);
}

TEST_CASE("property: dual chain is monotone, test chain is monotone, basis duality") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const auto phi = random_functional(seed, {12, 24});
    CHECK(norm_dual(phi, 0.0) >= norm_dual(phi, 1.0));
    CHECK(norm_dual(phi, 1.0) >= norm_dual(phi, 2.0));
    CHECK(norm_p(phi, 0.0) <= norm_p(phi, 1.0));
    CHECK(norm_p(phi, 1.0) <= norm_p(phi, 2.0));
    CHECK(std::abs(norm_p(phi, 0.0) - norm_dual(phi, 0.0)) <= 1e-15 * (1.0 + norm_p(phi, 0.0)));
    const auto dense = oracle::to_dense(phi);
    for (double p : {0.0, 1.0, 2.0}) {
      CHECK(std::abs(norm_dual(phi, p) - oracle::norm_dual(dense, p)) <= 1e-14);
    }
  }
  for (const auto& s : enumerate_gamma({8})) {
    const double l = lambda_weight(s);
    CHECK(norm_dual(FockFunctional::basis(s), 1.5) == doctest::Approx(std::pow(l, -1.5)));
    CHECK(norm_p(FockFunctional::basis(s), 1.5) == doctest::Approx(std::pow(l, 1.5)));
  }
}

TEST_CASE("property: Cauchy-Schwarz across the dual pairing") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const auto phi = random_functional(mix_seed(seed, 1), {10, 16});
    const auto xi = random_functional(mix_seed(seed, 2), {10, 16});
    for (double p : {0.0, 1.0, 2.0}) {
      CHECK(std::abs(dual_pair(phi, xi)) <= norm_dual(phi, p) * norm_p(xi, p) * (1.0 + 1e-12));
      CHECK(std::abs(inner_dual(phi, xi, p)) <= norm_dual(phi, p) * norm_dual(xi, p) * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("property: fitted envelope certifies and bounds the dual norm") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto phi = random_functional(seed, {12, 24});
    for (double p : {0.0, 1.0}) {
      const auto env = fit_envelope(phi, p);
      CHECK(certifies(env, phi));
      for (double q : {p + 0.6, p + 1.0, p + 2.0}) CHECK(norm_dual(phi, q) <= dual_norm_bound(env, q));
    }
  }
}

TEST_CASE("check_strong_convergence") {
  const auto phi = make_functional({{SubsetIndex{}, 2.0}, {canonical_subset({0, 2}), 3.0}});
  const std::vector<double> grid{0.0, 1.0};
  {
    const std::vector<FockFunctional> seq(4, phi);
    const auto d = check_strong_convergence(seq, phi, {4}, grid);
    CHECK(d.pointwise_ok);
    CHECK(d.final_gap == 0.0);
    REQUIRE(d.uniform_envelopes.size() == 2);
    CHECK(d.uniform_envelopes[1].C == doctest::Approx(fit_envelope(phi, 1.0).C));
  }
  {
    std::vector<FockFunctional> seq;
    for (int n = 0; n < 5; ++n) seq.push_back(static_cast<double>(n) * Z({}));
    const auto d = check_strong_convergence(seq, FockFunctional{}, {3}, grid);
    CHECK_FALSE(d.pointwise_ok);
    CHECK(d.final_gap == 4.0);
    CHECK(std::is_sorted(d.pointwise_gaps.begin(), d.pointwise_gaps.end()));
  }
}
