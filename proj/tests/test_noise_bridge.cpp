#include <doctest.h>

#include <cmath>

#include "fockcalc/errors.hpp"
#include "fockcalc/noise_bridge.hpp"
#include "fockcalc/operators.hpp"
#include "fockcalc/random_functional.hpp"
#include "oracles.hpp"

using namespace fockcalc;

namespace {

FockFunctional Z(std::initializer_list<std::int64_t> s) { return FockFunctional::basis(canonical_subset(s)); }

const FockFunctional& sample() {
  static const auto phi = make_functional({{SubsetIndex{}, 2.0}, {canonical_subset({0, 2}), 3.0}});
  return phi;
}

std::size_t path_index(std::initializer_list<int> zeta) {
  std::size_t i = 0;
  int k = 0;
  for (int z : zeta) {
    if (z > 0) i |= std::size_t{1} << k;
    ++k;
  }
  return i;
}

}  // namespace

TEST_CASE("build_space") {
  const auto one = build_space(1);
  REQUIRE(one.path_count() == 2);
  CHECK(one.path(0) == std::vector<int>{-1});
  CHECK(one.path(1) == std::vector<int>{1});

  const auto three = build_space(3);
  CHECK(three.path_count() == 8);
  CHECK(three.weight() == 0.125);

  const auto a = build_space(4, PathMode::sampled, 1000, 7);
  const auto b = build_space(4, PathMode::sampled, 1000, 7);
  const auto c = build_space(4, PathMode::sampled, 1000, 8);
  REQUIRE(a.path_count() == 1000);
  bool differs = false;
  for (std::size_t i = 0; i < 1000; ++i) {
    CHECK(a.code(i) == b.code(i));
    CHECK(a.code(i) < 16);
    differs = differs || a.code(i) != c.code(i);
  }
  CHECK(differs);

  CHECK_THROWS_AS(build_space(21), HorizonTooLargeError);
  CHECK_THROWS_AS(build_space(65, PathMode::sampled, 10, 1), HorizonTooLargeError);
}

TEST_CASE("evaluate examples") {
  const auto s3 = build_space(3);
  const auto one = evaluate(Z({}), s3);
  for (const auto& v : one.values) CHECK(v == Complex{1.0});
  CHECK(evaluate(Z({0, 2}), s3).values[path_index({1, -1, -1})] == Complex{-1.0});
  CHECK(evaluate(sample(), s3).values[path_index({1, 1, 1})] == Complex{5.0});
  CHECK_THROWS_AS(evaluate(Z({3}), s3), SupportExceedsHorizonError);
}

TEST_CASE("evaluate is thread-count independent") {
  const auto space = build_space(12);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto phi = random_functional(seed, {11, 24});
    const auto a = evaluate(phi, space, 1);
    const auto b = evaluate(phi, space, 4);
    CHECK(a.values == b.values);
  }
}

TEST_CASE("path_expectation") {
  const auto s4 = build_space(4);
  CHECK(path_expectation(evaluate(Z({1, 3}), s4)) == Complex{});
  CHECK(path_expectation(evaluate(Z({}), s4)) == Complex{1.0});
  CHECK(path_expectation(evaluate(sample(), s4)) == Complex{2.0});
  for (std::uint64_t m = 0; m < 16; ++m) {
    const auto e = path_expectation(evaluate(FockFunctional::basis(SubsetIndex::from_mask(m)), s4));
    CHECK(e.real() == oracle::path_mean_of_basis(m, 4));
  }
}

TEST_CASE("path_cond_expect") {
  const auto s3 = build_space(3);
  const auto obs = evaluate(Z({0, 2}), s3);
  for (const auto& v : path_cond_expect(obs, 1).values) CHECK(v == Complex{});
  CHECK(path_cond_expect(obs, 2).values == obs.values);
  for (const auto& v : path_cond_expect(evaluate(sample(), s3), -1).values) CHECK(v == Complex{2.0});
  CHECK_THROWS_AS(path_cond_expect(evaluate(Z({0}), build_space(3, PathMode::sampled, 10, 1)), 0),
                  RequiresExhaustiveError);
}

TEST_CASE("property: tower rule and the coefficient/pathwise square") {
  const auto space = build_space(8);
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto phi = random_functional(seed, {7, 24});
    const auto obs = evaluate(phi, space);
    for (int j = -1; j < 8; ++j) {
      const auto pj = path_cond_expect(obs, j);
      for (int k = -1; k < 8; ++k) {
        CHECK(max_abs_gap(path_cond_expect(pj, k), path_cond_expect(obs, std::min(j, k))) <= 1e-12);
      }
      CHECK(max_abs_gap(evaluate(cond_expect(phi, j), space), pj) <= 1e-12);
    }
  }
}

TEST_CASE("flip realizations") {
  const auto s3 = build_space(3);
  const auto obs = evaluate(Z({0, 2}), s3);
  CHECK(max_abs_gap(flip_difference(obs, 2), evaluate(Z({0}), s3)) == 0.0);
  CHECK(max_abs_gap(flip_difference(obs, 1), evaluate(FockFunctional{}, s3)) == 0.0);
  CHECK(max_abs_gap(flip_create(evaluate(Z({0}), s3), 2), obs) == 0.0);
  CHECK_THROWS(flip_difference(obs, 3));
  CHECK_THROWS_AS(flip_difference(evaluate(Z({0}), build_space(3, PathMode::sampled, 10, 1)), 0),
                  RequiresExhaustiveError);
}

TEST_CASE("check_orthonormality") {
  CHECK(check_orthonormality(2) == 0.0);
  CHECK(check_orthonormality(8) <= 1e-12);
  CHECK(check_orthonormality(10) <= 1e-12);
  CHECK_THROWS_AS(check_orthonormality(17), HorizonTooLargeError);

  // independent all-pairs product check at N = 4
  const int n = 4;
  double worst = 0.0;
  for (std::uint64_t s = 0; s < 16; ++s) {
    for (std::uint64_t t = 0; t < 16; ++t) {
      double sum = 0.0;
      for (std::uint64_t path = 0; path < 16; ++path) {
        double v = 1.0;
        for (int k = 0; k < n; ++k) {
          const double z = ((path >> k) & 1U) ? 1.0 : -1.0;
          if ((s >> k) & 1U) v *= z;
          if ((t >> k) & 1U) v *= z;
        }
        sum += v;
      }
      worst = std::max(worst, std::abs(sum / 16.0 - (s == t ? 1.0 : 0.0)));
    }
  }
  CHECK(worst == 0.0);
}

TEST_CASE("classical Clark-Ocone") {
  const auto a = classical_clark_ocone_check(Z({0, 2}), 3);
  CHECK(a.max_gap == 0.0);
  CHECK(a.term_gap == 0.0);
  CHECK(classical_clark_ocone_check(Z({}), 4).max_gap == 0.0);
  CHECK_THROWS_AS(classical_clark_ocone_check(Z({5}), 4), SupportExceedsHorizonError);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto r = classical_clark_ocone_check(random_functional(seed, {7, 24}), 8);
    CHECK(r.max_gap <= 1e-10);
    CHECK(r.term_gap <= 1e-10);
  }
}

TEST_CASE("intertwining") {
  const auto g = check_intertwining(Z({0, 2}), 2, 3);
  CHECK(g.max() == 0.0);
  for (int k = 0; k < 4; ++k) CHECK(check_intertwining(Z({}), k, 4).max() == 0.0);
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto phi = random_functional(seed, {7, 24});
    for (int k = 0; k < 8; ++k) {
      const auto r = check_intertwining(phi, k, 8);
      CHECK(r.annihilation <= 1e-10);
      CHECK(r.creation <= 1e-10);
      CHECK(r.expectation <= 1e-10);
      CHECK(r.conditional <= 1e-10);
    }
  }
}

TEST_CASE("plancherel") {
  CHECK(plancherel_gap(sample(), 3) <= 1e-12);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto phi = random_functional(seed, {7, 24});
    CHECK(plancherel_gap(phi, 8) <= 1e-12 * (1.0 + norm_p(phi, 0.0) * norm_p(phi, 0.0)));
  }
}

TEST_CASE("mc_estimate") {
  const auto space = build_space(6, PathMode::sampled, 100000, 42);
  const auto c = mc_estimate(Z({}), space);
  CHECK(c.mean == Complex{1.0});
  CHECK(c.standard_error == 0.0);

  const auto z0 = mc_estimate(Z({0}), space);
  CHECK(z0.standard_error > 0.0);
  CHECK(std::abs(z0.mean) <= 5.0 * z0.standard_error);

  const auto s1 = mc_estimate(sample(), space, 1);
  const auto s2 = mc_estimate(sample(), build_space(6, PathMode::sampled, 100000, 42), 3);
  CHECK(s1.mean == s2.mean);
  CHECK(s1.standard_error == s2.standard_error);
  CHECK(std::abs(s1.mean.real() - 2.0) <= 5.0 * s1.standard_error);
}
