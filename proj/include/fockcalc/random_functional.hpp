#pragma once

// Seeded generators for random finitely supported functionals, used by the
// verification suites and the property tests.

#include <cstdint>
#include <vector>

#include "fockcalc/functional.hpp"

namespace fockcalc {

struct RandomFunctionalSpec {
  int support_max = 10;  // every element lies in {0, ..., support_max}
  int max_terms = 24;    // term count is uniform in [1, max_terms]
  bool hit_support_max = false;  // force some set to contain support_max
};

/// Stream-splitting hash (splitmix64 finalizer).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

/// Uniform random supports within bounds; real and imaginary parts are
/// independent and uniform in [-1, 1]. Bit-reproducible from the seed on any
/// platform (std::mt19937_64 plus explicit bit-to-double mapping).
FockFunctional random_functional(std::uint64_t seed, const RandomFunctionalSpec& spec);

/// `count` functionals, element i drawn from mix_seed(seed, i).
std::vector<FockFunctional> random_corpus(std::uint64_t seed, std::size_t count, const RandomFunctionalSpec& spec);

}  // namespace fockcalc
