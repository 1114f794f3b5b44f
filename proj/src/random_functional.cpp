#include "fockcalc/random_functional.hpp"

#include <algorithm>
#include <random>

#include "fockcalc/errors.hpp"

namespace fockcalc {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

double unit_symmetric(std::mt19937_64& gen) {
  const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;  // [0, 1)
  return 2.0 * u - 1.0;
}

}  // namespace

FockFunctional random_functional(std::uint64_t seed, const RandomFunctionalSpec& spec) {
  if (spec.support_max < 0 || spec.support_max > 62) throw Error("support_max must lie in [0, 62]");
  if (spec.max_terms < 1) throw Error("max_terms must be >= 1");

  std::mt19937_64 gen(seed);
  const std::uint64_t universe = std::uint64_t{1} << (spec.support_max + 1);
  const std::uint64_t keep = universe - 1;
  const auto cap = static_cast<std::uint64_t>(spec.max_terms);
  const std::uint64_t terms = std::min<std::uint64_t>(1 + gen() % cap, universe);

  FockFunctional::Map map;
  for (std::uint64_t attempts = 0; map.size() < terms && attempts < 64 * terms; ++attempts) {
    std::uint64_t mask = gen() & keep;
    if (map.empty() && spec.hit_support_max) mask |= std::uint64_t{1} << spec.support_max;
    const double re = unit_symmetric(gen);
    const double im = unit_symmetric(gen);
    map.emplace(SubsetIndex::from_mask(mask), Complex{re, im});
  }
  return FockFunctional::from_map(std::move(map));
}

std::vector<FockFunctional> random_corpus(std::uint64_t seed, std::size_t count, const RandomFunctionalSpec& spec) {
  std::vector<FockFunctional> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_functional(mix_seed(seed, i), spec));
  return out;
}

}  // namespace fockcalc
