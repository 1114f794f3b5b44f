#include "fockcalc/gamma.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "fockcalc/errors.hpp"

namespace fockcalc {

SubsetIndex SubsetIndex::from_mask(std::uint64_t mask) {
  std::vector<value_type> elems;
  elems.reserve(static_cast<std::size_t>(std::popcount(mask)));
  while (mask != 0) {
    elems.push_back(static_cast<value_type>(std::countr_zero(mask)));
    mask &= mask - 1;
  }
  return SubsetIndex(std::move(elems));
}

bool SubsetIndex::contains(value_type k) const {
  return std::binary_search(elems_.begin(), elems_.end(), k);
}

SubsetIndex SubsetIndex::with(value_type k) const {
  auto it = std::lower_bound(elems_.begin(), elems_.end(), k);
  if (it != elems_.end() && *it == k) return *this;
  std::vector<value_type> out;
  out.reserve(elems_.size() + 1);
  out.insert(out.end(), elems_.begin(), it);
  out.push_back(k);
  out.insert(out.end(), it, elems_.end());
  return SubsetIndex(std::move(out));
}

SubsetIndex SubsetIndex::without(value_type k) const {
  auto it = std::lower_bound(elems_.begin(), elems_.end(), k);
  if (it == elems_.end() || *it != k) return *this;
  std::vector<value_type> out;
  out.reserve(elems_.size() - 1);
  out.insert(out.end(), elems_.begin(), it);
  out.insert(out.end(), it + 1, elems_.end());
  return SubsetIndex(std::move(out));
}

std::optional<std::uint64_t> SubsetIndex::mask() const {
  if (!elems_.empty() && elems_.back() >= 64) return std::nullopt;
  std::uint64_t m = 0;
  for (auto k : elems_) m |= std::uint64_t{1} << k;
  return m;
}

std::strong_ordering operator<=>(const SubsetIndex& a, const SubsetIndex& b) {
  // Colex: the set owning the largest element of the symmetric difference is
  // the larger one.
  auto ia = a.elems_.rbegin();
  auto ib = b.elems_.rbegin();
  for (; ia != a.elems_.rend() && ib != b.elems_.rend(); ++ia, ++ib) {
    if (*ia != *ib) return *ia <=> *ib;
  }
  if (ia == a.elems_.rend() && ib == b.elems_.rend()) return std::strong_ordering::equal;
  return ia == a.elems_.rend() ? std::strong_ordering::less : std::strong_ordering::greater;
}

SubsetIndex canonical_subset(std::span<const std::int64_t> indices) {
  std::vector<SubsetIndex::value_type> elems;
  elems.reserve(indices.size());
  for (auto i : indices) {
    if (i < 0) throw NegativeIndexError("negative subset element: " + std::to_string(i));
    if (i > static_cast<std::int64_t>(UINT32_MAX)) {
      throw OverflowError("subset element out of range: " + std::to_string(i));
    }
    elems.push_back(static_cast<SubsetIndex::value_type>(i));
  }
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  return SubsetIndex(std::move(elems));
}

SubsetIndex canonical_subset(std::initializer_list<std::int64_t> indices) {
  return canonical_subset(std::span<const std::int64_t>(indices.begin(), indices.size()));
}

double lambda_weight(const SubsetIndex& sigma) {
  double w = 1.0;
  for (auto k : sigma.elements()) {
    w *= static_cast<double>(k) + 1.0;
    if (!std::isfinite(w)) throw OverflowError("lambda weight exceeds double range");
  }
  return w;
}

namespace {

void check_cap(int max_index, int hard_cap) {
  if (max_index < 0) throw NegativeIndexError("max_index must be >= 0");
  if (max_index > hard_cap || max_index >= 63) {
    throw CapExceededError("max_index " + std::to_string(max_index) + " exceeds enumeration cap " +
                           std::to_string(hard_cap));
  }
}

}  // namespace

std::vector<SubsetIndex> enumerate_gamma(const GammaCursor& cursor) {
  check_cap(cursor.max_index, cursor.hard_cap);
  const std::uint64_t count = std::uint64_t{1} << cursor.max_index;
  std::vector<SubsetIndex> out;
  if (!cursor.max_cardinality) out.reserve(count);
  for (std::uint64_t m = 0; m < count; ++m) {
    if (cursor.max_cardinality && std::popcount(m) > *cursor.max_cardinality) continue;
    out.push_back(SubsetIndex::from_mask(m));
  }
  return out;
}

double gamma_weight_sum(double p, int max_index, int hard_cap) {
  check_cap(max_index, hard_cap);
  std::vector<double> inv(static_cast<std::size_t>(max_index));
  for (int k = 0; k < max_index; ++k) inv[k] = std::pow(static_cast<double>(k) + 1.0, -p);

  // Neumaier summation keeps the 2^24-term sum within a few ulps.
  double sum = 0.0;
  double comp = 0.0;
  const std::uint64_t count = std::uint64_t{1} << max_index;
  for (std::uint64_t m = 0; m < count; ++m) {
    double term = 1.0;
    for (std::uint64_t bits = m; bits != 0; bits &= bits - 1) term *= inv[std::countr_zero(bits)];
    const double t = sum + term;
    comp += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
    sum = t;
  }
  return sum + comp;
}

namespace {

double integral_tail(double s, std::int64_t terms) {
  return std::pow(static_cast<double>(terms), 1.0 - s) / (s - 1.0);
}

}  // namespace

double weight_sum_bound(double p, std::int64_t terms) {
  if (!(p > 1.0)) throw DivergentSeriesError("sum of k^{-p} diverges for p <= 1");
  double partial = 0.0;
  // smallest terms first
  for (std::int64_t k = terms; k >= 1; --k) partial += std::pow(static_cast<double>(k), -p);
  return std::exp(partial + integral_tail(p, terms));
}

double weight_series_upper(double s, std::int64_t terms) {
  if (!(s > 1.0)) throw DivergentSeriesError("sum of lambda^{-s} diverges for s <= 1");
  double log_sum = 0.0;
  for (std::int64_t k = terms; k >= 1; --k) log_sum += std::log1p(std::pow(static_cast<double>(k), -s));
  // log(1 + x) <= x bounds the remaining factors
  return std::exp(log_sum + integral_tail(s, terms));
}

}  // namespace fockcalc
