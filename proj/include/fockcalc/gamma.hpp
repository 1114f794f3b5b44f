#pragma once

// Finite subsets of the nonnegative integers (the chaos multi-indices) and
// the weight lambda(sigma) = prod_{k in sigma} (k + 1) that generates the
// weighted Hilbert chain.

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace fockcalc {

/// A canonical finite subset of N: strictly increasing, duplicate free.
///
/// Ordering is colexicographic, which coincides with ascending bit-mask value
/// for subsets of {0, ..., 63}: {} < {0} < {1} < {0,1} < {2} < ...
class SubsetIndex {
 public:
  using value_type = std::uint32_t;

  SubsetIndex() = default;

  static SubsetIndex from_mask(std::uint64_t mask);
  static SubsetIndex singleton(value_type k) { return SubsetIndex({k}); }

  std::span<const value_type> elements() const { return elems_; }
  bool empty() const { return elems_.empty(); }
  std::size_t size() const { return elems_.size(); }
  bool contains(value_type k) const;

  /// Largest element, or -1 for the empty set.
  std::int64_t max_element() const {
    return elems_.empty() ? -1 : static_cast<std::int64_t>(elems_.back());
  }

  SubsetIndex with(value_type k) const;     // sigma u {k}
  SubsetIndex without(value_type k) const;  // sigma \ {k}

  /// Bit-mask form, available when every element is below 64.
  std::optional<std::uint64_t> mask() const;

  friend bool operator==(const SubsetIndex&, const SubsetIndex&) = default;
  friend std::strong_ordering operator<=>(const SubsetIndex& a, const SubsetIndex& b);

 private:
  explicit SubsetIndex(std::vector<value_type> sorted) : elems_(std::move(sorted)) {}
  friend SubsetIndex canonical_subset(std::span<const std::int64_t> indices);

  std::vector<value_type> elems_;
};

/// Sorts and deduplicates. Throws NegativeIndexError on any entry < 0.
SubsetIndex canonical_subset(std::span<const std::int64_t> indices);
SubsetIndex canonical_subset(std::initializer_list<std::int64_t> indices);

/// lambda(sigma) = prod (k + 1), lambda({}) = 1. Throws OverflowError if the
/// product leaves the double range.
double lambda_weight(const SubsetIndex& sigma);

inline constexpr int kDefaultGammaCap = 24;

struct GammaCursor {
  int max_index = 0;                   // elements drawn from {0, ..., max_index - 1}
  std::optional<int> max_cardinality;  // unlimited when empty
  int hard_cap = kDefaultGammaCap;
};

/// Every subset within the cursor bounds, ascending by mask value.
/// Throws CapExceededError when max_index > hard_cap.
std::vector<SubsetIndex> enumerate_gamma(const GammaCursor& cursor);

/// Sum of lambda^{-p} over all subsets of {0, ..., max_index - 1}, by direct
/// enumeration with compensated summation.
double gamma_weight_sum(double p, int max_index, int hard_cap = kDefaultGammaCap);

inline constexpr std::int64_t kSeriesTerms = 1'000'000;

/// exp(sum_{k>=1} k^{-p}) for p > 1, evaluated as the partial sum over
/// `terms` terms plus the integral tail terms^{1-p} / (p - 1).
/// Throws DivergentSeriesError for p <= 1.
double weight_sum_bound(double p, std::int64_t terms = kSeriesTerms);

/// Upper estimate of the full series sum_{sigma in Gamma} lambda^{-s}
/// = prod_{k>=1} (1 + k^{-s}) for s > 1: exact product over `terms` factors
/// times exp of the same integral tail. Throws DivergentSeriesError for s <= 1.
double weight_series_upper(double s, std::int64_t terms = kSeriesTerms);

}  // namespace fockcalc
