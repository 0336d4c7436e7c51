#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "superpat/bigint.hpp"
#include "superpat/perm.hpp"

namespace superpat {

inline constexpr std::uint64_t kDefaultEnumerationBudget = 1'000'000'000ULL;
inline constexpr int kMaxBitmapLength = 12;
inline constexpr int kMaxUniversalityLength = 12;

struct CensusOptions {
  int parallelism = 1;
  std::uint64_t budget = kDefaultEnumerationBudget;
};

struct PatternCensus {
  int n = 0;
  int k = 0;
  BigInt binom_n_k;
  std::uint64_t distinct = 0;
  // Presence bitmap indexed by PatternRank, kept for k <= 12.
  std::vector<std::uint64_t> bitmap;
  // Sorted distinct ranks, kept for 13 <= k <= 20.
  std::vector<std::uint64_t> ranks;

  bool has_bitmap() const noexcept { return k <= kMaxBitmapLength; }
  bool contains_rank(PatternRank r) const;
  bool universal() const;
  // Lehmer-least absent pattern, if any.
  std::optional<Permutation> first_missing() const;

  friend bool operator==(const PatternCensus&, const PatternCensus&) = default;
};

// Lexicographically smallest positional occurrence of pi in host, if any.
std::optional<Occurrence> contains(std::span<const int> host, const Permutation& pi);

// Positional occurrences in lexicographic order, at most `limit` of them.
std::vector<Occurrence> enumerate_occurrences(std::span<const int> host, const Permutation& pi,
                                              std::size_t limit);

// Exact number of distinct k-patterns over all C(n,k) index subsets.
// Subsets selecting a repeated symbol are skipped.
PatternCensus count_distinct_patterns(std::span<const int> host, int k,
                                      const CensusOptions& options = {});

struct UniversalityReport {
  bool universal = false;
  std::optional<Permutation> missing;
};

UniversalityReport is_universal(std::span<const int> host, int k);

// (1,2,...,k) repeated k times over alphabet [k].
RarySequence construct_repeated_identity(int k);

// Throws Error(Budget) when C(n,k) exceeds the budget.
void check_enumeration_budget(int n, int k, std::uint64_t budget);

namespace detail {

struct LargestIndexRange {
  int first = 0;  // inclusive
  int last = 0;   // inclusive
};

// Splits the largest-index values k..n into at most `parts` contiguous ranges
// of roughly equal subset counts.
std::vector<LargestIndexRange> partition_by_largest(int n, int k, int parts);

// Visits every k-subset of [1..n] whose largest element lies in `range`,
// in colexicographic order. `visit` receives the sorted 1-based subset.
template <class Visit>
void for_each_subset(LargestIndexRange range, int k, Visit&& visit) {
  std::vector<int> subset(static_cast<std::size_t>(k));
  const std::size_t last = static_cast<std::size_t>(k) - 1;
  for (int largest = range.first; largest <= range.last; ++largest) {
    for (std::size_t i = 0; i < last; ++i) subset[i] = static_cast<int>(i) + 1;
    subset[last] = largest;
    while (true) {
      visit(std::span<const int>(subset));
      std::size_t j = 0;
      while (j < last && subset[j] + 1 == subset[j + 1]) ++j;
      if (j == last) break;
      ++subset[j];
      for (std::size_t i = 0; i < j; ++i) subset[i] = static_cast<int>(i) + 1;
    }
  }
}

// Runs body(worker, range) for each range of the partition, one thread per
// range when parallelism > 1.
void run_partitioned(int n, int k, int parallelism,
                     const std::function<void(std::size_t, LargestIndexRange)>& body);

}  // namespace detail
}  // namespace superpat
