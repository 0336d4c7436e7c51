#include "superpat/pattern.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <thread>

#include "superpat/error.hpp"

namespace superpat {

BigInt binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigInt result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

BigInt factorial(std::uint64_t k) {
  BigInt result = 1;
  for (std::uint64_t i = 2; i <= k; ++i) result *= i;
  return result;
}

namespace {

// Neighbours of pi(j) among pi(0..j-1) in value order: the closest smaller
// and closest larger earlier entries (-1 when absent). Checking a candidate
// against these two suffices for the whole prefix.
struct Bracket {
  int below = -1;
  int above = -1;
};

std::vector<Bracket> brackets_for(const Permutation& pi) {
  const auto v = pi.values();
  std::vector<Bracket> out(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      if (v[i] < v[j] && (out[j].below < 0 || v[i] > v[static_cast<std::size_t>(out[j].below)])) {
        out[j].below = static_cast<int>(i);
      }
      if (v[i] > v[j] && (out[j].above < 0 || v[i] < v[static_cast<std::size_t>(out[j].above)])) {
        out[j].above = static_cast<int>(i);
      }
    }
  }
  return out;
}

class OccurrenceSearch {
 public:
  OccurrenceSearch(std::span<const int> host, const Permutation& pi, std::size_t limit)
      : host_(host),
        k_(static_cast<std::size_t>(pi.size())),
        brackets_(brackets_for(pi)),
        chosen_(k_),
        limit_(limit) {}

  std::vector<Occurrence> run() {
    if (k_ <= host_.size() && limit_ > 0) descend(0, 0);
    return std::move(found_);
  }

 private:
  bool fits(std::size_t j, std::size_t pos) const {
    const int value = host_[pos];
    const auto& b = brackets_[j];
    if (b.below >= 0 && !(host_[chosen_[static_cast<std::size_t>(b.below)]] < value)) return false;
    if (b.above >= 0 && !(value < host_[chosen_[static_cast<std::size_t>(b.above)]])) return false;
    return true;
  }

  // Returns true once the limit is reached.
  bool descend(std::size_t j, std::size_t start) {
    if (j == k_) {
      std::vector<int> idx(k_);
      for (std::size_t i = 0; i < k_; ++i) idx[i] = static_cast<int>(chosen_[i]) + 1;
      found_.push_back(Occurrence::positional(std::move(idx)));
      return found_.size() >= limit_;
    }
    const std::size_t stop = host_.size() - (k_ - j - 1);
    for (std::size_t pos = start; pos < stop; ++pos) {
      if (!fits(j, pos)) continue;
      chosen_[j] = pos;
      if (descend(j + 1, pos + 1)) return true;
    }
    return false;
  }

  std::span<const int> host_;
  std::size_t k_;
  std::vector<Bracket> brackets_;
  std::vector<std::size_t> chosen_;
  std::size_t limit_;
  std::vector<Occurrence> found_;
};

// Fused distinctness check and Lehmer rank of the selected raw values.
bool rank_if_distinct(std::span<const int> values, std::uint64_t& rank) noexcept {
  const std::size_t k = values.size();
  std::uint64_t r = 0;
  for (std::size_t i = 0; i < k; ++i) {
    std::uint64_t smaller = 0;
    for (std::size_t j = i + 1; j < k; ++j) {
      if (values[j] == values[i]) return false;
      smaller += values[j] < values[i] ? 1 : 0;
    }
    r = r * (k - i) + smaller;
  }
  rank = r;
  return true;
}

}  // namespace

std::optional<Occurrence> contains(std::span<const int> host, const Permutation& pi) {
  auto found = OccurrenceSearch(host, pi, 1).run();
  if (found.empty()) return std::nullopt;
  return std::move(found.front());
}

std::vector<Occurrence> enumerate_occurrences(std::span<const int> host, const Permutation& pi,
                                              std::size_t limit) {
  if (limit < 1) fail(ErrorCode::InvalidArgument, "occurrence limit must be >= 1");
  return OccurrenceSearch(host, pi, limit).run();
}

void check_enumeration_budget(int n, int k, std::uint64_t budget) {
  const BigInt total = binomial(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k));
  if (total > budget) {
    fail(ErrorCode::Budget, "C(" + std::to_string(n) + "," + std::to_string(k) + ") = " +
                                total.str() + " subsets exceeds the enumeration budget " +
                                std::to_string(budget));
  }
}

namespace detail {

std::vector<LargestIndexRange> partition_by_largest(int n, int k, int parts) {
  std::vector<LargestIndexRange> out;
  if (k < 1 || k > n) return out;
  parts = std::max(parts, 1);
  // Subsets with largest element L number C(L-1, k-1).
  std::vector<double> weight;
  double total = 0;
  for (int L = k; L <= n; ++L) {
    weight.push_back(
        binomial(static_cast<std::uint64_t>(L - 1), static_cast<std::uint64_t>(k - 1))
            .convert_to<double>());
    total += weight.back();
  }
  const double share = total / parts;
  int first = k;
  double acc = 0;
  for (int L = k; L <= n; ++L) {
    acc += weight[static_cast<std::size_t>(L - k)];
    const bool last_part = static_cast<int>(out.size()) == parts - 1;
    if (L == n || (!last_part && acc >= share * static_cast<double>(out.size() + 1))) {
      out.push_back({first, L});
      first = L + 1;
    }
  }
  return out;
}

void run_partitioned(int n, int k, int parallelism,
                     const std::function<void(std::size_t, LargestIndexRange)>& body) {
  const auto ranges = partition_by_largest(n, k, parallelism);
  if (ranges.size() <= 1 || parallelism <= 1) {
    for (std::size_t w = 0; w < ranges.size(); ++w) body(w, ranges[w]);
    return;
  }
  std::vector<std::jthread> workers;
  workers.reserve(ranges.size());
  std::vector<std::exception_ptr> errors(ranges.size());
  for (std::size_t w = 0; w < ranges.size(); ++w) {
    workers.emplace_back([&, w] {
      try {
        body(w, ranges[w]);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  workers.clear();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace detail

bool PatternCensus::contains_rank(PatternRank r) const {
  if (has_bitmap()) {
    const auto word = r.value / 64;
    if (word >= bitmap.size()) return false;
    return (bitmap[word] >> (r.value % 64)) & 1U;
  }
  return std::binary_search(ranks.begin(), ranks.end(), r.value);
}

bool PatternCensus::universal() const { return distinct == factorial_u64(k); }

std::optional<Permutation> PatternCensus::first_missing() const {
  if (universal()) return std::nullopt;
  std::uint64_t missing = 0;
  if (has_bitmap()) {
    for (std::size_t w = 0; w < bitmap.size(); ++w) {
      if (~bitmap[w] != 0) {
        missing = w * 64 + static_cast<std::uint64_t>(std::countr_one(bitmap[w]));
        break;
      }
    }
  } else {
    for (std::uint64_t r : ranks) {
      if (r != missing) break;
      ++missing;
    }
  }
  return unrank_pattern(PatternRank{missing}, k);
}

PatternCensus count_distinct_patterns(std::span<const int> host, int k,
                                      const CensusOptions& options) {
  const int n = static_cast<int>(host.size());
  if (k < 1) fail(ErrorCode::InvalidArgument, "pattern length k must be >= 1");
  if (k > kMaxRankedLength) fail(ErrorCode::Capacity, "distinct-pattern counting supports k <= 20");
  if (k > n) fail(ErrorCode::InvalidArgument, "pattern length exceeds host length");
  check_enumeration_budget(n, k, options.budget);

  PatternCensus census;
  census.n = n;
  census.k = k;
  census.binom_n_k = binomial(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k));

  const std::uint64_t patterns = factorial_u64(k);

  if (k <= kMaxBitmapLength) {
    // One shared bitmap; OR is commutative, so the result does not depend on
    // how the workers interleave.
    const std::size_t words = static_cast<std::size_t>((patterns + 63) / 64);
    std::vector<std::atomic<std::uint64_t>> shared(words);
    detail::run_partitioned(n, k, options.parallelism, [&](std::size_t, auto range) {
      std::vector<int> vals(static_cast<std::size_t>(k));
      detail::for_each_subset(range, k, [&](std::span<const int> subset) {
        for (std::size_t i = 0; i < subset.size(); ++i) {
          vals[i] = host[static_cast<std::size_t>(subset[i] - 1)];
        }
        std::uint64_t r = 0;
        if (!rank_if_distinct(vals, r)) return;
        const std::uint64_t bit = std::uint64_t{1} << (r % 64);
        auto& word = shared[r / 64];
        if (!(word.load(std::memory_order_relaxed) & bit)) {
          word.fetch_or(bit, std::memory_order_relaxed);
        }
      });
    });
    census.bitmap.resize(words);
    for (std::size_t w = 0; w < words; ++w) {
      census.bitmap[w] = shared[w].load(std::memory_order_relaxed);
      census.distinct += static_cast<std::uint64_t>(std::popcount(census.bitmap[w]));
    }
    return census;
  }

  const auto ranges = detail::partition_by_largest(n, k, options.parallelism);
  std::vector<std::vector<std::uint64_t>> per_worker(ranges.size());
  constexpr std::size_t kCompactEvery = std::size_t{1} << 22;
  detail::run_partitioned(n, k, options.parallelism, [&](std::size_t w, auto range) {
    auto& seen = per_worker[w];
    std::size_t next_compaction = kCompactEvery;
    std::vector<int> vals(static_cast<std::size_t>(k));
    detail::for_each_subset(range, k, [&](std::span<const int> subset) {
      for (std::size_t i = 0; i < subset.size(); ++i) {
        vals[i] = host[static_cast<std::size_t>(subset[i] - 1)];
      }
      std::uint64_t r = 0;
      if (!rank_if_distinct(vals, r)) return;
      seen.push_back(r);
      if (seen.size() >= next_compaction) {
        std::sort(seen.begin(), seen.end());
        seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
        next_compaction = seen.size() + kCompactEvery;
      }
    });
    std::sort(seen.begin(), seen.end());
    seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
  });
  for (auto& part : per_worker) {
    std::vector<std::uint64_t> merged;
    merged.reserve(census.ranks.size() + part.size());
    std::set_union(census.ranks.begin(), census.ranks.end(), part.begin(), part.end(),
                   std::back_inserter(merged));
    census.ranks = std::move(merged);
  }
  census.distinct = census.ranks.size();
  return census;
}

UniversalityReport is_universal(std::span<const int> host, int k) {
  if (k < 1) fail(ErrorCode::InvalidArgument, "pattern length k must be >= 1");
  if (k > kMaxUniversalityLength) {
    fail(ErrorCode::Capacity, "universality checks iterate k! patterns; k <= 12 supported");
  }
  const std::uint64_t total = factorial_u64(k);
  for (std::uint64_t r = 0; r < total; ++r) {
    auto pi = unrank_pattern(PatternRank{r}, k);
    if (!contains(host, pi)) return {false, std::move(pi)};
  }
  return {true, std::nullopt};
}

RarySequence construct_repeated_identity(int k) {
  if (k < 1) fail(ErrorCode::InvalidArgument, "k must be >= 1");
  std::vector<int> values;
  values.reserve(static_cast<std::size_t>(k) * static_cast<std::size_t>(k));
  for (int block = 0; block < k; ++block) {
    for (int v = 1; v <= k; ++v) values.push_back(v);
  }
  return RarySequence(std::move(values), k);
}

}  // namespace superpat
