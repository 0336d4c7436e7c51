#pragma once

// Host objects and basic pattern plumbing. All indices and values are
// 1-based: a permutation of length n holds each of 1..n exactly once, an
// r-ary sequence holds entries in 1..r, and an occurrence lists positions
// in 1..n.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace superpat {

class Permutation {
 public:
  // Throws Error(Domain) unless values is a bijection on {1..n}, n >= 1.
  explicit Permutation(std::vector<int> values);

  static Permutation identity(int n);

  int size() const noexcept { return static_cast<int>(values_.size()); }
  std::span<const int> values() const noexcept { return values_; }

  // sigma(i) for 1 <= i <= n.
  int at(int i) const { return values_.at(static_cast<std::size_t>(i - 1)); }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> values_;
};

class RarySequence {
 public:
  // Throws Error(Domain) unless r >= 1 and every entry lies in 1..r.
  RarySequence(std::vector<int> values, int alphabet);

  int size() const noexcept { return static_cast<int>(values_.size()); }
  int alphabet() const noexcept { return alphabet_; }
  std::span<const int> values() const noexcept { return values_; }
  int at(int i) const { return values_.at(static_cast<std::size_t>(i - 1)); }

  friend bool operator==(const RarySequence&, const RarySequence&) = default;

 private:
  std::vector<int> values_;
  int alphabet_;
};

using Host = std::variant<Permutation, RarySequence>;

std::span<const int> host_values(const Host& host) noexcept;

enum class OccurrenceMode {
  PositionOrdered,  // t_1 < ... < t_k
  ValueIndexed,     // t_i is where the entry playing value i sits
};

struct Occurrence {
  std::vector<int> indices;
  OccurrenceMode mode = OccurrenceMode::PositionOrdered;

  static Occurrence positional(std::vector<int> indices) {
    return {std::move(indices), OccurrenceMode::PositionOrdered};
  }
  static Occurrence value_indexed(std::vector<int> indices) {
    return {std::move(indices), OccurrenceMode::ValueIndexed};
  }

  int size() const noexcept { return static_cast<int>(indices.size()); }

  friend bool operator==(const Occurrence&, const Occurrence&) = default;
};

// Checks the mode invariant and that every index lies in 1..n.
void validate_occurrence(const Occurrence& occ, int n);

// Factorial-number-system (Lehmer) rank of a length-k pattern, k <= 20.
struct PatternRank {
  std::uint64_t value = 0;
  friend auto operator<=>(const PatternRank&, const PatternRank&) = default;
};

inline constexpr int kMaxRankedLength = 20;

std::uint64_t factorial_u64(int k);

Permutation standardize(std::span<const int> values);

// Pattern formed by the selected entries of host, read left to right.
// Repeated symbols in the selection witness no pattern and are rejected.
Permutation extract_pattern(std::span<const int> host, const Occurrence& occ);
inline Permutation extract_pattern(const Host& host, const Occurrence& occ) {
  return extract_pattern(host_values(host), occ);
}

// Ties within a symbol are broken by position: the earlier occurrence gets
// the smaller value.
Permutation lift(const RarySequence& seq);

PatternRank rank_pattern(const Permutation& p);
Permutation unrank_pattern(PatternRank rank, int k);

// Rank of the pattern formed by pairwise-distinct raw values, without
// materializing the standardized permutation. Caller guarantees
// distinctness and size <= 20.
std::uint64_t rank_of_values(std::span<const int> values) noexcept;

// Text format: optional "# r=<int>" header (sequences only), then
// whitespace-separated integers.
Host parse_host(std::string_view text);
std::string format_host(const Host& host);
Host load_host(const std::string& path);

}  // namespace superpat
