#pragma once

// Injective encoding of the patterns of a permutation host. Each pattern is
// described by an occurrence T = {t_1 < ... < t_k} (k odd). The width around
// an even-indexed entry is b_i = t_{i+1} - t_{i-1}. When at least floor(ck)
// widths reach d*n/k, the entries at floor(ck) of those wide slots are
// described by their relative value pi(i) instead of their index t_i;
// otherwise all k indices are stored.

#include <compare>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "superpat/pattern.hpp"
#include "superpat/perm.hpp"

namespace superpat {

struct EncodingParams {
  double c = 0.00075;
  double d = 8.180;
  int n = 0;
  int k = 0;

  static EncodingParams with_defaults(int n, int k) { return {0.00075, 8.180, n, k}; }

  void validate() const;
  // floor(c*k): how many slots switch to relative values in the mixed case.
  int value_slot_count() const;
  double threshold() const { return d * n / k; }
  bool qualifies(int width) const {
    return static_cast<double>(width) * k >= d * static_cast<double>(n);
  }
};

struct Width {
  int index = 0;  // even i with 1 < i < k
  int value = 0;  // t_{i+1} - t_{i-1}
  friend bool operator==(const Width&, const Width&) = default;
};

struct WidthProfile {
  std::vector<Width> widths;
  double threshold = 0;
  std::vector<int> qualifying;

  int width_at(int index) const;
};

WidthProfile compute_widths(const Occurrence& occ, const EncodingParams& params);

// floor(ck) smallest qualifying even indices, or nullopt when fewer qualify
// (or floor(ck) == 0) and the full index list must be used.
std::optional<std::vector<int>> select_value_indices(const WidthProfile& profile,
                                                     const EncodingParams& params);

struct IndexEncoding {
  std::vector<int> indices;
  friend auto operator<=>(const IndexEncoding&, const IndexEncoding&) = default;
};

struct MixedEncoding {
  std::vector<int> value_indices;  // I, ascending even indices
  std::vector<int> kept;           // (t_i) for i not in I, ascending
  std::vector<int> relvals;        // (pi(i)) for i in I, aligned with value_indices
  friend auto operator<=>(const MixedEncoding&, const MixedEncoding&) = default;
};

using PermEncoding = std::variant<IndexEncoding, MixedEncoding>;

inline int encoding_case(const PermEncoding& enc) noexcept {
  return std::holds_alternative<IndexEncoding>(enc) ? 1 : 2;
}

PermEncoding encode_perm(const Permutation& host, const Occurrence& occ,
                         const EncodingParams& params);

Permutation decode_perm(const Permutation& host, const PermEncoding& enc,
                        const EncodingParams& params);

struct EncodingCensus {
  std::uint64_t distinct_patterns = 0;
  std::uint64_t distinct_encodings = 0;
  std::uint64_t index_encodings = 0;  // case 1
  std::uint64_t mixed_encodings = 0;  // case 2
  std::uint64_t occurrences_checked = 0;
  std::uint64_t roundtrip_failures = 0;

  bool injective() const noexcept { return distinct_encodings == distinct_patterns; }
  friend bool operator==(const EncodingCensus&, const EncodingCensus&) = default;
};

// Encodes every distinct pattern of host through its lexicographically
// smallest occurrence and counts distinct outputs. With verify_every_occurrence
// each of the C(n,k) occurrences is also round-tripped through decode.
EncodingCensus census_encodings(const Permutation& host, const EncodingParams& params,
                                const CensusOptions& options = {},
                                bool verify_every_occurrence = false);

struct LedgerEntry {
  std::vector<int> value_indices;
  std::vector<int> kept;
  std::uint64_t completions = 0;    // subsets T mapping to (I, kept)
  std::uint64_t width_product = 0;  // prod_{i in I} (b_i - 1)
};

struct LedgerReport {
  int n = 0;
  int k = 0;
  std::uint64_t subsets = 0;
  std::uint64_t mixed_subsets = 0;
  std::vector<LedgerEntry> entries;
  // Every entry has completions >= width_product.
  bool completions_cover_product = true;
  // Every width_product >= (d*n/k - 1)^{floor(ck)}.
  bool product_meets_bound = true;
  double width_bound = 0;
};

// Groups all size-k subsets of [n] that land in the mixed case by their
// (I, kept) pair and compares group sizes with the width product.
LedgerReport audit_counting_ledger(const EncodingParams& params);

}  // namespace superpat
