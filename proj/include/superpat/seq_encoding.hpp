#pragma once

// Patterns of r-ary sequences. An occurrence of pi in seq over [k] is
// value-indexed: t_i is a position with seq(t_i) = i. The encoding stores
// t_1..t_L (L = k - floor(ck)) and, for each later symbol m, only the
// relative position of t_m against t_1..t_{m-1}. Gap and split statistics
// measure how much that relative position saves over storing t_m itself.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "superpat/perm.hpp"
#include "superpat/random.hpp"

namespace superpat {

struct SequenceThresholds {
  double common_fraction = 0.1;       // common iff a_m > common_fraction * k
  double full_fraction = 0.9;         // gap full iff it holds >= full_fraction * a_m'
  double hypothesis_fraction = 0.99;  // share of symbols that must be common
  double witness_fraction = 0.03;     // share of witnesses required
};

struct SymbolStats {
  int k = 0;
  std::vector<int> counts;    // a_m at index m-1
  std::vector<bool> common;   // at index m-1

  int count(int m) const { return counts.at(static_cast<std::size_t>(m - 1)); }
  bool is_common(int m) const { return common.at(static_cast<std::size_t>(m - 1)); }
  int common_count() const;
};

SymbolStats symbol_stats(const RarySequence& seq, int k, double common_fraction = 0.1);

struct Gap {
  int j = 0;      // 1-based: the gap between s_j and s_{j+1}
  int start = 0;  // s_j
  int end = 0;    // s_{j+1}
  std::vector<std::pair<int, int>> occupancy;  // (symbol, count), nonzero, ascending symbol
  bool full = false;
  int filled_by = 0;  // smallest filling symbol, 0 when not full
};

struct GapStructure {
  int symbol = 0;
  std::vector<int> positions;  // s_1 < ... < s_{a_m}
  std::vector<Gap> gaps;

  int full_count() const;
  std::vector<int> open_gaps() const;  // J: indices j of gaps that are not full
  int occupancy(int j, int symbol) const;
};

GapStructure full_gaps(const RarySequence& seq, int m, double full_fraction = 0.9);

// Adjacent occurrence pairs of m with some prefix index strictly between.
int count_splits(const RarySequence& seq, int m, std::span<const int> prefix);

struct SplitReport {
  int symbol = 0;
  int count = 0;  // a_m
  int splits = 0;
  int full_gaps = 0;
  bool common = false;
};

SplitReport split_report(const RarySequence& seq, int m, std::span<const int> prefix, int k,
                         const SequenceThresholds& thresholds = {});

struct SeqEncoding {
  std::vector<int> prefix;                   // t_1..t_L
  std::vector<std::vector<bool>> relpos;     // psi(m) for m = L+1..k; psi(m)[i-1] = [t_m < t_i]
  friend auto operator<=>(const SeqEncoding&, const SeqEncoding&) = default;
  friend bool operator==(const SeqEncoding&, const SeqEncoding&) = default;
};

// floor(c*k): how many trailing symbols are stored by relative position.
int suffix_length(int k, double c);

SeqEncoding encode_seq(const RarySequence& seq, const Occurrence& occ, double c);

struct SeqDecoding {
  Permutation pattern;
  std::vector<int> positions;  // value-indexed: leftmost joint realization
};

SeqDecoding decode_seq(const RarySequence& seq, const SeqEncoding& enc, double c);

struct SeqEncodingCensus {
  std::uint64_t distinct_patterns = 0;
  std::uint64_t distinct_encodings = 0;
  std::uint64_t occurrences_checked = 0;
  std::uint64_t roundtrip_failures = 0;
  bool injective() const noexcept { return distinct_encodings == distinct_patterns; }
};

// Every value-indexed occurrence is encoded and decoded; each distinct
// pattern contributes the encoding of its leftmost occurrence.
SeqEncodingCensus census_seq_encodings(const RarySequence& seq, double c,
                                       std::uint64_t budget = 1'000'000'000ULL);

// seq with only the given symbols kept, relabeled to 1..|symbols| by rank.
RarySequence restrict_to_symbols(const RarySequence& seq, std::span<const int> symbols);

struct FullGapLemmaReport {
  bool applicable = false;
  int common_count = 0;
  std::vector<int> witnesses;  // common m with fewer than full_fraction * a_m full gaps
  double required = 0;         // witness_fraction * k
  bool meets_bound = false;
};

FullGapLemmaReport verify_fullgap_lemma(const RarySequence& seq, int k,
                                        const SequenceThresholds& thresholds = {});

// t_i uniform over the positions of symbol i, independently for i = 1..L.
std::vector<int> sample_prefix(const RarySequence& seq, int prefix_length, Rng& rng);

// Exact E[X] for the split count of m under sample_prefix.
double exact_expected_splits(const RarySequence& seq, int m, int prefix_length);

// a_m - 1 - sum over open gaps j of exp(-2.6 * sum_i b_ij / a_i).
double expected_splits_bound(const RarySequence& seq, int m, int prefix_length,
                             double full_fraction = 0.9);

struct SplitTrialRow {
  std::uint64_t trial = 0;
  int symbol = 0;
  int count = 0;
  int splits = 0;
};

struct SplitSymbolSummary {
  int symbol = 0;
  int count = 0;
  double mean = 0;
  double standard_error = 0;
  double exact_mean = 0;
  double bound = 0;
};

struct SplitSimulation {
  int prefix_length = 0;
  std::vector<SplitTrialRow> rows;  // ordered by (trial, symbol)
  std::vector<SplitSymbolSummary> summary;
};

SplitSimulation simulate_splits(const RarySequence& seq, double c, std::uint64_t trials,
                                std::uint64_t seed, int parallelism = 1,
                                double full_fraction = 0.9);

}  // namespace superpat
