#include "superpat/seq_encoding.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "superpat/error.hpp"
#include "superpat/pattern.hpp"

namespace superpat {

int SymbolStats::common_count() const {
  return static_cast<int>(std::count(common.begin(), common.end(), true));
}

SymbolStats symbol_stats(const RarySequence& seq, int k, double common_fraction) {
  SymbolStats stats;
  stats.k = k;
  stats.counts.assign(static_cast<std::size_t>(seq.alphabet()), 0);
  for (int v : seq.values()) ++stats.counts[static_cast<std::size_t>(v - 1)];
  stats.common.reserve(stats.counts.size());
  for (int a : stats.counts) stats.common.push_back(a > common_fraction * k);
  return stats;
}

namespace {

std::vector<int> positions_of(const RarySequence& seq, int m) {
  std::vector<int> out;
  const auto v = seq.values();
  for (std::size_t p = 0; p < v.size(); ++p) {
    if (v[p] == m) out.push_back(static_cast<int>(p) + 1);
  }
  return out;
}

void check_symbol(const RarySequence& seq, int m) {
  if (m < 1 || m > seq.alphabet()) {
    fail(ErrorCode::InvalidArgument, "symbol " + std::to_string(m) + " outside 1.." +
                                         std::to_string(seq.alphabet()));
  }
}

}  // namespace

int GapStructure::full_count() const {
  return static_cast<int>(std::count_if(gaps.begin(), gaps.end(), [](const Gap& g) { return g.full; }));
}

std::vector<int> GapStructure::open_gaps() const {
  std::vector<int> out;
  for (const auto& g : gaps) {
    if (!g.full) out.push_back(g.j);
  }
  return out;
}

int GapStructure::occupancy(int j, int sym) const {
  const auto& occ = gaps.at(static_cast<std::size_t>(j - 1)).occupancy;
  auto it = std::lower_bound(occ.begin(), occ.end(), std::pair<int, int>{sym, 0});
  return it != occ.end() && it->first == sym ? it->second : 0;
}

GapStructure full_gaps(const RarySequence& seq, int m, double full_fraction) {
  check_symbol(seq, m);
  const auto counts = symbol_stats(seq, seq.alphabet()).counts;
  const auto v = seq.values();
  GapStructure gs;
  gs.symbol = m;
  gs.positions = positions_of(seq, m);

  std::vector<int> tally(static_cast<std::size_t>(seq.alphabet()) + 1, 0);
  std::vector<int> touched;
  for (std::size_t j = 0; j + 1 < gs.positions.size(); ++j) {
    Gap gap;
    gap.j = static_cast<int>(j) + 1;
    gap.start = gs.positions[j];
    gap.end = gs.positions[j + 1];
    touched.clear();
    for (int p = gap.start + 1; p < gap.end; ++p) {
      const int s = v[static_cast<std::size_t>(p - 1)];
      if (tally[static_cast<std::size_t>(s)]++ == 0) touched.push_back(s);
    }
    std::sort(touched.begin(), touched.end());
    for (int s : touched) {
      const int held = tally[static_cast<std::size_t>(s)];
      gap.occupancy.emplace_back(s, held);
      if (!gap.full && s != m && held >= full_fraction * counts[static_cast<std::size_t>(s - 1)]) {
        gap.full = true;
        gap.filled_by = s;
      }
      tally[static_cast<std::size_t>(s)] = 0;
    }
    gs.gaps.push_back(std::move(gap));
  }
  return gs;
}

int count_splits(const RarySequence& seq, int m, std::span<const int> prefix) {
  check_symbol(seq, m);
  std::vector<int> sorted(prefix.begin(), prefix.end());
  std::sort(sorted.begin(), sorted.end());
  const auto s = positions_of(seq, m);
  int splits = 0;
  for (std::size_t j = 0; j + 1 < s.size(); ++j) {
    auto it = std::upper_bound(sorted.begin(), sorted.end(), s[j]);
    if (it != sorted.end() && *it < s[j + 1]) ++splits;
  }
  return splits;
}

SplitReport split_report(const RarySequence& seq, int m, std::span<const int> prefix, int k,
                         const SequenceThresholds& thresholds) {
  const auto stats = symbol_stats(seq, k, thresholds.common_fraction);
  SplitReport r;
  r.symbol = m;
  r.count = stats.count(m);
  r.splits = count_splits(seq, m, prefix);
  r.full_gaps = full_gaps(seq, m, thresholds.full_fraction).full_count();
  r.common = stats.is_common(m);
  return r;
}

int suffix_length(int k, double c) {
  if (!(c >= 0 && c < 1)) fail(ErrorCode::Domain, "suffix fraction c must lie in [0,1)");
  return static_cast<int>(std::floor(c * k + 1e-9));
}

SeqEncoding encode_seq(const RarySequence& seq, const Occurrence& occ, double c) {
  const int k = occ.size();
  if (occ.mode != OccurrenceMode::ValueIndexed) {
    fail(ErrorCode::InvalidArgument, "sequence encoding needs a value-indexed occurrence");
  }
  if (seq.alphabet() != k) {
    fail(ErrorCode::Domain, "alphabet size r=" + std::to_string(seq.alphabet()) +
                                " must equal the pattern length k=" + std::to_string(k));
  }
  validate_occurrence(occ, seq.size());
  for (int i = 1; i <= k; ++i) {
    if (seq.at(occ.indices[static_cast<std::size_t>(i - 1)]) != i) {
      fail(ErrorCode::Domain, "value-indexed occurrence needs seq(t_i) = i");
    }
  }
  const int prefix_len = k - suffix_length(k, c);
  SeqEncoding enc;
  enc.prefix.assign(occ.indices.begin(), occ.indices.begin() + prefix_len);
  for (int m = prefix_len + 1; m <= k; ++m) {
    const int tm = occ.indices[static_cast<std::size_t>(m - 1)];
    std::vector<bool> psi;
    psi.reserve(static_cast<std::size_t>(m - 1));
    for (int i = 1; i < m; ++i) psi.push_back(tm < occ.indices[static_cast<std::size_t>(i - 1)]);
    enc.relpos.push_back(std::move(psi));
  }
  return enc;
}

SeqDecoding decode_seq(const RarySequence& seq, const SeqEncoding& enc, double c) {
  const int k = seq.alphabet();
  const int prefix_len = k - suffix_length(k, c);
  auto malformed = [](const std::string& why) { fail(ErrorCode::MalformedEncoding, why); };
  if (static_cast<int>(enc.prefix.size()) != prefix_len) malformed("prefix length must be k - floor(ck)");
  if (static_cast<int>(enc.relpos.size()) != k - prefix_len) malformed("one relative-position vector per suffix symbol");
  for (int i = 1; i <= prefix_len; ++i) {
    const int t = enc.prefix[static_cast<std::size_t>(i - 1)];
    if (t < 1 || t > seq.size() || seq.at(t) != i) malformed("prefix index does not hold its symbol");
  }

  // The prefix positions and the relative-position vectors fix the left-to-
  // right order of all k symbols; build that order by insertion.
  std::vector<int> order(static_cast<std::size_t>(prefix_len));
  std::iota(order.begin(), order.end(), 1);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return enc.prefix[static_cast<std::size_t>(a - 1)] < enc.prefix[static_cast<std::size_t>(b - 1)];
  });
  for (int m = prefix_len + 1; m <= k; ++m) {
    const auto& psi = enc.relpos[static_cast<std::size_t>(m - prefix_len - 1)];
    if (static_cast<int>(psi.size()) != m - 1) malformed("relative-position vector has wrong length");
    const auto before = static_cast<std::size_t>(std::count(psi.begin(), psi.end(), false));
    for (std::size_t r = 0; r < order.size(); ++r) {
      const bool left_of_m = !psi[static_cast<std::size_t>(order[r] - 1)];
      if (left_of_m != (r < before)) malformed("relative positions are not consistent with an order");
    }
    order.insert(order.begin() + static_cast<std::ptrdiff_t>(before), m);
  }

  // Realize the order leftmost: suffix symbols take the first available
  // occurrence after the previous entry and before the next prefix index.
  std::vector<int> positions(static_cast<std::size_t>(k), 0);
  for (int i = 1; i <= prefix_len; ++i) {
    positions[static_cast<std::size_t>(i - 1)] = enc.prefix[static_cast<std::size_t>(i - 1)];
  }
  const auto v = seq.values();
  int cursor = 0;
  for (std::size_t r = 0; r < order.size(); ++r) {
    const int sym = order[r];
    if (sym <= prefix_len) {
      const int t = positions[static_cast<std::size_t>(sym - 1)];
      if (t <= cursor) malformed("relative positions cannot be realized in the sequence");
      cursor = t;
      continue;
    }
    int fence = seq.size() + 1;
    for (std::size_t q = r + 1; q < order.size(); ++q) {
      if (order[q] <= prefix_len) {
        fence = positions[static_cast<std::size_t>(order[q] - 1)];
        break;
      }
    }
    int found = 0;
    for (int p = cursor + 1; p < fence; ++p) {
      if (v[static_cast<std::size_t>(p - 1)] == sym) {
        found = p;
        break;
      }
    }
    if (found == 0) malformed("no occurrence of symbol " + std::to_string(sym) + " realizes its relative position");
    positions[static_cast<std::size_t>(sym - 1)] = found;
    cursor = found;
  }
  return {Permutation(std::move(order)), std::move(positions)};
}

namespace {

template <class Visit>
void for_each_value_indexed(const std::vector<std::vector<int>>& slots, Visit&& visit) {
  const std::size_t k = slots.size();
  std::vector<std::size_t> choice(k, 0);
  std::vector<int> occ(k);
  for (const auto& s : slots) {
    if (s.empty()) return;
  }
  while (true) {
    for (std::size_t i = 0; i < k; ++i) occ[i] = slots[i][choice[i]];
    visit(occ);
    std::size_t i = k;
    while (i > 0) {
      --i;
      if (++choice[i] < slots[i].size()) break;
      choice[i] = 0;
      if (i == 0) return;
    }
    if (k == 0) return;
  }
}

}  // namespace

SeqEncodingCensus census_seq_encodings(const RarySequence& seq, double c, std::uint64_t budget) {
  const int k = seq.alphabet();
  std::vector<std::vector<int>> slots;
  BigInt total = 1;
  for (int m = 1; m <= k; ++m) {
    slots.push_back(positions_of(seq, m));
    total *= slots.back().size();
  }
  if (total > budget) {
    fail(ErrorCode::Budget, total.str() + " value-indexed occurrences exceed the enumeration budget");
  }
  SeqEncodingCensus census;
  std::map<Permutation, std::vector<int>> leftmost;  // pattern -> sorted positions
  for_each_value_indexed(slots, [&](const std::vector<int>& idx) {
    const auto occ = Occurrence::value_indexed(idx);
    const auto pattern = extract_pattern(seq.values(), occ);
    ++census.occurrences_checked;
    const auto decoded = decode_seq(seq, encode_seq(seq, occ, c), c);
    if (decoded.pattern != pattern) ++census.roundtrip_failures;
    std::vector<int> sorted(idx);
    std::sort(sorted.begin(), sorted.end());
    auto [it, inserted] = leftmost.try_emplace(pattern, sorted);
    if (!inserted && sorted < it->second) it->second = std::move(sorted);
  });
  std::set<SeqEncoding> encodings;
  for (const auto& [pattern, sorted] : leftmost) {
    // Turn the leftmost positional occurrence back into value-indexed form.
    std::vector<int> idx(static_cast<std::size_t>(k));
    for (int t : sorted) idx[static_cast<std::size_t>(seq.at(t) - 1)] = t;
    encodings.insert(encode_seq(seq, Occurrence::value_indexed(idx), c));
  }
  census.distinct_patterns = leftmost.size();
  census.distinct_encodings = encodings.size();
  return census;
}

RarySequence restrict_to_symbols(const RarySequence& seq, std::span<const int> symbols) {
  std::vector<int> keep(symbols.begin(), symbols.end());
  std::sort(keep.begin(), keep.end());
  if (std::adjacent_find(keep.begin(), keep.end()) != keep.end()) {
    fail(ErrorCode::InvalidArgument, "symbol subset repeats a symbol");
  }
  if (keep.empty()) fail(ErrorCode::InvalidArgument, "symbol subset must be nonempty");
  for (int s : keep) check_symbol(seq, s);
  std::vector<int> label(static_cast<std::size_t>(seq.alphabet()) + 1, 0);
  for (std::size_t r = 0; r < keep.size(); ++r) label[static_cast<std::size_t>(keep[r])] = static_cast<int>(r) + 1;
  std::vector<int> out;
  for (int v : seq.values()) {
    if (label[static_cast<std::size_t>(v)] != 0) out.push_back(label[static_cast<std::size_t>(v)]);
  }
  return RarySequence(std::move(out), static_cast<int>(keep.size()));
}

FullGapLemmaReport verify_fullgap_lemma(const RarySequence& seq, int k,
                                        const SequenceThresholds& thresholds) {
  const auto stats = symbol_stats(seq, k, thresholds.common_fraction);
  FullGapLemmaReport report;
  report.common_count = stats.common_count();
  report.required = thresholds.witness_fraction * k;
  report.applicable = report.common_count >= thresholds.hypothesis_fraction * k;
  if (!report.applicable) return report;
  for (int m = 1; m <= seq.alphabet(); ++m) {
    if (!stats.is_common(m)) continue;
    const int full = full_gaps(seq, m, thresholds.full_fraction).full_count();
    if (full < thresholds.full_fraction * stats.count(m)) report.witnesses.push_back(m);
  }
  report.meets_bound = static_cast<double>(report.witnesses.size()) >= report.required;
  return report;
}

std::vector<int> sample_prefix(const RarySequence& seq, int prefix_length, Rng& rng) {
  std::vector<std::vector<int>> slots(static_cast<std::size_t>(prefix_length));
  const auto v = seq.values();
  for (std::size_t p = 0; p < v.size(); ++p) {
    if (v[p] <= prefix_length) slots[static_cast<std::size_t>(v[p] - 1)].push_back(static_cast<int>(p) + 1);
  }
  std::vector<int> prefix;
  prefix.reserve(slots.size());
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (slots[i].empty()) {
      fail(ErrorCode::Domain, "symbol " + std::to_string(i + 1) + " does not occur; no prefix index exists");
    }
    prefix.push_back(slots[i][rng.below(slots[i].size())]);
  }
  return prefix;
}

namespace {

// sum over prefix symbols i of b_ij / a_i, per gap j of symbol m.
std::vector<double> gap_loads(const GapStructure& gs, const SymbolStats& stats, int prefix_length) {
  std::vector<double> loads;
  for (const auto& g : gs.gaps) {
    double load = 0;
    for (auto [s, held] : g.occupancy) {
      if (s <= prefix_length) load += static_cast<double>(held) / stats.count(s);
    }
    loads.push_back(load);
  }
  return loads;
}

}  // namespace

double exact_expected_splits(const RarySequence& seq, int m, int prefix_length) {
  const auto stats = symbol_stats(seq, seq.alphabet());
  const auto gs = full_gaps(seq, m);
  double expected = 0;
  for (const auto& g : gs.gaps) {
    double unsplit = 1;
    for (auto [s, held] : g.occupancy) {
      if (s <= prefix_length) unsplit *= 1.0 - static_cast<double>(held) / stats.count(s);
    }
    expected += 1.0 - unsplit;
  }
  return expected;
}

double expected_splits_bound(const RarySequence& seq, int m, int prefix_length,
                             double full_fraction) {
  const auto stats = symbol_stats(seq, seq.alphabet());
  const auto gs = full_gaps(seq, m, full_fraction);
  const auto loads = gap_loads(gs, stats, prefix_length);
  double bound = static_cast<double>(gs.gaps.size());
  for (std::size_t j = 0; j < gs.gaps.size(); ++j) {
    if (!gs.gaps[j].full) bound -= std::exp(-2.6 * loads[j]);
  }
  return bound;
}

SplitSimulation simulate_splits(const RarySequence& seq, double c, std::uint64_t trials,
                                std::uint64_t seed, int parallelism, double full_fraction) {
  const int k = seq.alphabet();
  SplitSimulation sim;
  sim.prefix_length = k - suffix_length(k, c);
  const int suffix = k - sim.prefix_length;
  const auto stats = symbol_stats(seq, k);
  sim.rows.resize(trials * static_cast<std::uint64_t>(suffix));

  for_each_trial(trials, parallelism, [&](std::uint64_t t) {
    Rng rng(derive_seed(seed, t));
    const auto prefix = sample_prefix(seq, sim.prefix_length, rng);
    for (int s = 0; s < suffix; ++s) {
      const int m = sim.prefix_length + 1 + s;
      sim.rows[t * static_cast<std::uint64_t>(suffix) + static_cast<std::uint64_t>(s)] =
          {t, m, stats.count(m), count_splits(seq, m, prefix)};
    }
  });

  for (int s = 0; s < suffix; ++s) {
    const int m = sim.prefix_length + 1 + s;
    double sum = 0;
    double sum_sq = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
      const double x = sim.rows[t * static_cast<std::uint64_t>(suffix) + static_cast<std::uint64_t>(s)].splits;
      sum += x;
      sum_sq += x * x;
    }
    SplitSymbolSummary summary;
    summary.symbol = m;
    summary.count = stats.count(m);
    if (trials > 0) {
      const double n = static_cast<double>(trials);
      summary.mean = sum / n;
      const double var = trials > 1 ? std::max(0.0, (sum_sq - n * summary.mean * summary.mean) / (n - 1)) : 0.0;
      summary.standard_error = std::sqrt(var / n);
    }
    summary.exact_mean = exact_expected_splits(seq, m, sim.prefix_length);
    summary.bound = expected_splits_bound(seq, m, sim.prefix_length, full_fraction);
    sim.summary.push_back(summary);
  }
  return sim;
}

}  // namespace superpat
