#include <doctest.h>

#include <cmath>
#include <map>

#include "oracle.hpp"
#include "superpat/error.hpp"
#include "superpat/pattern.hpp"
#include "superpat/seq_encoding.hpp"

using namespace superpat;

namespace {

std::vector<int> vals(const Permutation& p) { return {p.values().begin(), p.values().end()}; }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::Io;
}

// All value-indexed occurrences (t_1..t_k with seq(t_i) = i).
std::vector<std::vector<int>> value_indexed_occurrences(const std::vector<int>& seq, int k) {
  std::vector<std::vector<int>> out{{}};
  for (int i = 1; i <= k; ++i) {
    std::vector<std::vector<int>> next;
    for (const auto& partial : out) {
      for (int p : oracle::positions_of(seq, i)) {
        auto extended = partial;
        extended.push_back(p);
        next.push_back(extended);
      }
    }
    out = std::move(next);
  }
  return out;
}

// Pattern of a value-indexed occurrence: symbols read left to right.
std::vector<int> pattern_of(const std::vector<int>& t) {
  std::vector<std::pair<int, int>> by_position;
  for (std::size_t i = 0; i < t.size(); ++i) by_position.emplace_back(t[i], static_cast<int>(i) + 1);
  std::sort(by_position.begin(), by_position.end());
  std::vector<int> out;
  for (auto [pos, sym] : by_position) out.push_back(sym);
  return out;
}

// 1 2 3^18 2 2 1 2^27 3 2 3 1
std::vector<int> nested_runs_sequence() {
  std::vector<int> s{1, 2};
  s.insert(s.end(), 18, 3);
  s.insert(s.end(), {2, 2, 1});
  s.insert(s.end(), 27, 2);
  s.insert(s.end(), {3, 2, 3, 1});
  return s;
}

}  // namespace

TEST_CASE("symbol_stats examples") {
  const auto a = symbol_stats(RarySequence({1, 2, 1, 2}, 2), 2);
  CHECK(a.counts == std::vector<int>{2, 2});
  CHECK(a.is_common(1));
  CHECK(a.is_common(2));
  CHECK(symbol_stats(RarySequence({1, 1, 1}, 2), 2).counts == std::vector<int>{3, 0});
  const auto ri = symbol_stats(construct_repeated_identity(3), 3);
  CHECK(ri.counts == std::vector<int>{3, 3, 3});
  CHECK(ri.common_count() == 3);
  // Common means strictly more than 0.1k.
  const auto edge = symbol_stats(RarySequence({1, 2, 2}, 2), 10);
  CHECK_FALSE(edge.is_common(1));
  CHECK(edge.is_common(2));
}

TEST_CASE("full gaps in a sequence with nested runs") {
  const RarySequence seq(nested_runs_sequence(), 3);
  const auto stats = symbol_stats(seq, 3);
  CHECK(stats.counts == std::vector<int>{3, 31, 20});

  const auto ones = full_gaps(seq, 1);
  REQUIRE(ones.gaps.size() == 2);
  CHECK(ones.gaps[0].full);
  CHECK(ones.gaps[0].filled_by == 3);
  CHECK(ones.gaps[1].full);
  CHECK(ones.gaps[1].filled_by == 2);

  // The 2-gap around the run of 3s holds 18 >= 0.9 * 20 of them; every
  // other 2-gap is empty or holds a single 3.
  const auto twos = full_gaps(seq, 2);
  REQUIRE(twos.gaps.size() == 30);
  CHECK(twos.gaps[0].full);
  CHECK(twos.gaps[0].filled_by == 3);
  CHECK(twos.full_count() == 1);
  CHECK(twos.open_gaps().size() == 29);

  // 17 threes would fall short.
  auto fewer = nested_runs_sequence();
  fewer.erase(fewer.begin() + 2);
  const auto twos_fewer = full_gaps(RarySequence(fewer, 3), 2);
  CHECK_FALSE(twos_fewer.gaps[0].full);
}

TEST_CASE("full gap examples") {
  const RarySequence s({2, 1, 2, 1, 2}, 2);
  const auto g = full_gaps(s, 2);
  REQUIRE(g.gaps.size() == 2);
  CHECK(g.occupancy(1, 1) == 1);
  CHECK(g.occupancy(2, 1) == 1);
  CHECK(g.full_count() == 0);
  const auto empty = full_gaps(RarySequence({1, 2, 2}, 2), 2);
  REQUIRE(empty.gaps.size() == 1);
  CHECK(empty.gaps[0].occupancy.empty());
  CHECK_FALSE(empty.gaps[0].full);
  // Absent symbols never fill a gap.
  CHECK(full_gaps(RarySequence({1, 1}, 3), 1).full_count() == 0);
  CHECK(code_of([] { full_gaps(RarySequence({1}, 1), 2); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("gap structure invariants hold on every small sequence") {
  for (int n = 1; n <= 8; ++n) {
    for (const auto& s : oracle::all_sequences(3, n)) {
      const RarySequence seq(s, 3);
      const auto stats = symbol_stats(seq, 3);
      for (int m = 1; m <= 3; ++m) {
        const auto gs = full_gaps(seq, m);
        const int a_m = stats.count(m);
        CHECK(static_cast<int>(gs.gaps.size()) == std::max(a_m - 1, 0));
        CHECK(static_cast<int>(gs.open_gaps().size()) + gs.full_count() == std::max(a_m - 1, 0));
        for (int i = 1; i <= 3; ++i) {
          if (i == m) continue;
          int total = 0;
          int filled = 0;
          for (const auto& g : gs.gaps) {
            const int held = gs.occupancy(g.j, i);
            total += held;
            // Direct fullness check for symbol i.
            if (stats.count(i) > 0 && held >= 0.9 * stats.count(i)) ++filled;
          }
          CHECK(total <= stats.count(i));
          CHECK(filled <= 1);
        }
        for (const auto& g : gs.gaps) {
          bool expected_full = false;
          for (int i = 1; i <= 3; ++i) {
            if (i != m && stats.count(i) > 0 && gs.occupancy(g.j, i) >= 0.9 * stats.count(i)) expected_full = true;
          }
          CHECK(g.full == expected_full);
        }
      }
    }
  }
}

TEST_CASE("split examples") {
  const RarySequence s({2, 1, 2, 1, 2}, 2);
  CHECK(count_splits(s, 2, std::vector<int>{2}) == 1);
  CHECK(count_splits(s, 2, std::vector<int>{2, 4}) == 2);
  CHECK(count_splits(s, 2, std::vector<int>{}) == 0);
  const auto r = split_report(s, 2, std::vector<int>{2}, 2);
  CHECK(r.count == 3);
  CHECK(r.splits == 1);
  CHECK(r.full_gaps == 0);
  CHECK(r.common);
}

TEST_CASE("realizable relative positions number splits plus one") {
  for (int n = 1; n <= 7; ++n) {
    for (const auto& s : oracle::all_sequences(3, n)) {
      const RarySequence seq(s, 3);
      for (int L = 0; L <= 2; ++L) {
        for (const auto& t : value_indexed_occurrences(s, L)) {
          for (int m = L + 1; m <= 3; ++m) {
            if (oracle::positions_of(s, m).empty()) continue;
            CHECK(oracle::realizable_relative_positions(s, m, t) ==
                  static_cast<std::size_t>(count_splits(seq, m, t)) + 1);
          }
        }
      }
    }
  }
}

TEST_CASE("encode_seq examples") {
  const RarySequence s({1, 2, 1, 2}, 2);
  const auto a = encode_seq(s, Occurrence::value_indexed({3, 2}), 0.5);
  CHECK(a.prefix == std::vector<int>{3});
  REQUIRE(a.relpos.size() == 1);
  CHECK(a.relpos[0] == std::vector<bool>{true});
  CHECK(vals(decode_seq(s, a, 0.5).pattern) == std::vector<int>{2, 1});

  const auto b = encode_seq(s, Occurrence::value_indexed({1, 2}), 0.5);
  CHECK(b.prefix == std::vector<int>{1});
  CHECK(b.relpos[0] == std::vector<bool>{false});
  CHECK(vals(decode_seq(s, b, 0.5).pattern) == std::vector<int>{1, 2});

  const auto full = encode_seq(s, Occurrence::value_indexed({3, 2}), 0.1);
  CHECK(full.prefix == std::vector<int>{3, 2});
  CHECK(full.relpos.empty());

  const RarySequence one({1}, 1);
  CHECK(vals(decode_seq(one, encode_seq(one, Occurrence::value_indexed({1}), 0.5), 0.5).pattern) ==
        std::vector<int>{1});
}

TEST_CASE("encode_seq and decode_seq errors") {
  const RarySequence s({1, 2, 1, 2}, 2);
  CHECK(code_of([&] { encode_seq(s, Occurrence::value_indexed({2, 1}), 0.5); }) == ErrorCode::Domain);
  CHECK(code_of([&] { encode_seq(RarySequence({1, 2, 1}, 3), Occurrence::value_indexed({1, 2}), 0.5); }) ==
        ErrorCode::Domain);
  CHECK(code_of([&] { encode_seq(s, Occurrence::positional({1, 2}), 0.5); }) == ErrorCode::InvalidArgument);

  auto malformed = [&](SeqEncoding e) {
    CHECK(code_of([&] { decode_seq(s, e, 0.5); }) == ErrorCode::MalformedEncoding);
  };
  malformed({{2}, {{true}}});           // prefix index holds symbol 2
  malformed({{1, 2}, {}});              // wrong prefix length
  malformed({{1}, {{true, false}}});    // wrong vector length
  malformed({{3}, {}});                 // missing suffix vector
  // 2 must sit left of position 1: no occurrence of 2 does.
  malformed({{1}, {{true}}});
  // Inconsistent order: for k = 3, psi(3) says left of 1 but right of 2
  // while 2 is right of 1.
  const RarySequence t({1, 2, 3}, 3);
  CHECK(code_of([&] { decode_seq(t, SeqEncoding{{1, 2}, {{true, false}}}, 0.4); }) ==
        ErrorCode::MalformedEncoding);
}

TEST_CASE("sequence encodings round-trip and are injective (exhaustive, k <= 4)") {
  for (int k = 2; k <= 4; ++k) {
    const double c = k == 4 ? 0.5 : 0.4;
    const int max_n = k == 4 ? 8 : 7;
    for (int n = k; n <= max_n; ++n) {
      for (const auto& s : oracle::all_sequences(k, n)) {
        const RarySequence seq(s, k);
        std::map<std::vector<int>, SeqEncoding> first;  // pattern -> encoding of some occurrence
        std::map<SeqEncoding, std::vector<int>> owner;
        for (const auto& t : value_indexed_occurrences(s, k)) {
          const auto pi = pattern_of(t);
          const auto enc = encode_seq(seq, Occurrence::value_indexed(t), c);
          const auto dec = decode_seq(seq, enc, c);
          CHECK(vals(dec.pattern) == pi);
          CHECK(pattern_of(dec.positions) == pi);
          // No encoding is shared between different patterns.
          auto [it, inserted] = owner.try_emplace(enc, pi);
          if (!inserted) CHECK(it->second == pi);
          first.try_emplace(pi, enc);
        }
        const auto census = census_seq_encodings(seq, c);
        CHECK(census.distinct_patterns == first.size());
        CHECK(census.injective());
        CHECK(census.roundtrip_failures == 0);
      }
    }
  }
}

TEST_CASE("decode realizes patterns where per-symbol leftmost choices would fail") {
  // Symbol 2 at positions 2 and 4 around symbol 3 at position 3.
  const RarySequence s({1, 2, 3, 2}, 3);
  const auto occ = Occurrence::value_indexed({1, 4, 3});
  const auto enc = encode_seq(s, occ, 0.7);
  REQUIRE(enc.prefix == std::vector<int>{1});
  const auto dec = decode_seq(s, enc, 0.7);
  CHECK(vals(dec.pattern) == std::vector<int>{1, 3, 2});
  CHECK(dec.positions == std::vector<int>{1, 4, 3});
}

TEST_CASE("census budget") {
  CHECK(code_of([] { census_seq_encodings(construct_repeated_identity(6), 0.4, 1000); }) == ErrorCode::Budget);
}

TEST_CASE("restricting to a symbol subset") {
  const RarySequence s({4, 1, 3, 2, 4, 1}, 4);
  const auto r = restrict_to_symbols(s, std::vector<int>{4, 1});
  CHECK(r.alphabet() == 2);
  CHECK(std::vector<int>(r.values().begin(), r.values().end()) == std::vector<int>{2, 1, 2, 1});
  CHECK(code_of([&] { restrict_to_symbols(s, std::vector<int>{1, 1}); }) == ErrorCode::InvalidArgument);
  // Patterns of the restriction are patterns of the original.
  const auto sub = oracle::pattern_set({2, 1, 2, 1}, 2);
  const auto all = oracle::pattern_set({4, 1, 3, 2, 4, 1}, 2);
  CHECK(std::includes(all.begin(), all.end(), sub.begin(), sub.end()));
}

TEST_CASE("full-gap witness report") {
  const auto ri = construct_repeated_identity(300);
  const auto report = verify_fullgap_lemma(ri, 300);
  CHECK(report.applicable);
  CHECK(report.witnesses.size() == 300);
  CHECK(report.meets_bound);
  for (int m : {1, 150, 300}) CHECK(full_gaps(ri, m).full_count() == 0);

  const auto sparse = verify_fullgap_lemma(RarySequence({1, 2, 3}, 10), 10);
  CHECK_FALSE(sparse.applicable);
  CHECK(sparse.witnesses.empty());

  // A concentrated sequence at k = 10 with scaled thresholds: symbol 1
  // repeated, then the rest nested so that 1-gaps hold every other symbol.
  std::vector<int> v;
  for (int rep = 0; rep < 3; ++rep) {
    v.push_back(1);
    for (int m = 2; m <= 10; ++m) v.push_back(m);
  }
  const RarySequence nested(v, 10);
  SequenceThresholds th;
  th.common_fraction = 0.1;
  th.full_fraction = 0.3;
  const auto r = verify_fullgap_lemma(nested, 10, th);
  std::vector<int> expected;
  const auto stats = symbol_stats(nested, 10, 0.1);
  for (int m = 1; m <= 10; ++m) {
    if (!stats.is_common(m)) continue;
    int full = 0;
    const auto pos = oracle::positions_of(v, m);
    for (std::size_t j = 0; j + 1 < pos.size(); ++j) {
      bool is_full = false;
      for (int other = 1; other <= 10; ++other) {
        if (other == m) continue;
        int held = 0;
        for (int p : oracle::positions_of(v, other)) held += (p > pos[j] && p < pos[j + 1]) ? 1 : 0;
        if (held >= 0.3 * stats.count(other)) is_full = true;
      }
      full += is_full ? 1 : 0;
    }
    if (full < 0.3 * stats.count(m)) expected.push_back(m);
  }
  CHECK(r.witnesses == expected);
}

TEST_CASE("expected splits: exact value against enumeration, bound above it") {
  for (int n = 3; n <= 7; ++n) {
    for (const auto& s : oracle::all_sequences(3, n)) {
      const RarySequence seq(s, 3);
      bool all_present = true;
      for (int m = 1; m <= 3; ++m) all_present = all_present && !oracle::positions_of(s, m).empty();
      if (!all_present) continue;
      for (int L = 1; L <= 2; ++L) {
        const auto prefixes = value_indexed_occurrences(s, L);
        for (int m = L + 1; m <= 3; ++m) {
          double total = 0;
          for (const auto& t : prefixes) total += count_splits(seq, m, t);
          const double mean = total / static_cast<double>(prefixes.size());
          CHECK(exact_expected_splits(seq, m, L) == doctest::Approx(mean).epsilon(1e-12));
          CHECK(exact_expected_splits(seq, m, L) <= expected_splits_bound(seq, m, L) + 1e-12);
        }
      }
    }
  }
}

TEST_CASE("split simulation agrees with the exact mean and is deterministic") {
  const auto ri = construct_repeated_identity(300);
  const auto sim = simulate_splits(ri, 0.01, 200, 42, 1);
  CHECK(sim.prefix_length == 297);
  REQUIRE(sim.summary.size() == 3);
  for (const auto& s : sim.summary) {
    CHECK(s.count == 300);
    CHECK(std::abs(s.mean - s.exact_mean) < 5 * s.standard_error + 1e-9);
    CHECK(s.mean < s.bound);
  }
  const auto again = simulate_splits(ri, 0.01, 200, 42, 4);
  REQUIRE(again.rows.size() == sim.rows.size());
  for (std::size_t i = 0; i < sim.rows.size(); ++i) {
    CHECK(again.rows[i].splits == sim.rows[i].splits);
    CHECK(again.rows[i].trial == sim.rows[i].trial);
  }
  CHECK(code_of([] {
          Rng rng(1);
          sample_prefix(RarySequence({2, 2}, 2), 1, rng);
        }) == ErrorCode::Domain);
}
