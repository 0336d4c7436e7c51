#include "superpat/perm_encoding.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

#include "superpat/error.hpp"

namespace superpat {

void EncodingParams::validate() const {
  if (!(c > 0 && c < 1)) fail(ErrorCode::Domain, "width-count fraction c must lie in (0,1)");
  if (!(d > 0)) fail(ErrorCode::Domain, "width multiplier d must be positive");
  if (k < 1) fail(ErrorCode::Domain, "pattern length k must be >= 1");
  if (k % 2 == 0) fail(ErrorCode::Domain, "widths are defined for odd k only");
  if (n < k) fail(ErrorCode::Domain, "host length n must be >= k");
}

int EncodingParams::value_slot_count() const {
  // c*k is computed in binary floating point (0.2*5 may land a hair under 1).
  return static_cast<int>(std::floor(c * k + 1e-9));
}

int WidthProfile::width_at(int index) const {
  for (const auto& w : widths) {
    if (w.index == index) return w.value;
  }
  fail(ErrorCode::InvalidArgument, "no width at index " + std::to_string(index));
}

WidthProfile compute_widths(const Occurrence& occ, const EncodingParams& params) {
  params.validate();
  if (occ.mode != OccurrenceMode::PositionOrdered) {
    fail(ErrorCode::InvalidArgument, "widths need a position-ordered occurrence");
  }
  if (occ.size() != params.k) {
    fail(ErrorCode::InvalidArgument, "occurrence size differs from k");
  }
  validate_occurrence(occ, params.n);
  WidthProfile profile;
  profile.threshold = params.threshold();
  const auto& t = occ.indices;
  for (int i = 2; i < params.k; i += 2) {
    const int b = t[static_cast<std::size_t>(i)] - t[static_cast<std::size_t>(i - 2)];
    profile.widths.push_back({i, b});
    if (params.qualifies(b)) profile.qualifying.push_back(i);
  }
  return profile;
}

std::optional<std::vector<int>> select_value_indices(const WidthProfile& profile,
                                                     const EncodingParams& params) {
  const auto want = static_cast<std::size_t>(params.value_slot_count());
  if (want == 0 || profile.qualifying.size() < want) return std::nullopt;
  return std::vector<int>(profile.qualifying.begin(),
                          profile.qualifying.begin() + static_cast<std::ptrdiff_t>(want));
}

namespace {

void check_host(const Permutation& host, const EncodingParams& params) {
  params.validate();
  if (host.size() != params.n) {
    fail(ErrorCode::InvalidArgument, "host length differs from params.n");
  }
}

[[noreturn]] void malformed(const std::string& why) {
  fail(ErrorCode::MalformedEncoding, why);
}

Permutation decode_mixed(const Permutation& host, const MixedEncoding& enc,
                         const EncodingParams& params) {
  const int k = params.k;
  const auto& I = enc.value_indices;
  if (static_cast<int>(I.size()) != params.value_slot_count() || I.empty()) {
    malformed("value-index set must hold exactly floor(ck) entries");
  }
  for (std::size_t j = 0; j < I.size(); ++j) {
    if (I[j] % 2 != 0 || I[j] < 2 || I[j] >= k) malformed("value indices must be even, 1<i<k");
    if (j > 0 && I[j - 1] >= I[j]) malformed("value indices must be ascending");
  }
  if (enc.kept.size() != static_cast<std::size_t>(k) - I.size()) {
    malformed("kept index count must be k - |I|");
  }
  for (std::size_t j = 0; j < enc.kept.size(); ++j) {
    if (enc.kept[j] < 1 || enc.kept[j] > params.n) malformed("kept index out of range");
    if (j > 0 && enc.kept[j - 1] >= enc.kept[j]) malformed("kept indices must increase");
  }
  if (enc.relvals.size() != I.size()) malformed("one relative value per value index");
  std::vector<bool> used(static_cast<std::size_t>(k) + 1, false);
  for (int v : enc.relvals) {
    if (v < 1 || v > k) malformed("relative value out of 1..k");
    if (used[static_cast<std::size_t>(v)]) malformed("relative values must be distinct");
    used[static_cast<std::size_t>(v)] = true;
  }

  // Place kept indices back at their slots; odd slots are always kept, so
  // the widths of the slots in I are recoverable and must still select I.
  std::vector<int> slot_index(static_cast<std::size_t>(k) + 1, 0);
  std::vector<bool> in_I(static_cast<std::size_t>(k) + 1, false);
  for (int i : I) in_I[static_cast<std::size_t>(i)] = true;
  std::size_t next = 0;
  for (int i = 1; i <= k; ++i) {
    if (!in_I[static_cast<std::size_t>(i)]) slot_index[static_cast<std::size_t>(i)] = enc.kept[next++];
  }
  std::vector<int> qualifying;
  for (int i = 2; i < k; i += 2) {
    const int b = slot_index[static_cast<std::size_t>(i + 1)] - slot_index[static_cast<std::size_t>(i - 1)];
    if (in_I[static_cast<std::size_t>(i)] && b < 2) malformed("no room for an index inside a width");
    if (params.qualifies(b)) qualifying.push_back(i);
  }
  qualifying.resize(std::min(qualifying.size(), I.size()));
  if (qualifying != I) malformed("value indices are not the selection implied by the odd entries");

  // The values not named in relvals go to the kept slots in the order that
  // the host induces on the kept indices.
  std::vector<int> remaining;
  for (int v = 1; v <= k; ++v) {
    if (!used[static_cast<std::size_t>(v)]) remaining.push_back(v);
  }
  std::vector<std::size_t> order(enc.kept.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return host.at(enc.kept[a]) < host.at(enc.kept[b]);
  });
  std::vector<int> kept_values(enc.kept.size());
  for (std::size_t r = 0; r < order.size(); ++r) kept_values[order[r]] = remaining[r];

  std::vector<int> pi(static_cast<std::size_t>(k));
  std::size_t kept_pos = 0;
  std::size_t rel_pos = 0;
  for (int i = 1; i <= k; ++i) {
    pi[static_cast<std::size_t>(i - 1)] =
        in_I[static_cast<std::size_t>(i)] ? enc.relvals[rel_pos++] : kept_values[kept_pos++];
  }
  return Permutation(std::move(pi));
}

}  // namespace

PermEncoding encode_perm(const Permutation& host, const Occurrence& occ,
                         const EncodingParams& params) {
  check_host(host, params);
  const auto profile = compute_widths(occ, params);
  const auto chosen = select_value_indices(profile, params);
  if (!chosen) return IndexEncoding{occ.indices};

  const auto pi = extract_pattern(host.values(), occ);
  MixedEncoding enc;
  enc.value_indices = *chosen;
  std::size_t next = 0;
  for (int i = 1; i <= params.k; ++i) {
    if (next < chosen->size() && (*chosen)[next] == i) {
      enc.relvals.push_back(pi.at(i));
      ++next;
    } else {
      enc.kept.push_back(occ.indices[static_cast<std::size_t>(i - 1)]);
    }
  }
  return enc;
}

Permutation decode_perm(const Permutation& host, const PermEncoding& enc,
                        const EncodingParams& params) {
  check_host(host, params);
  if (const auto* full = std::get_if<IndexEncoding>(&enc)) {
    if (static_cast<int>(full->indices.size()) != params.k) {
      malformed("index encoding must list exactly k indices");
    }
    auto occ = Occurrence::positional(full->indices);
    try {
      validate_occurrence(occ, params.n);
    } catch (const Error& e) {
      malformed(e.what());
    }
    return extract_pattern(host.values(), occ);
  }
  return decode_mixed(host, std::get<MixedEncoding>(enc), params);
}

EncodingCensus census_encodings(const Permutation& host, const EncodingParams& params,
                                const CensusOptions& options, bool verify_every_occurrence) {
  check_host(host, params);
  const int n = params.n;
  const int k = params.k;
  if (k > kMaxRankedLength) fail(ErrorCode::Capacity, "encoding census supports k <= 20");
  check_enumeration_budget(n, k, options.budget);

  struct WorkerState {
    std::unordered_map<std::uint64_t, std::vector<int>> first_occurrence;
    std::uint64_t checked = 0;
    std::uint64_t failures = 0;
  };
  const auto ranges = detail::partition_by_largest(n, k, options.parallelism);
  std::vector<WorkerState> states(ranges.size());
  const auto values = host.values();

  detail::run_partitioned(n, k, options.parallelism, [&](std::size_t w, auto range) {
    auto& state = states[w];
    std::vector<int> vals(static_cast<std::size_t>(k));
    detail::for_each_subset(range, k, [&](std::span<const int> subset) {
      for (std::size_t i = 0; i < subset.size(); ++i) {
        vals[i] = values[static_cast<std::size_t>(subset[i] - 1)];
      }
      const std::uint64_t r = rank_of_values(vals);
      auto [it, inserted] = state.first_occurrence.try_emplace(r, subset.begin(), subset.end());
      if (!inserted && std::lexicographical_compare(subset.begin(), subset.end(),
                                                    it->second.begin(), it->second.end())) {
        it->second.assign(subset.begin(), subset.end());
      }
      if (verify_every_occurrence) {
        ++state.checked;
        const auto occ = Occurrence::positional({subset.begin(), subset.end()});
        const auto decoded = decode_perm(host, encode_perm(host, occ, params), params);
        if (rank_pattern(decoded).value != r) ++state.failures;
      }
    });
  });

  std::map<std::uint64_t, std::vector<int>> canonical;
  EncodingCensus census;
  for (auto& state : states) {
    census.occurrences_checked += state.checked;
    census.roundtrip_failures += state.failures;
    for (auto& [r, occ] : state.first_occurrence) {
      auto [it, inserted] = canonical.try_emplace(r, occ);
      if (!inserted && occ < it->second) it->second = occ;
    }
  }
  std::set<PermEncoding> encodings;
  for (const auto& [r, occ] : canonical) {
    encodings.insert(encode_perm(host, Occurrence::positional(occ), params));
  }
  census.distinct_patterns = canonical.size();
  census.distinct_encodings = encodings.size();
  for (const auto& e : encodings) {
    (encoding_case(e) == 1 ? census.index_encodings : census.mixed_encodings) += 1;
  }
  return census;
}

LedgerReport audit_counting_ledger(const EncodingParams& params) {
  params.validate();
  const int n = params.n;
  const int k = params.k;
  check_enumeration_budget(n, k, kDefaultEnumerationBudget);

  LedgerReport report;
  report.n = n;
  report.k = k;
  const int slots = params.value_slot_count();
  report.width_bound = std::pow(params.threshold() - 1.0, slots);

  std::map<std::pair<std::vector<int>, std::vector<int>>, LedgerEntry> groups;
  detail::for_each_subset({k, n}, k, [&](std::span<const int> subset) {
    ++report.subsets;
    const auto occ = Occurrence::positional({subset.begin(), subset.end()});
    const auto profile = compute_widths(occ, params);
    const auto chosen = select_value_indices(profile, params);
    if (!chosen) return;
    ++report.mixed_subsets;
    std::vector<int> kept;
    std::size_t next = 0;
    for (int i = 1; i <= k; ++i) {
      if (next < chosen->size() && (*chosen)[next] == i) {
        ++next;
      } else {
        kept.push_back(subset[static_cast<std::size_t>(i - 1)]);
      }
    }
    auto [it, inserted] = groups.try_emplace({*chosen, kept});
    auto& entry = it->second;
    if (inserted) {
      entry.value_indices = *chosen;
      entry.kept = std::move(kept);
      entry.width_product = 1;
      for (int i : *chosen) {
        entry.width_product *= static_cast<std::uint64_t>(profile.width_at(i) - 1);
      }
    }
    ++entry.completions;
  });

  for (auto& [key, entry] : groups) {
    if (entry.completions < entry.width_product) report.completions_cover_product = false;
    if (static_cast<double>(entry.width_product) < report.width_bound) {
      report.product_meets_bound = false;
    }
    report.entries.push_back(std::move(entry));
  }
  return report;
}

}  // namespace superpat
