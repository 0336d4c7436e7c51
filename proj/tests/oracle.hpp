#pragma once

// Brute-force reference implementations. They share no code with the library
// and favour obviousness over speed.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <set>
#include <vector>

namespace oracle {

// Rank of each entry among the entries: the order-isomorphic permutation.
inline std::vector<int> standardize(const std::vector<int>& v) {
  std::vector<int> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    int smaller = 0;
    for (int x : v) smaller += x < v[i] ? 1 : 0;
    out[i] = smaller + 1;
  }
  return out;
}

inline bool distinct(const std::vector<int>& v) {
  return std::set<int>(v.begin(), v.end()).size() == v.size();
}

// Calls f with each k-subset of positions 1..n (increasing), by bitmask.
inline void for_each_subset(int n, int k, const std::function<void(const std::vector<int>&)>& f) {
  for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
    if (__builtin_popcount(mask) != k) continue;
    std::vector<int> idx;
    for (int i = 0; i < n; ++i) {
      if (mask & (1U << i)) idx.push_back(i + 1);
    }
    f(idx);
  }
}

inline std::vector<int> select(const std::vector<int>& host, const std::vector<int>& idx) {
  std::vector<int> out;
  for (int t : idx) out.push_back(host[static_cast<std::size_t>(t - 1)]);
  return out;
}

// Every pattern of length k witnessed by host (repeated symbols witness none).
inline std::set<std::vector<int>> pattern_set(const std::vector<int>& host, int k) {
  std::set<std::vector<int>> out;
  for_each_subset(static_cast<int>(host.size()), k, [&](const std::vector<int>& idx) {
    const auto sub = select(host, idx);
    if (distinct(sub)) out.insert(standardize(sub));
  });
  return out;
}

// All occurrences of pi, in lexicographic order (bitmask order is not lex,
// so collect and sort).
inline std::vector<std::vector<int>> occurrences(const std::vector<int>& host,
                                                 const std::vector<int>& pi) {
  std::vector<std::vector<int>> out;
  for_each_subset(static_cast<int>(host.size()), static_cast<int>(pi.size()),
                  [&](const std::vector<int>& idx) {
                    const auto sub = select(host, idx);
                    if (distinct(sub) && standardize(sub) == pi) out.push_back(idx);
                  });
  std::sort(out.begin(), out.end());
  return out;
}

// S_k in lexicographic order, which is the Lehmer-rank order.
inline std::vector<std::vector<int>> all_permutations(int k) {
  std::vector<int> p(static_cast<std::size_t>(k));
  std::iota(p.begin(), p.end(), 1);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// Every sequence in [r]^n.
inline std::vector<std::vector<int>> all_sequences(int r, int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> s(static_cast<std::size_t>(n), 1);
  while (true) {
    out.push_back(s);
    int i = n - 1;
    while (i >= 0 && s[static_cast<std::size_t>(i)] == r) s[static_cast<std::size_t>(i--)] = 1;
    if (i < 0) break;
    ++s[static_cast<std::size_t>(i)];
  }
  return out;
}

inline std::vector<int> positions_of(const std::vector<int>& seq, int m) {
  std::vector<int> out;
  for (std::size_t p = 0; p < seq.size(); ++p) {
    if (seq[p] == m) out.push_back(static_cast<int>(p) + 1);
  }
  return out;
}

// Distinct vectors ([s < t_i])_i over occurrences s of symbol m.
inline std::size_t realizable_relative_positions(const std::vector<int>& seq, int m,
                                                 const std::vector<int>& prefix) {
  std::set<std::vector<bool>> seen;
  for (int s : positions_of(seq, m)) {
    std::vector<bool> psi;
    for (int t : prefix) psi.push_back(s < t);
    seen.insert(psi);
  }
  return seen.size();
}

inline std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

inline std::uint64_t factorial(int k) {
  std::uint64_t r = 1;
  for (int i = 2; i <= k; ++i) r *= static_cast<std::uint64_t>(i);
  return r;
}

}  // namespace oracle
