#include "superpat/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <thread>
#include <unordered_set>

#include "superpat/error.hpp"

namespace superpat {

std::uint64_t mix_seed(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) noexcept {
  return mix_seed(mix_seed(master) ^ (stream * 0xd1342543de82ef95ULL + 1));
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound <= 1) return 0;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x = engine_();
  while (x >= limit) x = engine_();
  return x % bound;
}

double Rng::open_unit() {
  // 53 random bits mapped to the midpoints of [0,1) cells.
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double Rng::exponential() { return -std::log(open_unit()); }

Permutation random_permutation(int n, Rng& rng) {
  if (n < 1) fail(ErrorCode::Domain, "permutation length must be >= 1");
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 1);
  for (std::size_t i = v.size() - 1; i > 0; --i) {
    std::swap(v[i], v[rng.below(i + 1)]);
  }
  return Permutation(std::move(v));
}

Permutation random_permutation(int n, std::uint64_t seed) {
  Rng rng(seed);
  return random_permutation(n, rng);
}

Occurrence random_subset(int n, int k, Rng& rng) {
  if (k < 0 || k > n) {
    fail(ErrorCode::Domain, "subset size k=" + std::to_string(k) + " exceeds n=" +
                                std::to_string(n));
  }
  // Floyd's algorithm: k draws, each subset equally likely.
  std::vector<int> chosen;
  chosen.reserve(static_cast<std::size_t>(k));
  std::unordered_set<int> seen;
  seen.reserve(static_cast<std::size_t>(k) * 2);
  for (int j = n - k + 1; j <= n; ++j) {
    const int t = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(j)));
    const int pick = seen.insert(t).second ? t : j;
    if (pick == j) seen.insert(j);
    chosen.push_back(pick);
  }
  std::sort(chosen.begin(), chosen.end());
  return Occurrence::positional(std::move(chosen));
}

Occurrence random_subset(int n, int k, std::uint64_t seed) {
  Rng rng(seed);
  return random_subset(n, k, rng);
}

void for_each_trial(std::uint64_t trials, int parallelism,
                    const std::function<void(std::uint64_t)>& body) {
  const auto workers = static_cast<std::uint64_t>(std::max(parallelism, 1));
  if (workers == 1 || trials < 2) {
    for (std::uint64_t t = 0; t < trials; ++t) body(t);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    for (std::uint64_t w = 0; w < workers; ++w) {
      const std::uint64_t first = trials * w / workers;
      const std::uint64_t last = trials * (w + 1) / workers;
      pool.emplace_back([&, w, first, last] {
        try {
          for (std::uint64_t t = first; t < last; ++t) body(t);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace superpat
