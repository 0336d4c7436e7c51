#pragma once

#include <cstdint>
#include <functional>
#include <random>

#include "superpat/perm.hpp"

namespace superpat {

// splitmix64 finalizer; used to spread seeds and derive per-stream seeds.
std::uint64_t mix_seed(std::uint64_t x) noexcept;

// Seed of stream `stream` under master seed `master`. Parallel experiments
// give trial i the stream derive_seed(seed, i), so output never depends on
// how trials are scheduled.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) noexcept;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(mix_seed(seed)) {}

  std::uint64_t next() { return engine_(); }

  // Uniform integer in [0, bound), bound >= 1. Rejection sampling keeps the
  // draw exactly uniform and independent of the standard library's
  // distribution implementations.
  std::uint64_t below(std::uint64_t bound);

  // Uniform in (0, 1); never returns 0 or 1.
  double open_unit();

  // Rate-1 exponential via -ln U.
  double exponential();

 private:
  std::mt19937_64 engine_;
};

Permutation random_permutation(int n, Rng& rng);
Permutation random_permutation(int n, std::uint64_t seed);

// Uniform size-k subset of [n] as a sorted positional occurrence.
Occurrence random_subset(int n, int k, Rng& rng);
Occurrence random_subset(int n, int k, std::uint64_t seed);

// Calls body(trial) for trial in [0, trials), split into contiguous blocks
// over `parallelism` threads. Bodies must only write trial-indexed state.
void for_each_trial(std::uint64_t trials, int parallelism,
                    const std::function<void(std::uint64_t)>& body);

}  // namespace superpat
