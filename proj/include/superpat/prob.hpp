#pragma once

// Random index subsets, their gaps and widths, and the tail estimates that
// control how often many widths are large.

#include <cstdint>
#include <optional>
#include <vector>

#include "superpat/bigint.hpp"
#include "superpat/perm.hpp"
#include "superpat/random.hpp"
#include "superpat/tiny_log.hpp"

namespace superpat {

// Gaps a_0..a_k of an index subset of [n]: a_0 = t_1, a_i = t_{i+1} - t_i,
// a_k = n + 1 - t_k. Widths are b_i = a_{i-1} + a_i = t_{i+1} - t_{i-1}.
struct GapProfile {
  int n = 0;
  std::vector<int> gaps;

  int k() const noexcept { return static_cast<int>(gaps.size()) - 1; }
  int width(int i) const;
  // Widths at even i with 1 < i < k.
  std::vector<int> even_widths() const;
};

GapProfile gap_profile(const Occurrence& occ, int n);

GapProfile sample_composition(int n, int k, Rng& rng);
GapProfile sample_composition(int n, int k, std::uint64_t seed);

// Uniform point of the simplex {x >= 0, sum x = n + 1} built from i.i.d.
// rate-1 exponentials.
struct SimplexSample {
  std::vector<double> exponentials;  // xi_0..xi_k
  std::vector<double> coords;        // X_0..X_k
  std::vector<std::int64_t> floors;  // floor(X_i)
  std::vector<double> pair_sums;     // B_i = X_{i-1} + X_i for i = 1..k (index i-1)
};

SimplexSample sample_simplex(int n, int k, Rng& rng);
SimplexSample sample_simplex(int n, int k, std::uint64_t seed);

// P(Gamma(2,1) >= d) = e^{-d} (1 + d).
double width_survival(double d);
// Gamma(2,1) distribution function.
double gamma2_cdf(double x);

struct TailEstimate {
  double fraction = 0;
  double standard_error = 0;
  std::uint64_t widths = 0;
};

// Pooled fraction of even-index widths b_i >= d*n/k over uniform subsets.
TailEstimate empirical_width_tail(int n, int k, double d, std::uint64_t trials,
                                  std::uint64_t seed, int parallelism = 1);

struct WidthRow {
  std::uint64_t trial = 0;
  int index = 0;
  int width = 0;
  bool qualifies = false;
};

std::vector<WidthRow> simulate_widths(int n, int k, double d, std::uint64_t trials,
                                      std::uint64_t seed, int parallelism = 1);

struct CompositionRow {
  std::uint64_t trial = 0;
  int index = 0;
  int gap = 0;
};

std::vector<CompositionRow> simulate_compositions(int n, int k, std::uint64_t trials,
                                                  std::uint64_t seed, int parallelism = 1);

// Kolmogorov-Smirnov distance between the samples and Gamma(2,1).
double ks_distance_gamma2(std::vector<double> samples);

// Widths b_i/(n/k) pooled over trials, for distribution checks.
std::vector<double> scaled_widths(int n, int k, std::uint64_t trials, std::uint64_t seed,
                                  int parallelism = 1);

struct ShortfallEstimate {
  double probability = 0;
  double standard_error = 0;
};

// Fraction of trials in which fewer than c*k (real-valued) even-index widths
// reach d*n/k.
ShortfallEstimate width_shortfall_probability(int n, int k, double c, double d,
                                              std::uint64_t trials, std::uint64_t seed,
                                              int parallelism = 1);

// exp(-(k+1)(rho - 1 - ln rho)); the Chernoff bound for a sum of k+1
// exponentials deviating by the factor rho.
TinyLog chernoff_exp_sum(std::int64_t k, const Real& ratio);

// exp(-(p*N - t)^2 / (2 p N)) for Bin(N, p) <= t, requiring t < p*N.
TinyLog binomial_tail(const Real& trials_count, const Real& p, const Real& threshold);

struct TrivialBounds {
  std::int64_t n = 0;
  std::int64_t k = 0;
  BigInt binom_n_k;
  BigInt k_factorial;
  bool permutation_condition = false;  // C(n,k) >= k!
  std::optional<std::int64_t> r;
  std::optional<TinyLog> sequence_count;  // C(r,k) (n/k)^k
  std::optional<bool> sequence_condition;  // C(r,k) (n/k)^k >= k!
};

TrivialBounds trivial_bounds(std::int64_t n, std::int64_t k,
                             std::optional<std::int64_t> r = std::nullopt);

}  // namespace superpat
