#include "superpat/prob.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "superpat/error.hpp"

namespace superpat {

namespace {

void require_sizes(int n, int k) {
  if (k < 1 || n < k) {
    fail(ErrorCode::Domain,
         "need 1 <= k <= n, got n=" + std::to_string(n) + " k=" + std::to_string(k));
  }
}

void require_trials(std::uint64_t trials) {
  if (trials < 1) fail(ErrorCode::Domain, "trials must be >= 1");
}

double width_threshold(int n, int k, double d) {
  return d * static_cast<double>(n) / static_cast<double>(k);
}

}  // namespace

int GapProfile::width(int i) const {
  if (i < 1 || i > k()) fail(ErrorCode::InvalidArgument, "width index out of range");
  return gaps[static_cast<std::size_t>(i - 1)] + gaps[static_cast<std::size_t>(i)];
}

std::vector<int> GapProfile::even_widths() const {
  std::vector<int> out;
  for (int i = 2; i < k(); i += 2) out.push_back(width(i));
  return out;
}

GapProfile gap_profile(const Occurrence& occ, int n) {
  if (occ.mode != OccurrenceMode::PositionOrdered) {
    fail(ErrorCode::InvalidArgument, "gaps need a position-ordered occurrence");
  }
  validate_occurrence(occ, n);
  GapProfile g;
  g.n = n;
  g.gaps.reserve(occ.indices.size() + 1);
  int prev = 0;
  for (int t : occ.indices) {
    g.gaps.push_back(t - prev);
    prev = t;
  }
  g.gaps.push_back(n + 1 - prev);
  return g;
}

GapProfile sample_composition(int n, int k, Rng& rng) {
  require_sizes(n, k);
  return gap_profile(random_subset(n, k, rng), n);
}

GapProfile sample_composition(int n, int k, std::uint64_t seed) {
  Rng rng(seed);
  return sample_composition(n, k, rng);
}

SimplexSample sample_simplex(int n, int k, Rng& rng) {
  if (n < 0 || k < 0) fail(ErrorCode::Domain, "n and k must be nonnegative");
  SimplexSample s;
  const auto parts = static_cast<std::size_t>(k) + 1;
  s.exponentials.resize(parts);
  for (auto& x : s.exponentials) x = rng.exponential();
  const double total = std::accumulate(s.exponentials.begin(), s.exponentials.end(), 0.0);
  const double scale = static_cast<double>(n + 1) / total;
  s.coords.resize(parts);
  s.floors.resize(parts);
  for (std::size_t i = 0; i < parts; ++i) {
    s.coords[i] = s.exponentials[i] * scale;
    s.floors[i] = static_cast<std::int64_t>(std::floor(s.coords[i]));
  }
  for (std::size_t i = 1; i < parts; ++i) s.pair_sums.push_back(s.coords[i - 1] + s.coords[i]);
  return s;
}

SimplexSample sample_simplex(int n, int k, std::uint64_t seed) {
  Rng rng(seed);
  return sample_simplex(n, k, rng);
}

double width_survival(double d) {
  if (!(d >= 0)) fail(ErrorCode::Domain, "width multiplier d must be >= 0");
  return std::exp(-d) * (1 + d);
}

double gamma2_cdf(double x) {
  if (x <= 0) return 0;
  return -std::expm1(-x) - x * std::exp(-x);
}

std::vector<WidthRow> simulate_widths(int n, int k, double d, std::uint64_t trials,
                                      std::uint64_t seed, int parallelism) {
  require_sizes(n, k);
  require_trials(trials);
  const double threshold = width_threshold(n, k, d);
  std::vector<std::vector<WidthRow>> per_trial(trials);
  for_each_trial(trials, parallelism, [&](std::uint64_t t) {
    const GapProfile g = sample_composition(n, k, derive_seed(seed, t));
    auto& rows = per_trial[t];
    for (int i = 2; i < k; i += 2) {
      const int b = g.width(i);
      rows.push_back({t, i, b, b >= threshold});
    }
  });
  std::vector<WidthRow> out;
  for (auto& rows : per_trial) out.insert(out.end(), rows.begin(), rows.end());
  return out;
}

TailEstimate empirical_width_tail(int n, int k, double d, std::uint64_t trials,
                                  std::uint64_t seed, int parallelism) {
  require_sizes(n, k);
  require_trials(trials);
  const double threshold = width_threshold(n, k, d);
  std::vector<std::uint32_t> hits(trials, 0);
  for_each_trial(trials, parallelism, [&](std::uint64_t t) {
    const GapProfile g = sample_composition(n, k, derive_seed(seed, t));
    for (int i = 2; i < k; i += 2) {
      if (g.width(i) >= threshold) ++hits[t];
    }
  });
  TailEstimate est;
  est.widths = trials * static_cast<std::uint64_t>((k - 1) / 2);
  if (est.widths == 0) return est;
  const std::uint64_t total = std::accumulate(hits.begin(), hits.end(), std::uint64_t{0});
  est.fraction = static_cast<double>(total) / static_cast<double>(est.widths);
  est.standard_error =
      std::sqrt(est.fraction * (1 - est.fraction) / static_cast<double>(est.widths));
  return est;
}

std::vector<CompositionRow> simulate_compositions(int n, int k, std::uint64_t trials,
                                                  std::uint64_t seed, int parallelism) {
  require_sizes(n, k);
  require_trials(trials);
  std::vector<std::vector<int>> per_trial(trials);
  for_each_trial(trials, parallelism, [&](std::uint64_t t) {
    per_trial[t] = sample_composition(n, k, derive_seed(seed, t)).gaps;
  });
  std::vector<CompositionRow> out;
  out.reserve(trials * static_cast<std::uint64_t>(k + 1));
  for (std::uint64_t t = 0; t < trials; ++t) {
    for (std::size_t i = 0; i < per_trial[t].size(); ++i) {
      out.push_back({t, static_cast<int>(i), per_trial[t][i]});
    }
  }
  return out;
}

std::vector<double> scaled_widths(int n, int k, std::uint64_t trials, std::uint64_t seed,
                                  int parallelism) {
  require_sizes(n, k);
  require_trials(trials);
  const double unit = static_cast<double>(n) / static_cast<double>(k);
  std::vector<std::vector<double>> per_trial(trials);
  for_each_trial(trials, parallelism, [&](std::uint64_t t) {
    const GapProfile g = sample_composition(n, k, derive_seed(seed, t));
    for (int b : g.even_widths()) per_trial[t].push_back(b / unit);
  });
  std::vector<double> out;
  for (auto& v : per_trial) out.insert(out.end(), v.begin(), v.end());
  return out;
}

double ks_distance_gamma2(std::vector<double> samples) {
  if (samples.empty()) fail(ErrorCode::Domain, "KS distance of an empty sample");
  std::sort(samples.begin(), samples.end());
  const double count = static_cast<double>(samples.size());
  double worst = 0;
  for (std::size_t j = 0; j < samples.size(); ++j) {
    const double f = gamma2_cdf(samples[j]);
    worst = std::max({worst, static_cast<double>(j + 1) / count - f,
                      f - static_cast<double>(j) / count});
  }
  return worst;
}

ShortfallEstimate width_shortfall_probability(int n, int k, double c, double d,
                                              std::uint64_t trials, std::uint64_t seed,
                                              int parallelism) {
  require_sizes(n, k);
  require_trials(trials);
  const double threshold = width_threshold(n, k, d);
  const double needed = c * static_cast<double>(k);
  std::vector<char> short_of(trials, 0);
  for_each_trial(trials, parallelism, [&](std::uint64_t t) {
    const GapProfile g = sample_composition(n, k, derive_seed(seed, t));
    int qualifying = 0;
    for (int i = 2; i < k; i += 2) {
      if (g.width(i) >= threshold) ++qualifying;
    }
    short_of[t] = qualifying < needed ? 1 : 0;
  });
  const auto hits = static_cast<double>(std::count(short_of.begin(), short_of.end(), 1));
  ShortfallEstimate est;
  est.probability = hits / static_cast<double>(trials);
  est.standard_error =
      std::sqrt(est.probability * (1 - est.probability) / static_cast<double>(trials));
  return est;
}

TinyLog chernoff_exp_sum(std::int64_t k, const Real& ratio) {
  if (ratio <= 0) fail(ErrorCode::Domain, "Chernoff ratio must be positive");
  if (k < 0) fail(ErrorCode::Domain, "k must be nonnegative");
  const Real rate = ratio - 1 - log(ratio);
  return TinyLog::from_log(-Real(k + 1) * rate);
}

TinyLog binomial_tail(const Real& trials_count, const Real& p, const Real& threshold) {
  if (!(p > 0 && p <= 1)) fail(ErrorCode::Domain, "p must lie in (0, 1]");
  if (trials_count <= 0) fail(ErrorCode::Domain, "trial count must be positive");
  const Real mean = p * trials_count;
  if (threshold >= mean) {
    fail(ErrorCode::Domain, "threshold must lie below the mean; the bound is vacuous");
  }
  const Real gap = mean - threshold;
  return TinyLog::from_log(-(gap * gap) / (2 * mean));
}

TrivialBounds trivial_bounds(std::int64_t n, std::int64_t k, std::optional<std::int64_t> r) {
  if (k < 1 || n < k) {
    fail(ErrorCode::Domain,
         "need 1 <= k <= n, got n=" + std::to_string(n) + " k=" + std::to_string(k));
  }
  TrivialBounds out;
  out.n = n;
  out.k = k;
  out.binom_n_k = binomial(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k));
  out.k_factorial = factorial(static_cast<std::uint64_t>(k));
  out.permutation_condition = out.binom_n_k >= out.k_factorial;
  if (r) {
    if (*r < k) fail(ErrorCode::Domain, "sequence bound needs k <= r");
    out.r = r;
    const BigInt binom_r_k =
        binomial(static_cast<std::uint64_t>(*r), static_cast<std::uint64_t>(k));
    const Real log_count =
        log(Real(binom_r_k)) + Real(k) * (log(Real(n)) - log(Real(k)));
    out.sequence_count = TinyLog::from_log(log_count);
    out.sequence_condition = *out.sequence_count >= TinyLog::from_value(Real(out.k_factorial));
  }
  return out;
}

}  // namespace superpat
