#include <doctest.h>

#include <cmath>
#include <map>
#include <random>

#include "oracle.hpp"
#include "superpat/error.hpp"
#include "superpat/prob.hpp"

using namespace superpat;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::Io;
}

bool digits_agree(const Real& a, const Real& b, int digits) {
  const Real scale = std::max<Real>(Real(1), std::max(abs(a), abs(b)));
  return abs(a - b) <= scale * pow(Real(10), -digits);
}

}  // namespace

TEST_CASE("gap profile of a subset") {
  const auto g = gap_profile(Occurrence::positional({2, 3, 7}), 8);
  CHECK(g.gaps == std::vector<int>{2, 1, 4, 2});
  CHECK(g.k() == 3);
  CHECK(g.width(1) == 3);
  CHECK(g.width(2) == 5);
  CHECK(g.even_widths() == std::vector<int>{5});
}

TEST_CASE("composition sampling") {
  for (int n = 1; n <= 6; ++n) {
    const auto g = sample_composition(n, n, 7);
    CHECK(g.gaps == std::vector<int>(static_cast<std::size_t>(n) + 1, 1));
  }
  CHECK(code_of([] { sample_composition(3, 4, 1); }) == ErrorCode::Domain);

  Rng rng(11);
  std::vector<double> sums(10, 0.0);
  const int draws = 100000;
  for (int t = 0; t < draws; ++t) {
    const auto g = sample_composition(100, 9, rng);
    int total = 0;
    for (std::size_t i = 0; i < g.gaps.size(); ++i) {
      CHECK(g.gaps[i] >= 1);
      total += g.gaps[i];
      sums[i] += g.gaps[i];
    }
    CHECK(total == 101);
    for (int i = 1; i <= 9; ++i) CHECK(g.width(i) >= 2);
  }
  for (double s : sums) CHECK(std::abs(s / draws - 10.1) < 0.1);
}

TEST_CASE("first gap marginal matches exact enumeration") {
  // For each (n, k), compare the a_0 distribution of the sampler with the
  // count over all subsets, via a chi-square statistic.
  for (auto [n, k] : {std::pair{8, 3}, std::pair{12, 4}, std::pair{20, 5}}) {
    std::map<int, double> exact;
    double subsets = 0;
    oracle::for_each_subset(n, k, [&](const std::vector<int>& t) {
      exact[t[0]] += 1;
      subsets += 1;
    });
    CHECK(subsets == static_cast<double>(oracle::binomial(n, k)));
    for (auto& [j, count] : exact) {
      CHECK(count == static_cast<double>(oracle::binomial(n - j, k - 1)));
      count /= subsets;
    }
    const int draws = 200000;
    std::map<int, int> seen;
    Rng rng(static_cast<std::uint64_t>(n * 100 + k));
    for (int t = 0; t < draws; ++t) ++seen[sample_composition(n, k, rng).gaps[0]];
    double chi2 = 0;
    for (const auto& [j, p] : exact) {
      const double expected = p * draws;
      const double diff = seen[j] - expected;
      chi2 += diff * diff / expected;
    }
    // Support size n - k + 1 <= 16, so df <= 15; 37.7 is the 0.999 quantile at df 15.
    CHECK(chi2 < 37.7);
    CHECK(seen.size() <= exact.size());
  }
}

TEST_CASE("simplex samples") {
  const int n = 100;
  const int k = 9;
  const auto one = sample_simplex(n, k, 3);
  double total = 0;
  for (double x : one.coords) total += x;
  CHECK(total == doctest::Approx(n + 1).epsilon(1e-12));
  for (double xi : one.exponentials) CHECK(xi > 0);
  for (std::size_t i = 0; i < one.coords.size(); ++i) {
    CHECK(one.floors[i] == static_cast<std::int64_t>(std::floor(one.coords[i])));
  }
  for (int i = 1; i <= k; ++i) {
    CHECK(one.pair_sums[static_cast<std::size_t>(i) - 1] ==
          doctest::Approx(one.coords[static_cast<std::size_t>(i) - 1] + one.coords[static_cast<std::size_t>(i)]));
  }

  const int draws = 100000;
  Rng rng(5);
  std::vector<double> sum(k + 1, 0), sum_sq(k + 1, 0), floor_sum(k + 1, 0), gap_sum(k + 1, 0);
  for (int t = 0; t < draws; ++t) {
    const auto s = sample_simplex(n, k, rng);
    const auto g = sample_composition(n, k, rng);
    for (int i = 0; i <= k; ++i) {
      sum[i] += s.coords[i];
      sum_sq[i] += s.coords[i] * s.coords[i];
      floor_sum[i] += static_cast<double>(s.floors[i]);
      gap_sum[i] += g.gaps[i];
    }
  }
  for (int i = 0; i <= k; ++i) {
    const double mean = sum[i] / draws;
    const double sd = std::sqrt(sum_sq[i] / draws - mean * mean);
    CHECK(std::abs(mean - 10.1) < 3 * sd / std::sqrt(draws));
    // Floors of simplex coordinates sit below composition gaps on average.
    CHECK(floor_sum[i] / draws <= gap_sum[i] / draws + 3 * sd / std::sqrt(draws));
  }
}

TEST_CASE("width survival") {
  CHECK(width_survival(0) == 1.0);
  CHECK(width_survival(2) == doctest::Approx(3 * std::exp(-2.0)));
  CHECK(width_survival(2) == doctest::Approx(0.406006).epsilon(1e-6));
  CHECK(width_survival(8.283) == doctest::Approx(2.3465e-3).epsilon(1e-4));
  CHECK(width_survival(8.283) > 2 * 0.00075);
  CHECK(code_of([] { width_survival(-0.1); }) == ErrorCode::Domain);
  for (double x : {0.0, 0.5, 1.0, 3.0, 10.0}) {
    CHECK(gamma2_cdf(x) + width_survival(x) == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("empirical width tail") {
  CHECK(empirical_width_tail(1000, 20, 0, 50, 1).fraction == 1.0);
  CHECK(empirical_width_tail(1000, 20, 21, 50, 1).fraction == 0.0);
  const auto t = empirical_width_tail(10000, 100, 2, 2000, 9, 1);
  CHECK(t.widths == 2000u * 49u);
  CHECK(std::abs(t.fraction - width_survival(2)) < 0.01);
  CHECK(t.standard_error > 0);
  const auto par = empirical_width_tail(10000, 100, 2, 2000, 9, 3);
  CHECK(par.fraction == t.fraction);
}

TEST_CASE("width simulation rows") {
  const auto rows = simulate_widths(50, 7, 1.5, 20, 3);
  CHECK(rows.size() == 20u * 3u);
  for (const auto& r : rows) {
    CHECK(r.index % 2 == 0);
    CHECK(r.qualifies == (r.width >= 1.5 * 50 / 7.0));
  }
  const auto comps = simulate_compositions(50, 7, 10, 3);
  CHECK(comps.size() == 10u * 8u);
  CHECK(simulate_compositions(50, 7, 10, 3, 4).size() == comps.size());
  const auto par = simulate_widths(50, 7, 1.5, 20, 3, 4);
  for (std::size_t i = 0; i < rows.size(); ++i) CHECK(par[i].width == rows[i].width);
}

TEST_CASE("Kolmogorov-Smirnov distance") {
  // Inverse-CDF-free Gamma(2,1) draws as sums of two exponentials.
  std::mt19937_64 gen(17);
  std::exponential_distribution<double> exp1(1.0);
  std::vector<double> g;
  for (int i = 0; i < 20000; ++i) g.push_back(exp1(gen) + exp1(gen));
  CHECK(ks_distance_gamma2(g) < 0.015);
  std::vector<double> e;
  for (int i = 0; i < 20000; ++i) e.push_back(exp1(gen));
  CHECK(ks_distance_gamma2(e) > 0.2);
  CHECK(ks_distance_gamma2({1.0}) == doctest::Approx(std::max(gamma2_cdf(1.0), 1 - gamma2_cdf(1.0))));
}

TEST_CASE("Chernoff bound for exponential sums") {
  CHECK(chernoff_exp_sum(10, Real(1)).log_magnitude() == 0);
  const Real ratio = Real("8.180") / Real("8.282");
  const auto per_unit = chernoff_exp_sum(0, ratio);
  CHECK(-per_unit.to_double() + 1 == doctest::Approx(7.65e-5).epsilon(1e-2));
  CHECK(per_unit.to_double() == doctest::Approx(0.9999235).epsilon(1e-7));
  CHECK(per_unit <= TinyLog::from_value(Real("0.999924")));
  Real prev = 0;
  for (const char* r : {"1.01", "1.1", "1.5", "3"}) {
    const Real rate = -chernoff_exp_sum(0, Real(r)).log_magnitude();
    CHECK(rate > prev);
    prev = rate;
  }
  prev = 0;
  for (const char* r : {"0.99", "0.9", "0.5", "0.1"}) {
    const Real rate = -chernoff_exp_sum(0, Real(r)).log_magnitude();
    CHECK(rate > prev);
    prev = rate;
  }
  CHECK(digits_agree(chernoff_exp_sum(9, ratio).log_magnitude(), 10 * per_unit.log_magnitude(), 40));
  CHECK(code_of([] { chernoff_exp_sum(1, Real(0)); }) == ErrorCode::Domain);
  CHECK(code_of([] { chernoff_exp_sum(1, Real(-2)); }) == ErrorCode::Domain);
}

TEST_CASE("binomial tail bound") {
  const Real d2("8.283");
  const Real p = exp(-d2) * (1 + d2);
  const Real c("0.00075");
  // Bin((k-1)/2, p) <= ck with k large: per-k rate (p/2 - c)^2 / p.
  const Real k("1e9");
  const auto tail = binomial_tail((k - 1) / 2, p, c * k);
  const Real per_k = -tail.log_magnitude() / k;
  CHECK(static_cast<double>(per_k) == doctest::Approx(7.63e-5).epsilon(2e-3));
  const Real asymptotic = (p / 2 - c) * (p / 2 - c) / p;
  CHECK(abs(per_k - asymptotic) < Real("1e-12"));
  CHECK(exp(-asymptotic) <= Real("0.999924"));
  CHECK(binomial_tail(Real(10), Real(1), Real(0)) < TinyLog::one());
  CHECK(digits_agree(binomial_tail(Real(10), Real(1), Real(0)).log_magnitude(), Real(-5), 40));
  CHECK(code_of([] { binomial_tail(Real(10), Real("0.5"), Real(5)); }) == ErrorCode::Domain);
  CHECK(code_of([] { binomial_tail(Real(10), Real(0), Real(-1)); }) == ErrorCode::Domain);
  CHECK(code_of([] { binomial_tail(Real(10), Real("1.5"), Real(1)); }) == ErrorCode::Domain);
}

TEST_CASE("TinyLog algebra") {
  std::mt19937_64 gen(23);
  std::uniform_real_distribution<double> mag(-800, 800);
  std::uniform_int_distribution<int> sgn(0, 1);
  auto draw = [&] { return TinyLog::from_log(Real(mag(gen)) / 3, sgn(gen) ? 1 : -1); };
  for (int i = 0; i < 500; ++i) {
    const auto x = draw();
    const auto y = draw();
    const auto z = draw();
    const auto back = (x * y) / y;
    CHECK(back.sign() == x.sign());
    CHECK(digits_agree(back.log_magnitude(), x.log_magnitude(), 30));
    if (x <= y && y <= z) CHECK(x <= z);
    if (x < y && y < z) CHECK(x < z);
    CHECK(((x < y) || (y < x) || (x == y)));
  }
  const auto a = TinyLog::parse("exp(-1000)");
  CHECK(a.sign() == 1);
  CHECK(a.log_magnitude() == -1000);
  CHECK(a.to_double() == 0.0);
  CHECK(TinyLog::parse("-2.5").to_double() == -2.5);
  CHECK(TinyLog::parse("0").is_zero());
  const auto almost_one = TinyLog::one() - TinyLog::parse("exp(-600)");
  CHECK(almost_one < TinyLog::one());
  CHECK(digits_agree(almost_one.log_magnitude() / exp(Real(-600)), Real(-1), 30));
  const auto sum = TinyLog::one_plus(TinyLog::parse("exp(-600)"));
  CHECK(sum > TinyLog::one());
  CHECK((TinyLog::from_double(3) + TinyLog::from_double(-3)).is_zero());
  CHECK(TinyLog::from_double(2).pow(Real(10)).to_double() == doctest::Approx(1024));
  CHECK(code_of([] { TinyLog::parse("exp(x)"); }) == ErrorCode::Parse);
  CHECK(code_of([] { TinyLog::parse(""); }) == ErrorCode::Parse);
}

TEST_CASE("trivial counting bounds") {
  const auto small = trivial_bounds(4, 3);
  CHECK(small.binom_n_k == 4);
  CHECK(small.k_factorial == 6);
  CHECK_FALSE(small.permutation_condition);
  const auto nine = trivial_bounds(9, 3);
  CHECK(nine.binom_n_k == 84);
  CHECK(nine.permutation_condition);
  for (int n : {1, 2, 50}) CHECK(trivial_bounds(n, 1).permutation_condition);
  // C(3,3) (9/3)^3 = 27 >= 6.
  const auto seq = trivial_bounds(9, 3, 3);
  REQUIRE(seq.sequence_condition.has_value());
  CHECK(*seq.sequence_condition);
  CHECK(seq.sequence_count->to_double() == doctest::Approx(27));
  // C(3,3) (4/3)^3 < 6.
  CHECK_FALSE(*trivial_bounds(4, 3, 3).sequence_condition);
  CHECK(code_of([] { trivial_bounds(3, 4); }) == ErrorCode::Domain);
  CHECK(code_of([] { trivial_bounds(9, 3, 2); }) == ErrorCode::Domain);
  // Exact big-integer arithmetic past 64 bits.
  CHECK(to_decimal(trivial_bounds(100, 50).binom_n_k) == "100891344545564193334812497256");
}

TEST_CASE("shortfall probability does not grow with k") {
  const double c = 0.00075;
  const double d = 8.180;
  ShortfallEstimate prev{1.0, 0.0};
  for (int k : {500, 1000, 2000}) {
    const int n = static_cast<int>(std::floor(k * k / std::exp(2.0)));
    const auto s = width_shortfall_probability(n, k, c, d, 10000, 31 + static_cast<std::uint64_t>(k), 1);
    MESSAGE("k=" << k << " P=" << s.probability << " se=" << s.standard_error);
    CHECK(s.probability <= prev.probability + 2 * std::hypot(s.standard_error, prev.standard_error));
    prev = s;
  }
}
