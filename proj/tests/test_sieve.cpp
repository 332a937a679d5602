#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "qflab/sieve.hpp"

using namespace qflab;

namespace {

std::int64_t brute_sieved_sum(const QuadraticForm& f, std::int64_t lo, std::int64_t hi, std::int64_t z) {
  std::int64_t total = 0;
  for (std::int64_t n = lo; n <= hi; ++n) {
    bool coprime = true;
    for (std::int64_t p = 2; p <= z; ++p)
      if (oracle::is_prime(p) && n % p == 0) coprime = false;
    if (coprime) total += oracle::rf(f, n);
  }
  return total;
}

}  // namespace

TEST(SelbergJ, Examples) {
  const QuadraticForm f(1, 0, 1);
  EXPECT_EQ(selberg_J(f, 2), Rational(1));
  EXPECT_EQ(selberg_J(f, 3), Rational(2));
}

TEST(SelbergJ, NondecreasingInZ) {
  const QuadraticForm f(1, 0, 1);
  Rational prev(0);
  for (int z = 2; z <= 30; ++z) {
    const auto J = selberg_J(f, z);
    ASSERT_GE(J, prev) << z;
    prev = J;
  }
}

TEST(SieveSetup, WeightsFiniteForPrimitiveForms) {
  for (std::int64_t D = 3; D <= 400; ++D) {
    if (!is_valid_discriminant(D)) continue;
    for (const auto& f : enumerate_reduced_forms(D).forms) {
      const SieveSetup setup(f, 30);
      for (const auto p : setup.primes()) ASSERT_LT(setup.density().g_prime(p), 1) << to_string(f) << " p=" << p;
    }
  }
  try {
    (void)SieveSetup(QuadraticForm(1, 0, 1), 1.5);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::invalid_argument);
  }
}

TEST(SieveBound, ExceedsExactSievedSum) {
  const QuadraticForm f(1, 0, 1);
  const auto b = sieve_upper_bound(f, 1e4, 1e3, 5);
  const auto exact = sieved_sum_exact(f, 1e4, 1e3, 5);
  EXPECT_EQ(exact, brute_sieved_sum(f, 9001, 10000, 5));
  EXPECT_GE(b.bound, static_cast<double>(exact));
  EXPECT_DOUBLE_EQ(b.bound, b.main + b.error_sum);
}

TEST(SieveBound, DegenerateSieve) {
  const QuadraticForm f(1, 0, 1);
  const double x = 1e4, y = 1e3;
  const auto b = sieve_upper_bound(f, x, y, 2);
  const double main = 2 * pi * y / 2.0;
  const double E1 = static_cast<double>(congruence_sum_interval(f, 1, x - y, x)) - main;
  EXPECT_EQ(b.J, Rational(1));
  EXPECT_NEAR(b.main, main, 1e-9);
  EXPECT_NEAR(b.bound, main + std::abs(E1), 1e-9);
}

TEST(SieveBound, MainTermShrinksWithMoreInformation) {
  const QuadraticForm f(1, 0, 1);
  EXPECT_LE(sieve_upper_bound(f, 1e4, 1e3, 7).main, sieve_upper_bound(f, 1e4, 1e3, 5).main);
}

TEST(SieveBound, SoundOnRandomTuples) {
  std::mt19937_64 rng(21);
  const std::vector<QuadraticForm> forms = {QuadraticForm(1, 0, 1), QuadraticForm(1, 1, 1), QuadraticForm(2, 1, 3),
                                            QuadraticForm(1, 1, 6), QuadraticForm(3, 2, 7), QuadraticForm(1, 0, 27)};
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 40; ++i) {
    const auto& f = forms[static_cast<std::size_t>(i) % forms.size()];
    const double x = std::floor(100 + u(rng) * 2e4);
    const double y = std::max(1.0, std::floor(u(rng) * x / 2));
    const double z = 2 + 13 * u(rng);
    const auto b = sieve_upper_bound(f, x, y, z);
    const auto exact = sieved_sum_exact(f, x, y, z);
    ASSERT_GE(b.bound, static_cast<double>(exact)) << to_string(f) << " " << x << " " << y << " " << z;
    if (i < 10) {
      const auto z_int = static_cast<std::int64_t>(std::floor(z));
      ASSERT_EQ(exact, brute_sieved_sum(f, static_cast<std::int64_t>(x - y) + 1, static_cast<std::int64_t>(x), z_int));
    }
  }
}

TEST(SieveBound, WeightedPrimeCountBelowSievedSum) {
  const QuadraticForm f(1, 0, 1);
  const double x = 1e5, y = 1e4;
  const double w_over_delta = unit_count(f.D()) / to_double(delta_f(f));
  for (double z : {5.0, 10.0, 20.0}) {
    const double lhs = w_over_delta * static_cast<double>(pi_f(f, x) - pi_f(f, x - y));
    const double rhs = static_cast<double>(sieved_sum_exact(f, x, y, z)) +
                       w_over_delta * static_cast<double>(primes_up_to(static_cast<std::uint64_t>(z)).size());
    EXPECT_LE(lhs, rhs) << z;
  }
}

TEST(PiF, Examples) {
  EXPECT_EQ(pi_f(QuadraticForm(1, 0, 1), 10), 2);
  EXPECT_EQ(pi_f(QuadraticForm(1, 0, 1), 20), 4);
  const auto ps = represented_primes(QuadraticForm(1, 0, 27), 2, 31);
  EXPECT_NE(std::find(ps.begin(), ps.end(), 31u), ps.end());
  EXPECT_EQ(represented_primes(QuadraticForm(1, 0, 1), 2, 20), (std::vector<std::uint64_t>{2, 5, 13, 17}));
}

TEST(PiF, MatchesPerPrimeRepresentationTest) {
  const auto primes = primes_up_to(10000);
  for (std::int64_t D = 3; D <= 100; ++D) {
    if (!is_valid_discriminant(D)) continue;
    for (const auto& f : enumerate_reduced_forms(D).forms) {
      std::int64_t count = 0;
      for (const auto p : primes)
        if (rf(f, static_cast<std::int64_t>(p)) > 0) ++count;
      ASSERT_EQ(pi_f(f, 10000), count) << to_string(f);
    }
  }
}

TEST(PiF, WindowIsDifference) {
  const QuadraticForm f(2, 1, 3);
  EXPECT_EQ(pi_f_window(f, 5000, 9000), pi_f(f, 9000) - pi_f(f, 5000));
}

TEST(BrunTitchmarsh, Case1Example) {
  const auto c = bt_theoretical_bound(QuadraticForm(1, 0, 1), 1e18, 1e8, BtVariant::theorem2_case1, 0.01);
  EXPECT_NEAR(c.theta, 0.8511, 5e-4);
  EXPECT_NEAR(c.constant, 26.87, 0.02);
}

TEST(BrunTitchmarsh, ConstantsInsideWindowsWhenInRange) {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const QuadraticForm f(1, 0, 1);
  int hits1 = 0, hits2 = 0;
  for (int i = 0; i < 4000; ++i) {
    const double lx = 10 + 300 * u(rng);
    const double ly = lx * (0.3 + 0.35 * u(rng));
    const double eps = 0.001 + 0.048 * u(rng);
    const auto c1 = bt_theoretical_bound(f, std::exp(lx), std::exp(ly), BtVariant::theorem2_case1, eps);
    if (c1.range_ok) {
      ++hits1;
      ASSERT_GT(c1.constant, 16.0);
      ASSERT_LT(c1.constant, 16.0 / (9 * eps));
    }
    const auto c2 = bt_theoretical_bound(f, std::exp(lx), std::exp(ly), BtVariant::theorem2_case2, eps);
    if (c2.range_ok) {
      ++hits2;
      ASSERT_GT(c2.constant, 12.0);
      ASSERT_LE(c2.constant, 672.0 / 11 + 1e-9);
    }
  }
  EXPECT_GT(hits1, 100);
  EXPECT_GT(hits2, 100);
}

TEST(BrunTitchmarsh, OutOfRangeIsFlaggedNotRejected) {
  const auto c = bt_theoretical_bound(QuadraticForm(1, 0, 1), 1e6, 10, BtVariant::theorem2_case1, 0.01);
  EXPECT_FALSE(c.range_ok);
  EXPECT_TRUE(std::isfinite(c.constant));
  EXPECT_THROW(bt_theoretical_bound(QuadraticForm(1, 0, 1), 1e6, 1e3, BtVariant::theorem2_case1, 0.1), Error);
  EXPECT_THROW(bt_theoretical_bound(QuadraticForm(3, 1, 2), 1e6, 1e3, BtVariant::theoremA, 0.1), Error);
}

TEST(CorBrun, Examples) {
  const double v = cor_brun_bound(QuadraticForm(1, 0, 1), 1e6);
  EXPECT_NEAR(v, 14000 / std::log(1e6), 1e-9);
  EXPECT_NEAR(v, 1013.3, 0.1);
  // D = 23: delta_f = 1/2 as for the circle, but h(-23) = 3.
  EXPECT_NEAR(cor_brun_bound(QuadraticForm(1, 1, 6), 1e6), v / 3, 1e-9);
  for (double x : {1e8, 1e12, 1e16}) {
    const double ratio = cor_brun_bound(QuadraticForm(1, 0, 1), 4 * x) / cor_brun_bound(QuadraticForm(1, 0, 1), x);
    EXPECT_LT(ratio, 2.0);
    EXPECT_GT(ratio, 2.0 * std::log(x) / std::log(4 * x) - 1e-12);
  }
  EXPECT_THROW(cor_brun_bound(QuadraticForm(1, 0, 1), 2), Error);
}

TEST(CorBrun, EmpiricalShortIntervalCount) {
  const QuadraticForm f(1, 0, 1);
  for (double x : {1e6, 1e7, 1e8}) {
    const auto count = pi_f_window(f, x - std::sqrt(x), x);
    EXPECT_LE(static_cast<double>(count), 1.5 * cor_brun_bound(f, x)) << x;
  }
}

TEST(GapScan, FirstRecordsAndChain) {
  const auto scan = prime_gap_scan(QuadraticForm(1, 0, 1), 100);
  ASSERT_GE(scan.records.size(), 3u);
  EXPECT_EQ(scan.records[0].p_n, 2u);
  EXPECT_EQ(scan.records[0].p_next, 5u);
  EXPECT_EQ(scan.records[1].p_n, 5u);
  EXPECT_EQ(scan.records[1].p_next, 13u);
  EXPECT_EQ(scan.records[2].p_n, 13u);
  EXPECT_EQ(scan.records[2].p_next, 17u);
  for (std::size_t i = 0; i + 1 < scan.records.size(); ++i) EXPECT_EQ(scan.records[i].p_next, scan.records[i + 1].p_n);
  for (const auto& r : scan.records) {
    const double p = static_cast<double>(r.p_n);
    EXPECT_DOUBLE_EQ(r.normalized_gap, static_cast<double>(r.gap()) / (std::sqrt(p) * std::log(p)));
  }
}

TEST(GapScan, CircleBelowCramerConstant) {
  const auto scan = prime_gap_scan(QuadraticForm(1, 0, 1), 1e6);
  ASSERT_TRUE(scan.max_record.has_value());
  EXPECT_GE(scan.max_record->p_n, kMinGapPrime);
  EXPECT_LT(scan.max_record->normalized_gap, 1.837);
  for (const auto& r : scan.records) {
    if (r.p_n >= kMinGapPrime) {
      EXPECT_LE(r.normalized_gap, scan.max_record->normalized_gap);
    }
  }
}

TEST(GapScan, InsufficientData) {
  try {
    (void)prime_gap_scan(QuadraticForm(1, 0, 1), 4);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::insufficient_data);
  }
}
