#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qflab/fourier.hpp"

using namespace qflab;

namespace {

const std::vector<double> kCramer{68, 5, 1};

/// int_0^X |g| with panels cut at the zeros of cos(2 pi x / lambda).
template <class G>
double abs_integral_to(G&& g, double lambda, double X) {
  double total = 0;
  double lo = 0;
  for (int m = 0;; ++m) {
    const double hi = std::min(X, lambda * (2 * m + 1) / 4.0);
    total += integrate_adaptive([&](double x) { return std::abs(g(x)); }, lo, hi, 1e-13).value;
    if (hi >= X) break;
    lo = hi;
  }
  return total;
}

/// The rational envelope S(x) = sum a_j / ((2j - 1)^2 - 16 x^2) of H.
double envelope(const std::vector<double>& a, double x) {
  double s = 0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double k = 2.0 * static_cast<double>(j) + 1.0;
    s += a[j] / (k * k - 16 * x * x);
  }
  return s;
}

/// Independent evaluation of J_A^+ for F(x) = H(x / lambda): ||F||_1 is
/// integrated in the x variable of F with the mean value 2/pi of |cos| for
/// the far tail, and the transform tails use F^(t) = lambda H^(lambda t)
/// with a fine Simpson rule in t.
double j_plus_from_scratch(const std::vector<double>& a, double lambda, double A) {
  const double X = 1500.0 * lambda;
  const BandlimitedFn fn(a, lambda);
  double l1 = abs_integral_to(fn, lambda, X);
  l1 += 2.0 / pi * integrate_adaptive([&](double x) { return std::abs(envelope(a, x / lambda)); }, X, 1e7, 1e-14).value;
  l1 *= 2;
  double tail = 0;
  if (lambda < 1) {
    const int n = 20000;
    const double lo = 1.0, hi = 1.0 / lambda, h = (hi - lo) / n;
    for (int i = 0; i <= n; ++i) {
      const double w = (i == 0 || i == n) ? 1 : (i % 2 ? 4 : 2);
      tail += w * std::max(0.0, fn.hat(lo + i * h));
    }
    tail *= 2 * h / 3;
  }
  return (fn(0) - A * tail) / l1;
}

}  // namespace

TEST(EvalH, Examples) {
  EXPECT_NEAR(eval_H(kCramer, 0), 68 + 5.0 / 9 + 1.0 / 25, 1e-12);
  EXPECT_NEAR(eval_H(kCramer, 0), 68.59556, 1e-5);
  EXPECT_NEAR(eval_H(kCramer, 0.25), 17 * pi, 1e-9);
  EXPECT_EQ(eval_H(kCramer, 0.3), eval_H(kCramer, -0.3));
}

TEST(EvalH, EvenAndContinuousAcrossPoles) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-20, 20);
  for (int i = 0; i < 100; ++i) {
    const double x = u(rng);
    EXPECT_EQ(eval_H(kCramer, x), eval_H(kCramer, -x));
  }
  for (double pole : {0.25, 0.75, 1.25})
    for (double d : {1e-3, 1e-4, 1e-5, 1e-7, 1e-9}) {
      const double mid = eval_H(kCramer, pole);
      EXPECT_NEAR(eval_H(kCramer, pole + d), mid, 2e3 * d) << pole << " " << d;
      EXPECT_NEAR(eval_H(kCramer, pole - d), mid, 2e3 * d) << pole << " " << d;
    }
}

TEST(HatH, InversionAtOrigin) {
  const double integral = integrate_adaptive([](double t) { return hat_H(kCramer, t); }, -1, 1, 1e-12).value;
  EXPECT_NEAR(integral, eval_H(kCramer, 0), 1e-8);
  EXPECT_NEAR(2 * hat_H_integral(kCramer, 1.0), eval_H(kCramer, 0), 1e-10);
}

TEST(HatH, ValueAtZeroIsIntegralOfH) {
  // Integer endpoints kill the leading boundary term of the tail, leaving O(X^-3).
  double direct = 0;
  for (int m = 0; m < 1000; ++m)
    direct += integrate_gl<20>([](double x) { return eval_H(kCramer, x); }, m, m + 0.5) +
              integrate_gl<20>([](double x) { return eval_H(kCramer, x); }, m + 0.5, m + 1.0);
  EXPECT_NEAR(hat_H(kCramer, 0), 2 * direct, 1e-8);
}

TEST(HatH, SupportedOnUnitInterval) {
  EXPECT_EQ(hat_H(kCramer, 1.05), 0.0);
  EXPECT_EQ(hat_H(kCramer, -3.0), 0.0);
  EXPECT_LT(std::abs(hat_H_quadrature(kCramer, 1.05)), 1e-9);
  EXPECT_LT(std::abs(hat_H_quadrature(kCramer, 1.5)), 1e-9);
  for (double d : {1e-3, 1e-6, 1e-9}) EXPECT_LT(std::abs(hat_H(kCramer, 1 - d)), 100 * d);
  const BandlimitedFn fn(kCramer, 0.9);
  EXPECT_EQ(fn.hat(1 / 0.9 + 0.01), 0.0);
}

TEST(HatH, ClosedFormMatchesQuadrature) {
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> u(-1, 1), ts(0, 0.95);
  std::uniform_int_distribution<int> len(1, 4);
  for (int i = 0; i < 200; ++i) {
    std::vector<double> a(static_cast<std::size_t>(len(rng)));
    for (auto& c : a) c = 50 * u(rng);
    const double t = ts(rng);
    ASSERT_NEAR(hat_H(a, t), hat_H_quadrature(a, t), 1e-8) << i << " t=" << t;
  }
}

TEST(HatH, QuadratureRejectsEdge) {
  try {
    (void)hat_H_quadrature(kCramer, 1.0);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::no_convergence);
  }
}

TEST(BandlimitedFn, Validation) {
  EXPECT_THROW(BandlimitedFn({0, 0}, 1.0), Error);
  EXPECT_THROW(BandlimitedFn({}, 1.0), Error);
  EXPECT_THROW(BandlimitedFn({1}, 0.0), Error);
  EXPECT_THROW(BandlimitedFn({1}, 1.3), Error);
  EXPECT_NO_THROW(BandlimitedFn({1}, 1.2));
}

TEST(FunctionalReport, CramerFunction) {
  const auto r = functional_report(cramer_function(), 28);
  EXPECT_GE(r.j_plus, 1.0889);
  EXPECT_NEAR(r.f_at_zero, 68.59556, 1e-5);
  EXPECT_LT(r.ratio(), 0.91833);
  const double certified = (r.l1_norm + r.l1_tail_bound) / (r.f_at_zero - 28 * r.tail_pos);
  EXPECT_LT(certified, 0.91833);
  EXPECT_GE(r.tail_abs, r.tail_pos);
  EXPECT_GE(r.tail_pos, 0);
  EXPECT_GE(r.j_plus, r.j_abs);
}

TEST(FunctionalReport, SmallARow) {
  const auto r = functional_report(BandlimitedFn({81, -69, 0}, 0.1), 1);
  EXPECT_NEAR(r.j_plus, 1.9602, 5e-4);
}

TEST(FunctionalReport, PublishedRowsReproduce) {
  const auto& rows = published_rows();
  ASSERT_EQ(rows.size(), 68u);
  for (std::size_t i = 0; i < rows.size(); i += 7) {
    const auto& row = rows[i];
    const auto r = functional_report(BandlimitedFn({row.coeffs.begin(), row.coeffs.end()}, row.lambda), row.A);
    EXPECT_NEAR(r.j_plus, row.c_plus, 5e-4) << "A=" << row.A;
  }
}

TEST(FunctionalReport, RejectsSmallA) { EXPECT_THROW(functional_report(cramer_function(), 0.5), Error); }

TEST(FunctionalReport, DilationCovariance) {
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int i = 0; i < 3; ++i) {
    const std::vector<double> a{60 + 10 * u(rng), 8 * u(rng), 3 * u(rng)};
    const auto profile = bandlimited_profile(a);
    const double h_l1 = 2 * abs_integral_to([&](double x) { return eval_H(a, x); }, 1.0, 300.0);
    for (double lambda : {0.5, 0.9, 1.0}) {
      const BandlimitedFn fn(a, lambda);
      const auto r = functional_report(fn, 10);
      EXPECT_DOUBLE_EQ(r.f_at_zero, eval_H(a, 0));
      EXPECT_NEAR(r.l1_norm, lambda * profile.l1, 1e-12 * r.l1_norm);
      const double f_l1 = 2 * abs_integral_to(fn, lambda, 300.0 * lambda);
      EXPECT_NEAR(f_l1, lambda * h_l1, 1e-8 * f_l1);
      const double scratch = j_plus_from_scratch(a, lambda, 10);
      EXPECT_NEAR(r.j_plus, scratch, 1e-6 * std::abs(scratch)) << lambda;
    }
  }
}

TEST(FunctionalReport, ScalingInvariance) {
  for (double s : {3.0, 0.7, 1e3}) {
    std::vector<double> scaled;
    for (double c : kCramer) scaled.push_back(s * c);
    const auto a = functional_report(BandlimitedFn(kCramer, 0.95), 20);
    const auto b = functional_report(BandlimitedFn(scaled, 0.95), 20);
    EXPECT_NEAR(a.j_plus, b.j_plus, 1e-10 * std::abs(a.j_plus));
    EXPECT_NEAR(a.j_abs, b.j_abs, 1e-10 * std::abs(a.j_abs));
  }
}

TEST(FunctionalReport, OrderingAndRange) {
  for (const auto& row : published_rows()) {
    if (row.A > 34.5) continue;
    const auto p = bandlimited_profile(std::vector<double>(row.coeffs.begin(), row.coeffs.end()), 1000);
    const auto r = report_from_profile(p, row.lambda, row.A);
    ASSERT_GE(r.j_plus, r.j_abs);
    ASSERT_LE(r.j_plus, 2.0);
    ASSERT_GE(r.j_plus, 1.0) << row.A;
  }
}

TEST(GapConstant, Examples) {
  const auto r = functional_report(cramer_function(), 28);
  EXPECT_LT(gap_constant(r, 0, 0.5, 1), 1.837);
  EXPECT_NEAR(gap_constant(r, 0, 0.5, 1), 2 * r.ratio(), 1e-12);
  EXPECT_LT(gap_constant(r, 0, 0.5, 3), 5.511);
  EXPECT_NEAR(gap_constant(r, 0, 0.5, 3), 3 * gap_constant(r, 0, 0.5, 1), 1e-12);
  EXPECT_NEAR(gap_constant(r, 0.5, 1.0, 1), 3 * r.ratio(), 1e-12);
  EXPECT_NEAR(gap_constant(cramer_function(), 28, 0, 0.5, 1), gap_constant(r, 0, 0.5, 1), 1e-12);
}

TEST(GapConstant, InadmissibleFunction) {
  try {
    (void)gap_constant(BandlimitedFn({1, -9}, 0.5), 28, 0, 0.5, 1);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::inadmissible);
  }
  const auto r = functional_report(cramer_function(), 28);
  EXPECT_THROW(gap_constant(r, -1, 0.5, 1), Error);
  EXPECT_THROW(gap_constant(r, 0, 0.3, 1), Error);
  EXPECT_THROW(gap_constant(r, 0, 0.5, 0), Error);
}

TEST(GreedySearch, MatchesTableWithinTolerance) {
  struct Case {
    double A;
    int terms;
    double target;
  };
  for (const auto& c : {Case{28, 3, 1.0889}, Case{10, 3, 1.1031}, Case{1, 2, 1.9602}}) {
    const auto res = greedy_search(c.A, c.terms);
    EXPECT_GE(res.report.j_plus, c.target - 5e-4) << "A=" << c.A;
    EXPECT_FALSE(res.budget_exhausted);
    EXPECT_EQ(res.fn.coeffs().size(), static_cast<std::size_t>(c.terms));
    EXPECT_GE(res.fn.lambda(), kLambdaMin);
    EXPECT_LE(res.fn.lambda(), kLambdaMax);
  }
}

TEST(GreedySearch, DeterministicAcrossThreadCounts) {
  SearchOptions one, many;
  one.threads = 1;
  many.threads = 4;
  one.budget = many.budget = 5;
  const auto a = greedy_search(28, 2, one);
  const auto b = greedy_search(28, 2, many);
  EXPECT_EQ(a.fn.coeffs(), b.fn.coeffs());
  EXPECT_EQ(a.fn.lambda(), b.fn.lambda());
  EXPECT_EQ(a.report.j_plus, b.report.j_plus);
}

TEST(GreedySearch, BudgetExhaustionFlagged) {
  SearchOptions opt;
  opt.budget = 1;
  const auto res = greedy_search(28, 3, opt);
  EXPECT_TRUE(res.budget_exhausted);
  EXPECT_GT(res.evaluations, 0);
}

TEST(GreedySearch, RejectsBadArguments) {
  EXPECT_THROW(greedy_search(0.5, 3), Error);
  EXPECT_THROW(greedy_search(10, 6), Error);
}

TEST(GaussPoly, GaussianIsFixedPoint) {
  const GaussPolyFn g({1.0});
  for (double t = -3; t <= 3; t += 0.05) {
    EXPECT_NEAR(g.hat(t).real(), std::exp(-pi * t * t), 1e-14);
    EXPECT_NEAR(g.hat(t).imag(), 0.0, 1e-14);
  }
}

TEST(GaussPoly, TransformMatchesDirectQuadrature) {
  std::mt19937_64 rng(34);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int deg = 0; deg <= 4; ++deg) {
    std::vector<double> p(static_cast<std::size_t>(deg) + 1);
    for (auto& c : p) c = u(rng);
    const GaussPolyFn g(p);
    for (double t : {0.0, 0.3, 0.9, 1.7}) {
      const double re = integrate_adaptive([&](double x) { return g(x) * std::cos(2 * pi * x * t); }, -10, 10, 1e-13).value;
      const double im = -integrate_adaptive([&](double x) { return g(x) * std::sin(2 * pi * x * t); }, -10, 10, 1e-13).value;
      EXPECT_NEAR(g.hat(t).real(), re, 1e-11) << deg << " " << t;
      EXPECT_NEAR(g.hat(t).imag(), im, 1e-11) << deg << " " << t;
    }
  }
}

TEST(GaussPoly, ReportExamples) {
  const double tail = std::erfc(std::sqrt(pi));
  const auto r100 = gauss_poly_report(GaussPolyFn({1.0}), 100);
  EXPECT_NEAR(r100.l1_norm, 1.0, 1e-12);
  EXPECT_NEAR(r100.tail_abs, tail, 1e-10);
  EXPECT_NEAR(r100.j_abs, 1 - 100 * tail, 1e-8);
  EXPECT_LT(r100.j_abs, 0);
  EXPECT_NEAR(r100.j_abs, -0.217, 3e-3);
  const auto r1 = gauss_poly_report(GaussPolyFn({1.0}), 1);
  EXPECT_NEAR(r1.j_abs, 0.9878, 1e-4);
}

TEST(GaussPoly, NegativeAtLargeA) {
  std::mt19937_64 rng(35);
  std::normal_distribution<double> n(0, 1);
  EXPECT_LT(gauss_poly_report(GaussPolyFn({1.0}), 200).j_abs, 0);
  for (int i = 0; i < 40; ++i) {
    std::vector<double> p(static_cast<std::size_t>(1 + i % 5));
    double norm = 0;
    for (auto& c : p) {
      c = n(rng);
      norm += c * c;
    }
    for (auto& c : p) c /= std::sqrt(norm);
    const auto r = gauss_poly_report(GaussPolyFn(p), 200);
    ASSERT_LT(r.j_abs, 0) << i;
    if (r.f_at_zero >= 0) {
      ASSERT_GE(r.j_plus, r.j_abs);
    }
  }
}

TEST(Concentration, Estimates) {
  EXPECT_NEAR(dn_estimate(0), std::erf(std::sqrt(pi)), 1e-9);
  EXPECT_NEAR(dn_estimate(0), 0.98783, 5e-5);
  const auto all = dn_estimates(8, 60);
  ASSERT_EQ(all.size(), 9u);
  for (std::size_t i = 0; i < all.size(); ++i) {
    EXPECT_LT(all[i].ratio, 1.0);
    EXPECT_GT(all[i].ratio, 0.0);
    EXPECT_NEAR(concentration_ratio(GaussPolyFn(all[i].poly_coeffs)), all[i].ratio, 1e-9);
    if (i > 0) {
      EXPECT_GE(all[i].ratio, all[i - 1].ratio);
    }
  }
  EXPECT_THROW(dn_estimates(9), Error);
}
