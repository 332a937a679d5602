#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

#include "qflab/arith.hpp"
#include "qflab/error.hpp"
#include "qflab/forms.hpp"
#include "qflab/lattice.hpp"
#include "qflab/rational.hpp"

namespace qflab {

/// Largest x for which represented integers are marked in memory.
inline constexpr std::int64_t kMarkingBudget = 2'000'000'000;

/// A form together with the sifting range z and the primes p <= z.
class SieveSetup {
 public:
  SieveSetup(const QuadraticForm& f, double z) : density_(f), z_(z) {
    if (!(z >= 2)) throw Error(ErrorKind::invalid_argument, "sieve needs z >= 2");
    for (const auto p : primes_up_to(static_cast<std::uint64_t>(std::floor(z)))) {
      const auto g = density_.g_prime(static_cast<std::int64_t>(p));
      if (g >= 1) throw Error(ErrorKind::singular_weight, "g(" + std::to_string(p) + ") = 1");
      primes_.push_back(static_cast<std::int64_t>(p));
      g_.push_back(g);
    }
  }

  const QuadraticForm& form() const { return density_.form(); }
  const DensityG& density() const { return density_; }
  double z() const { return z_; }
  const std::vector<std::int64_t>& primes() const { return primes_; }

  /// Calls visit(l, g(l)) for every squarefree l < limit built from the sieve primes.
  void for_each_divisor(double limit, const std::function<void(std::int64_t, const Rational&)>& visit) const {
    std::function<void(std::size_t, std::int64_t, const Rational&)> rec =
        [&](std::size_t start, std::int64_t ell, const Rational& g) {
          visit(ell, g);
          for (std::size_t i = start; i < primes_.size(); ++i) {
            const std::int64_t next = ell * primes_[i];
            if (static_cast<double>(next) >= limit) break;
            rec(i + 1, next, g * g_[i]);
          }
        };
    if (limit > 1) rec(0, 1, Rational(1));
  }

  /// h(l) = prod_{p | l} g(p)/(1 - g(p)) for l | P.
  Rational h(std::int64_t ell) const {
    Rational out(1);
    for (std::size_t i = 0; i < primes_.size(); ++i)
      if (ell % primes_[i] == 0) out *= g_[i] / (1 - g_[i]);
    return out;
  }

 private:
  DensityG density_;
  double z_;
  std::vector<std::int64_t> primes_;
  std::vector<Rational> g_;
};

/// J = sum_{l < z, l | P} h(l).
inline Rational selberg_J(const QuadraticForm& f, double z) {
  const SieveSetup setup(f, z);
  Rational J(0);
  setup.for_each_divisor(z, [&](std::int64_t ell, const Rational&) { J += setup.h(ell); });
  return J;
}

/// sum_{l < z} g(l) with g extended completely multiplicatively; J is at
/// least this.
inline Rational g_partial_sum(const QuadraticForm& f, double z) {
  const KroneckerChar chi(f.D());
  Rational total(0);
  for (std::int64_t ell = 1; static_cast<double>(ell) < z; ++ell) {
    Rational g(1);
    for (const auto& [p, e] : factorize(ell))
      for (int i = 0; i < e; ++i) g *= g_prime(chi, p);
    total += g;
  }
  return total;
}

struct SieveBound {
  double x = 0, y = 0, z = 0;
  double main = 0;
  double error_sum = 0;
  double bound = 0;
  Rational J;
};

/// Selberg upper bound for sum_{x-y < n <= x, (n, P) = 1} r_f(n): the main
/// term 2 pi y / (sqrt(D) J) plus sum tau_3(l) |E_l| over l = [d1, d2] with
/// d1, d2 < z dividing P (so l | P, l < z^2), every E_l computed exactly
/// from two congruence sums.
inline SieveBound sieve_upper_bound(const QuadraticForm& f, double x, double y, double z) {
  if (!(y > 0) || !(x - y >= 0)) throw Error(ErrorKind::invalid_argument, "need y > 0 and x - y >= 0");
  const SieveSetup setup(f, z);
  SieveBound out;
  out.x = x;
  out.y = y;
  out.z = z;
  out.J = Rational(0);
  setup.for_each_divisor(z, [&](std::int64_t ell, const Rational&) { out.J += setup.h(ell); });
  const double sqrtD = std::sqrt(static_cast<double>(f.D()));
  out.main = 2.0 * pi * y / (sqrtD * to_double(out.J));
  std::vector<std::int64_t> divisors;
  setup.for_each_divisor(z, [&](std::int64_t d, const Rational&) { divisors.push_back(d); });
  std::set<std::int64_t> lcms;
  for (const auto d1 : divisors)
    for (const auto d2 : divisors) lcms.insert(d1 / std::gcd(d1, d2) * d2);
  std::vector<double> terms;
  for (const auto ell : lcms) {
    const double interval = static_cast<double>(congruence_sum_interval(f, ell, x - y, x));
    const double E = interval - 2.0 * pi * y * to_double(setup.density().g_squarefree(ell)) / sqrtD;
    terms.push_back(static_cast<double>(divisor_tau3(ell)) * std::abs(E));
  }
  out.error_sum = pairwise_sum(terms);
  out.bound = out.main + out.error_sum;
  return out;
}

/// sum_{x-y < n <= x, gcd(n, P) = 1} r_f(n) by direct lattice enumeration.
inline std::int64_t sieved_sum_exact(const QuadraticForm& f, double x, double y, double z) {
  std::int64_t P = 1;
  for (const auto p : primes_up_to(static_cast<std::uint64_t>(std::floor(z)))) P = checked_mul(P, static_cast<std::int64_t>(p));
  const auto hi = static_cast<std::int64_t>(std::floor(x));
  const auto lo = static_cast<std::int64_t>(std::floor(x - y)) + 1;
  std::int64_t total = 0;
  for_each_lattice_point(f, std::max<std::int64_t>(lo, 1), hi, [&](std::int64_t, std::int64_t, std::int64_t n) {
    if (std::gcd(n, P) == 1) ++total;
  });
  return total;
}

/// Marks n in [lo, hi] that f represents.
inline std::vector<bool> represented_in_range(const QuadraticForm& f, std::int64_t lo, std::int64_t hi) {
  if (hi - lo + 1 > kMarkingBudget) throw Error(ErrorKind::budget_exceeded, "marking range too large");
  std::vector<bool> mark(static_cast<std::size_t>(std::max<std::int64_t>(hi - lo + 1, 0)), false);
  for_each_lattice_point(f, lo, hi, [&](std::int64_t, std::int64_t, std::int64_t n) { mark[n - lo] = true; });
  return mark;
}

/// Primes p in [lo, hi] represented by f, increasing.
inline std::vector<std::uint64_t> represented_primes(const QuadraticForm& f, std::int64_t lo, std::int64_t hi) {
  lo = std::max<std::int64_t>(lo, 2);
  std::vector<std::uint64_t> out;
  if (hi < lo) return out;
  const auto mark = represented_in_range(f, lo, hi);
  for (const auto p : primes_in_range(static_cast<std::uint64_t>(lo), static_cast<std::uint64_t>(hi)))
    if (mark[p - lo]) out.push_back(p);
  return out;
}

/// pi_f(x) = #{p <= x : f represents p}.
inline std::int64_t pi_f(const QuadraticForm& f, double x) {
  if (x < 2) return 0;
  return static_cast<std::int64_t>(represented_primes(f, 2, static_cast<std::int64_t>(std::floor(x))).size());
}

/// pi_f(hi) - pi_f(lo).
inline std::int64_t pi_f_window(const QuadraticForm& f, double lo, double hi) {
  const auto a = static_cast<std::int64_t>(std::floor(lo)) + 1;
  const auto b = static_cast<std::int64_t>(std::floor(hi));
  return static_cast<std::int64_t>(represented_primes(f, a, b).size());
}

enum class BtVariant { theorem2_case1, theorem2_case2, theoremA };

struct BtConstant {
  double theta = 0;
  double constant = 0;
  bool range_ok = false;
};

/// Leading constants 4/(1 - theta_1), 7/(1 - theta_2) or 2/(1 - theta') and
/// whether (x, y) lies in the corresponding range. Out-of-range inputs are
/// flagged, not rejected.
inline BtConstant bt_theoretical_bound(const QuadraticForm& f, double x, double y, BtVariant variant, double eps) {
  if (!is_reduced(f)) throw Error(ErrorKind::invalid_argument, "Brun-Titchmarsh constants need a reduced form");
  if (!(y > 1) || !(x >= y)) throw Error(ErrorKind::invalid_argument, "need 1 < y <= x");
  if (variant == BtVariant::theorem2_case1 && !(eps > 0 && eps < 1.0 / 20))
    throw Error(ErrorKind::invalid_argument, "case 1 needs 0 < eps < 1/20");
  if (variant == BtVariant::theoremA && !(eps > 0)) throw Error(ErrorKind::invalid_argument, "eps must be > 0");
  const double lx = std::log(x), ly = std::log(y), lD = std::log(static_cast<double>(f.D())),
               la = std::log(static_cast<double>(f.a()));
  constexpr double slack = 1e-12;
  auto le = [&](double lhs, double rhs) { return lhs <= rhs + slack * (1.0 + std::abs(rhs)); };
  BtConstant out;
  switch (variant) {
    case BtVariant::theorem2_case1:
      out.theta = lx / (3 * ly) + (4.0 / 3.0 + eps) * lD / ly - la / ly;
      out.constant = 4.0 / (1.0 - out.theta);
      out.range_ok = le(2 * lD - la + (1.0 / 3.0 + eps) * lx, ly) && le(ly, 4.0 / 9.0 * lx);
      break;
    case BtVariant::theorem2_case2:
      out.theta = lx / (4 * ly) + 31.0 * lD / (12 * ly) - 7.0 * la / (4 * ly);
      out.constant = 7.0 / (1.0 - out.theta);
      out.range_ok = le(4.0 / 9.0 * lx, ly) && le(ly, 3.0 / 5.0 * lx) && le(18 * lD, lx);
      break;
    case BtVariant::theoremA:
      out.theta = lx / (2 * ly) + (0.75 + eps / 4) * lD / ly - la / (2 * ly);
      out.constant = 2.0 / (1.0 - out.theta);
      out.range_ok = le((0.5 + eps) * (2 * lD - la) + (0.5 + eps) * lx, ly) && le(ly, lx);
      break;
  }
  return out;
}

/// Leading term A delta_f sqrt(x) / (h(-D) log x) of the short-interval bound
/// with y = sqrt(x); A defaults to 28.
inline double cor_brun_bound(const QuadraticForm& f, double x, double A = 28.0) {
  if (!(x >= 3)) throw Error(ErrorKind::invalid_argument, "need x >= 3");
  const double delta = to_double(delta_f(f));
  const auto h = static_cast<double>(class_number(f.D()));
  return A * delta * std::sqrt(x) / (h * std::log(x));
}

struct PrimeGapRecord {
  std::uint64_t p_n = 0;
  std::uint64_t p_next = 0;
  double normalized_gap = 0.0;

  std::uint64_t gap() const { return p_next - p_n; }
};

struct PrimeGapScan {
  /// Largest normalised gap among records with p_n >= kMinGapPrime.
  std::optional<PrimeGapRecord> max_record;
  std::vector<PrimeGapRecord> records;
};

inline constexpr std::uint64_t kMinGapPrime = 100;

/// Consecutive represented primes up to X with (p' - p)/(sqrt(p) log p).
inline PrimeGapScan prime_gap_scan(const QuadraticForm& f, double X) {
  const auto ps = represented_primes(f, 2, static_cast<std::int64_t>(std::floor(X)));
  if (ps.size() < 2) throw Error(ErrorKind::insufficient_data, "fewer than two represented primes");
  PrimeGapScan out;
  out.records.reserve(ps.size() - 1);
  for (std::size_t i = 0; i + 1 < ps.size(); ++i) {
    const double p = static_cast<double>(ps[i]);
    PrimeGapRecord r{ps[i], ps[i + 1], static_cast<double>(ps[i + 1] - ps[i]) / (std::sqrt(p) * std::log(p))};
    out.records.push_back(r);
    if (r.p_n >= kMinGapPrime && (!out.max_record || r.normalized_gap > out.max_record->normalized_gap))
      out.max_record = r;
  }
  return out;
}

}  // namespace qflab
