#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "qflab/error.hpp"
#include "qflab/forms.hpp"
#include "qflab/numeric.hpp"
#include "qflab/rational.hpp"

namespace qflab {

/// Kronecker symbol (m/n) for n >= 1.
inline int kronecker(std::int64_t m, std::int64_t n) {
  if (n < 1) throw Error(ErrorKind::invalid_argument, "kronecker needs n >= 1");
  int result = 1;
  while (n % 2 == 0) {
    n /= 2;
    const auto r8 = mod_floor(m, 8);
    if (r8 % 2 == 0) return 0;
    if (r8 == 3 || r8 == 5) result = -result;
  }
  // Jacobi symbol for odd n.
  std::int64_t a = mod_floor(m, n);
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      const auto r = n % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

/// The quadratic character n -> (-D/n).
class KroneckerChar {
 public:
  explicit KroneckerChar(std::int64_t D) : D_(D) {
    if (D < 3) throw Error(ErrorKind::invalid_discriminant, "character needs D >= 3");
  }
  std::int64_t D() const noexcept { return D_; }
  int operator()(std::int64_t n) const { return kronecker(-D_, n); }

 private:
  std::int64_t D_;
};

/// Prime factorisation by trial division, as (p, e) pairs in increasing p.
inline std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
  if (n < 1) throw Error(ErrorKind::invalid_argument, "factorize needs n >= 1");
  std::vector<std::pair<std::int64_t, int>> out;
  for (std::int64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

inline bool is_squarefree(std::int64_t n) {
  for (const auto& [p, e] : factorize(n))
    if (e > 1) return false;
  return true;
}

inline std::int64_t divisor_tau(std::int64_t n) {
  std::int64_t t = 1;
  for (const auto& [p, e] : factorize(n)) t *= e + 1;
  return t;
}

/// Ordered factorisations n = d1 d2 d3; C(e+2, 2) per prime power.
inline std::int64_t divisor_tau3(std::int64_t n) {
  std::int64_t t = 1;
  for (const auto& [p, e] : factorize(n)) t *= static_cast<std::int64_t>(e + 2) * (e + 1) / 2;
  return t;
}

/// g(p) = (1/p)(1 + chi(p) - chi(p)/p).
inline Rational g_prime(const KroneckerChar& chi, std::int64_t p) {
  const int x = chi(p);
  return Rational(p + p * x - x, p * p);
}

/// Density of l-divisible values of f: g on squarefree l, and the exact
/// residue count g~ for every l.
class DensityG {
 public:
  explicit DensityG(const QuadraticForm& f) : form_(f), chi_(f.D()) {}

  const QuadraticForm& form() const noexcept { return form_; }
  const KroneckerChar& chi() const noexcept { return chi_; }

  Rational g_prime(std::int64_t p) const { return qflab::g_prime(chi_, p); }

  Rational g_squarefree(std::int64_t ell) const {
    if (ell < 1) throw Error(ErrorKind::invalid_argument, "g needs l >= 1");
    Rational g(1);
    for (const auto& [p, e] : factorize(ell)) {
      if (e > 1)
        throw Error(ErrorKind::not_squarefree,
                    std::to_string(ell) + " is not squarefree; use g_tilde");
      g *= g_prime(p);
    }
    return g;
  }

  Rational g_tilde(std::int64_t ell) const;

 private:
  QuadraticForm form_;
  KroneckerChar chi_;
};

/// Number of residue pairs (u, v) mod l with l | f(u, v).
inline std::int64_t residue_zero_count(const QuadraticForm& f, std::int64_t ell) {
  if (ell < 1) throw Error(ErrorKind::invalid_argument, "l must be >= 1");
  const std::int64_t a = mod_floor(f.a(), ell), b = mod_floor(f.b(), ell), c = mod_floor(f.c(), ell);
  std::int64_t count = 0;
  for (std::int64_t u = 0; u < ell; ++u) {
    const int128 au2 = static_cast<int128>(a) * u % ell * u % ell;
    const int128 bu = static_cast<int128>(b) * u % ell;
    for (std::int64_t v = 0; v < ell; ++v) {
      const int128 val = (au2 + bu * v + static_cast<int128>(c) * v % ell * v) % ell;
      if (val == 0) ++count;
    }
  }
  return count;
}

/// g~(l) = #{0 <= u, v < l : l | f(u, v)} / l^2.
inline Rational g_tilde(const QuadraticForm& f, std::int64_t ell) {
  return Rational(residue_zero_count(f, ell), ell * ell);
}

inline Rational DensityG::g_tilde(std::int64_t ell) const { return qflab::g_tilde(form_, ell); }

/// Whether -D is a fundamental discriminant.
inline bool is_fundamental(std::int64_t D) {
  if (D < 3) return false;
  if (D % 4 == 3) return is_squarefree(D);
  if (D % 4 != 0) return false;
  const std::int64_t m = D / 4;
  return (m % 4 == 1 || m % 4 == 2) && is_squarefree(m);
}

/// L(1, chi_{-D}) for fundamental -D. Partial sums are taken at multiples of
/// the period D, where the remainder has an expansion in powers of 1/N, and
/// accelerated by Richardson extrapolation over doubling N.
inline double L1_chi(std::int64_t D, double tol = 1e-10) {
  if (!is_fundamental(D))
    throw Error(ErrorKind::not_fundamental, "-" + std::to_string(D) + " is not fundamental");
  const KroneckerChar chi(D);
  std::vector<int> table(static_cast<std::size_t>(D));
  for (std::int64_t r = 0; r < D; ++r) table[r] = r == 0 ? 0 : chi(r);

  constexpr int kMaxLevels = 18;
  std::vector<std::vector<long double>> T;
  long double partial = 0.0L;
  std::int64_t n = 0;
  std::int64_t target = D * std::max<std::int64_t>(1, 512 / D + 1);
  for (int k = 0; k < kMaxLevels; ++k) {
    for (; n < target; ++n) {
      const int x = table[(n + 1) % D];
      if (x != 0) partial += static_cast<long double>(x) / static_cast<long double>(n + 1);
    }
    std::vector<long double> row{partial};
    for (int j = 1; j <= k; ++j) {
      const long double f = std::ldexp(1.0L, j);
      row.push_back((f * row[j - 1] - T[k - 1][j - 1]) / (f - 1.0L));
    }
    T.push_back(row);
    if (k >= 3 && std::abs(static_cast<double>(T[k][k] - T[k - 1][k - 1])) < 0.1 * tol)
      return static_cast<double>(T[k][k]);
    target *= 2;
  }
  throw Error(ErrorKind::no_convergence, "L(1, chi) did not reach the requested tolerance");
}

/// h(-D) from the analytic class number formula, cross-checked against the
/// reduced-form enumeration.
inline std::int64_t class_number_via_L(std::int64_t D) {
  const double L = L1_chi(D, 1e-10);
  const double value = unit_count(D) * std::sqrt(static_cast<double>(D)) * L / (2.0 * pi);
  const auto h = std::llround(value);
  const auto enumerated = class_number(D);
  if (h != enumerated)
    throw Error(ErrorKind::consistency, "class number formula gives " + std::to_string(h) +
                                            " but enumeration gives " + std::to_string(enumerated));
  return h;
}

namespace detail {

inline std::vector<std::uint32_t> small_primes(std::uint64_t limit) {
  std::vector<bool> composite(limit + 1, false);
  std::vector<std::uint32_t> out;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return out;
}

}  // namespace detail

/// Primes in [lo, hi], increasing, by a segmented sieve of Eratosthenes.
inline std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi) {
  std::vector<std::uint64_t> out;
  if (hi < 2 || lo > hi) return out;
  lo = std::max<std::uint64_t>(lo, 2);
  const auto base = detail::small_primes(isqrt(hi));
  constexpr std::uint64_t kSegment = 1u << 18;
  std::vector<char> mark(kSegment);
  for (std::uint64_t seg = lo; seg <= hi; seg += kSegment) {
    const std::uint64_t end = std::min(hi, seg + kSegment - 1);
    std::fill(mark.begin(), mark.begin() + static_cast<std::ptrdiff_t>(end - seg + 1), 1);
    for (const std::uint64_t p : base) {
      if (p * p > end) break;
      std::uint64_t start = std::max(p * p, (seg + p - 1) / p * p);
      for (std::uint64_t j = start; j <= end; j += p) mark[j - seg] = 0;
    }
    for (std::uint64_t i = seg; i <= end; ++i)
      if (mark[i - seg]) out.push_back(i);
    if (end == hi) break;
  }
  return out;
}

inline std::vector<std::uint64_t> primes_up_to(std::uint64_t x) { return primes_in_range(2, x); }

}  // namespace qflab
