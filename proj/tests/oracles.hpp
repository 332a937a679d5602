#pragma once

// Independent reference implementations used only by the tests. They favour
// obviousness over speed and share no algorithmic code with the library.

#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <tuple>
#include <vector>

#include "qflab/forms.hpp"
#include "qflab/numeric.hpp"

namespace oracle {

using qflab::QuadraticForm;

/// r_f(n) by scanning a box that contains the ellipse f(u, v) <= n.
inline std::int64_t rf(const QuadraticForm& f, std::int64_t n) {
  const double D = static_cast<double>(f.D());
  const auto U = static_cast<std::int64_t>(std::ceil(std::sqrt(4.0 * f.c() * n / D))) + 1;
  const auto V = static_cast<std::int64_t>(std::ceil(std::sqrt(4.0 * f.a() * n / D))) + 1;
  std::int64_t count = 0;
  for (std::int64_t u = -U; u <= U; ++u)
    for (std::int64_t v = -V; v <= V; ++v)
      if (f.a() * u * u + f.b() * u * v + f.c() * v * v == n) ++count;
  return count;
}

/// #{(u, v) != 0 : f(u, v) <= x, l | f(u, v)} by box scan.
inline std::int64_t congruence_sum(const QuadraticForm& f, std::int64_t ell, double x) {
  const double D = static_cast<double>(f.D());
  const auto U = static_cast<std::int64_t>(std::ceil(std::sqrt(4.0 * f.c() * x / D))) + 1;
  const auto V = static_cast<std::int64_t>(std::ceil(std::sqrt(4.0 * f.a() * x / D))) + 1;
  std::int64_t count = 0;
  for (std::int64_t u = -U; u <= U; ++u)
    for (std::int64_t v = -V; v <= V; ++v) {
      const std::int64_t n = f.a() * u * u + f.b() * u * v + f.c() * v * v;
      if (n >= 1 && static_cast<double>(n) <= x && n % ell == 0) ++count;
    }
  return count;
}

/// Proper-equivalence classes of primitive forms of discriminant -D, by
/// union-find over the generators S: (a,b,c) -> (c,-b,a) and
/// T: (a,b,c) -> (a, b+2a, a+b+c) restricted to a box. Gauss reduction never
/// leaves the box of its starting form, so components are classes.
inline std::int64_t orbit_class_count(std::int64_t D, std::int64_t box) {
  std::map<std::tuple<std::int64_t, std::int64_t, std::int64_t>, int> index;
  std::vector<std::tuple<std::int64_t, std::int64_t, std::int64_t>> forms;
  for (std::int64_t a = 1; a <= box; ++a)
    for (std::int64_t b = -box; b <= box; ++b) {
      const std::int64_t num = b * b + D;
      if (num % (4 * a) != 0) continue;
      const std::int64_t c = num / (4 * a);
      if (c < 1 || c > box) continue;
      if (std::gcd(std::gcd(a, std::abs(b)), c) != 1) continue;
      index[{a, b, c}] = static_cast<int>(forms.size());
      forms.emplace_back(a, b, c);
    }
  std::vector<int> parent(forms.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  auto unite = [&](int i, std::tuple<std::int64_t, std::int64_t, std::int64_t> g) {
    const auto it = index.find(g);
    if (it != index.end()) parent[find(i)] = find(it->second);
  };
  for (std::size_t i = 0; i < forms.size(); ++i) {
    const auto [a, b, c] = forms[i];
    unite(static_cast<int>(i), {c, -b, a});
    unite(static_cast<int>(i), {a, b + 2 * a, a + b + c});
    unite(static_cast<int>(i), {a, b - 2 * a, a - b + c});
  }
  std::set<int> roots;
  for (std::size_t i = 0; i < forms.size(); ++i) roots.insert(find(static_cast<int>(i)));
  return static_cast<std::int64_t>(roots.size());
}

/// Legendre symbol (n/p) for an odd prime p by Euler's criterion.
inline int legendre(std::int64_t n, std::int64_t p) {
  n = ((n % p) + p) % p;
  if (n == 0) return 0;
  std::int64_t r = 1, base = n, e = (p - 1) / 2;
  while (e > 0) {
    if (e & 1) r = static_cast<std::int64_t>(static_cast<qflab::int128>(r) * base % p);
    base = static_cast<std::int64_t>(static_cast<qflab::int128>(base) * base % p);
    e >>= 1;
  }
  return r == 1 ? 1 : -1;
}

inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Ordered triples with product n.
inline std::int64_t tau3(std::int64_t n) {
  std::int64_t count = 0;
  for (std::int64_t d1 = 1; d1 <= n; ++d1)
    if (n % d1 == 0)
      for (std::int64_t d2 = 1; d2 <= n / d1; ++d2)
        if ((n / d1) % d2 == 0) ++count;
  return count;
}

/// Power series for J0 with 60 terms.
inline double bessel_j0_series(double t) {
  long double q = static_cast<long double>(t) * t / 4.0L, term = 1.0L, sum = 1.0L;
  for (int k = 1; k < 120; ++k) {
    term *= -q / (static_cast<long double>(k) * k);
    sum += term;
  }
  return static_cast<double>(sum);
}

/// Sum over lattice points of exp(-pi t f(u, v)) restricted to l | f, by box scan.
inline double gaussian_lattice_sum(const QuadraticForm& f, std::int64_t ell, double t) {
  const double cutoff = 40.0 / (qflab::pi * t);  // exp(-40) relative
  const double D = static_cast<double>(f.D());
  const auto U = static_cast<std::int64_t>(std::ceil(std::sqrt(4.0 * f.c() * cutoff / D))) + 2;
  const auto V = static_cast<std::int64_t>(std::ceil(std::sqrt(4.0 * f.a() * cutoff / D))) + 2;
  double s = 0;
  for (std::int64_t u = -U; u <= U; ++u)
    for (std::int64_t v = -V; v <= V; ++v) {
      const std::int64_t n = f.a() * u * u + f.b() * u * v + f.c() * v * v;
      if (n % ell == 0) s += std::exp(-qflab::pi * t * static_cast<double>(n));
    }
  return s;
}

}  // namespace oracle
