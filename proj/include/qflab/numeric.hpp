#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

#include "qflab/error.hpp"

namespace qflab {

/// 128-bit intermediate for products of 64-bit values.
__extension__ using int128 = __int128;

inline constexpr double pi = std::numbers::pi;

/// floor(sqrt(n)), exact for all 64-bit inputs.
inline std::uint64_t isqrt(std::uint64_t n) {
  if (n == 0) return 0;
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && (r > n / r)) --r;
  while ((r + 1) <= n / (r + 1)) ++r;
  return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_mul_overflow(a, b, &out))
    throw Error(ErrorKind::budget_exceeded, "64-bit overflow in exact arithmetic");
  return out;
}

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_add_overflow(a, b, &out))
    throw Error(ErrorKind::budget_exceeded, "64-bit overflow in exact arithmetic");
  return out;
}

/// Euclidean remainder in [0, m).
inline std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

/// Cascade summation; error grows like log(n) instead of n.
inline double pairwise_sum(std::span<const double> xs) {
  if (xs.size() <= 16) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s;
  }
  const auto half = xs.size() / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

template <int N>
struct GaussRule {
  std::array<double, N> nodes{};
  std::array<double, N> weights{};
};

/// Gauss-Legendre rule on [-1, 1], built once by Newton iteration on P_N.
template <int N>
const GaussRule<N>& gauss_legendre() {
  static const GaussRule<N> rule = [] {
    GaussRule<N> g;
    for (int i = 0; i < N; ++i) {
      double x = std::cos(pi * (i + 0.75) / (N + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= N; ++k) {
          const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = N * (x * p1 - p0) / (x * x - 1.0);
        const double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-16) break;
      }
      g.nodes[i] = x;
      g.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return g;
  }();
  return rule;
}

/// Fixed-order Gauss-Legendre on [a, b]; exact for polynomials of degree 2N-1.
template <int N = 20, class F>
double integrate_gl(F&& f, double a, double b) {
  const auto& g = gauss_legendre<N>();
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double s = 0.0;
  for (int i = 0; i < N; ++i) s += g.weights[i] * f(mid + half * g.nodes[i]);
  return s * half;
}

struct Quadrature {
  double value = 0.0;
  double error = 0.0;
};

namespace detail {

inline constexpr std::array<double, 8> kronrod_x = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kronrod_w = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> gauss7_w = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class F>
Quadrature gk15(F& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const double fc = f(c);
  double k = fc * kronrod_w[7];
  double g = fc * gauss7_w[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kronrod_x[j];
    const double s = f(c - dx) + f(c + dx);
    k += kronrod_w[j] * s;
    if (j % 2 == 1) g += gauss7_w[j / 2] * s;
  }
  return {k * h, std::abs((k - g) * h)};
}

template <class F>
Quadrature adaptive(F& f, double a, double b, double tol, int depth, const Quadrature& whole) {
  if (whole.error <= tol || depth <= 0 || b - a < 1e-15 * (1.0 + std::abs(a))) return whole;
  const double m = 0.5 * (a + b);
  const auto left = gk15(f, a, m);
  const auto right = gk15(f, m, b);
  if (left.error + right.error <= tol) return {left.value + right.value, left.error + right.error};
  const auto l = adaptive(f, a, m, 0.5 * tol, depth - 1, left);
  const auto r = adaptive(f, m, b, 0.5 * tol, depth - 1, right);
  return {l.value + r.value, l.error + r.error};
}

}  // namespace detail

/// Adaptive Gauss-Kronrod (7/15) with bisection. The returned error is the
/// summed |K15 - G7| estimate; throws no_convergence if it stays above tol.
template <class F>
Quadrature integrate_adaptive(F&& f, double a, double b, double tol, int max_depth = 40) {
  if (a == b) return {};
  auto whole = detail::gk15(f, a, b);
  auto q = detail::adaptive(f, a, b, tol, max_depth, whole);
  if (q.error > tol && q.error > 1e-14 * std::abs(q.value))
    throw Error(ErrorKind::no_convergence, "adaptive quadrature did not reach tolerance");
  return q;
}

/// Root of f in [a, b] given a sign change, by bisection to machine resolution.
template <class F>
double bisect_root(F&& f, double a, double b) {
  double fa = f(a);
  for (int i = 0; i < 200; ++i) {
    const double m = 0.5 * (a + b);
    if (m <= a || m >= b) break;
    const double fm = f(m);
    if (fm == 0.0) return m;
    if ((fm < 0) == (fa < 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

/// Sign-change points of f on [a, b] found on a uniform sample of `samples`
/// cells and refined by bisection. Tangential zeros are not reported.
template <class F>
std::vector<double> sign_changes(F&& f, double a, double b, int samples) {
  std::vector<double> roots;
  double x0 = a, f0 = f(a);
  for (int i = 1; i <= samples; ++i) {
    const double x1 = (i == samples) ? b : a + (b - a) * i / samples;
    const double f1 = f(x1);
    if ((f0 < 0 && f1 > 0) || (f0 > 0 && f1 < 0)) roots.push_back(bisect_root(f, x0, x1));
    x0 = x1;
    f0 = f1;
  }
  return roots;
}

/// Golden-section search for a maximum of a unimodal f on [lo, hi].
template <class F>
double golden_section_max(F&& f, double lo, double hi, int iterations = 60) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - g * (hi - lo), d = lo + g * (hi - lo);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < iterations; ++i) {
    if (fc > fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - g * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + g * (hi - lo);
      fd = f(d);
    }
  }
  return fc > fd ? c : d;
}

/// Least-squares slope of y against x.
inline double ls_slope(std::span<const double> xs, std::span<const double> ys) {
  const auto n = static_cast<double>(xs.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  return sxy / sxx;
}

}  // namespace qflab
