#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "qflab/arith.hpp"
#include "qflab/bessel.hpp"
#include "qflab/error.hpp"
#include "qflab/forms.hpp"
#include "qflab/numeric.hpp"
#include "qflab/parallel.hpp"

namespace qflab {

/// Largest number of v-rows a single lattice enumeration may visit.
inline constexpr std::int64_t kEnumerationRowBudget = 200'000'000;

namespace detail {

/// u-residues mod l with l | f(u, v), indexed by v mod l.
inline std::vector<std::vector<std::int64_t>> divisible_residues(const QuadraticForm& f,
                                                                 std::int64_t ell) {
  std::vector<std::vector<std::int64_t>> table(static_cast<std::size_t>(ell));
  const std::int64_t a = mod_floor(f.a(), ell), b = mod_floor(f.b(), ell), c = mod_floor(f.c(), ell);
  for (std::int64_t v = 0; v < ell; ++v) {
    const int128 cv2 = static_cast<int128>(c) * v % ell * v % ell;
    const int128 bv = static_cast<int128>(b) * v % ell;
    for (std::int64_t u = 0; u < ell; ++u) {
      const int128 val = (static_cast<int128>(a) * u % ell * u + bv * u + cv2) % ell;
      if (val == 0) table[v].push_back(u);
    }
  }
  return table;
}

/// Integers in [lo, hi] congruent to r mod m.
inline std::int64_t count_in_class(std::int64_t lo, std::int64_t hi, std::int64_t r, std::int64_t m) {
  if (hi < lo) return 0;
  const std::int64_t first = lo + mod_floor(r - lo, m);
  return first > hi ? 0 : (hi - first) / m + 1;
}

struct RowRange {
  std::int64_t vmax;
  std::int64_t four_aX;
};

inline RowRange rows_for(const QuadraticForm& f, std::int64_t X) {
  const std::int64_t four_aX = checked_mul(checked_mul(4, f.a()), X);
  const auto vmax = static_cast<std::int64_t>(isqrt(static_cast<std::uint64_t>(four_aX / f.D())));
  if (2 * vmax + 1 > kEnumerationRowBudget)
    throw Error(ErrorKind::budget_exceeded, "lattice enumeration exceeds the row budget");
  return {vmax, four_aX};
}

/// Exact u-interval of f(u, v) <= X for fixed v, from (2au + bv)^2 <= 4aX - Dv^2.
inline bool u_interval(const QuadraticForm& f, std::int64_t four_aX, std::int64_t v, std::int64_t& lo,
                       std::int64_t& hi) {
  const std::int64_t m = four_aX - f.D() * v * v;
  if (m < 0) return false;
  const auto s = static_cast<std::int64_t>(isqrt(static_cast<std::uint64_t>(m)));
  lo = ceil_div(-s - f.b() * v, 2 * f.a());
  hi = floor_div(s - f.b() * v, 2 * f.a());
  return lo <= hi;
}

}  // namespace detail

/// Calls visit(u, v, value) for every lattice point with lo <= f(u, v) <= hi.
template <class Visit>
void for_each_lattice_point(const QuadraticForm& f, std::int64_t lo, std::int64_t hi, Visit&& visit) {
  if (hi < 0 || hi < lo) return;
  const auto rows = detail::rows_for(f, hi);
  const std::int64_t four_a_lo = lo > 0 ? checked_mul(checked_mul(4, f.a()), lo - 1) : -1;
  for (std::int64_t v = -rows.vmax; v <= rows.vmax; ++v) {
    std::int64_t u0, u1;
    if (!detail::u_interval(f, rows.four_aX, v, u0, u1)) continue;
    // Skip the inner hole f < lo when it is non-empty for this row.
    std::int64_t h0 = 1, h1 = 0;
    if (four_a_lo >= 0) detail::u_interval(f, four_a_lo, v, h0, h1);
    for (std::int64_t u = u0; u <= u1; ++u) {
      if (h0 <= h1 && u == h0) {
        u = h1;
        continue;
      }
      const std::int64_t value = f(u, v);
      if (value >= lo && value <= hi) visit(u, v, value);
    }
  }
}

/// sum_{1 <= n <= x, l | n} r_f(n), by exact enumeration: v outer, the
/// u-interval per row resolved in integers and strided per residue class.
inline std::int64_t congruence_sum_exact(const QuadraticForm& f, std::int64_t ell, double x) {
  if (ell < 1) throw Error(ErrorKind::invalid_argument, "l must be >= 1");
  if (!(x >= 0)) throw Error(ErrorKind::invalid_argument, "x must be >= 0");
  if (x > 9.0e18) throw Error(ErrorKind::budget_exceeded, "x too large");
  const auto X = static_cast<std::int64_t>(std::floor(x));
  if (X < 1) return 0;
  const auto rows = detail::rows_for(f, X);
  const auto residues = detail::divisible_residues(f, ell);
  std::int64_t total = 0;
  for (std::int64_t v = -rows.vmax; v <= rows.vmax; ++v) {
    std::int64_t lo, hi;
    if (!detail::u_interval(f, rows.four_aX, v, lo, hi)) continue;
    for (const std::int64_t r : residues[mod_floor(v, ell)]) total += detail::count_in_class(lo, hi, r, ell);
  }
  return total - 1;  // (0, 0)
}

/// sum over lo < n <= hi with l | n.
inline std::int64_t congruence_sum_interval(const QuadraticForm& f, std::int64_t ell, double lo, double hi) {
  return congruence_sum_exact(f, ell, hi) - congruence_sum_exact(f, ell, std::max(lo, 0.0));
}

/// 2 pi g~(l) x / sqrt(D).
inline double congruence_main_term(const QuadraticForm& f, std::int64_t ell, double x) {
  return 2.0 * pi * to_double(g_tilde(f, ell)) * x / std::sqrt(static_cast<double>(f.D()));
}

struct CongruenceSumResult {
  std::int64_t exact_sum = 0;
  double main_term = 0.0;
  double error = 0.0;
  double x = 0.0;
  std::int64_t ell = 1;
};

inline CongruenceSumResult congruence_sum(const QuadraticForm& f, std::int64_t ell, double x) {
  CongruenceSumResult r;
  r.exact_sum = congruence_sum_exact(f, ell, x);
  r.main_term = congruence_main_term(f, ell, x);
  r.error = static_cast<double>(r.exact_sum) - r.main_term;
  r.x = x;
  r.ell = ell;
  return r;
}

struct ErrorScalingRow {
  double x = 0.0;
  std::int64_t exact = 0;
  double main = 0.0;
  double error = 0.0;
  double normalized_third = 0.0;
  double normalized_half = 0.0;
};

struct ErrorScalingReport {
  std::vector<ErrorScalingRow> rows;
  /// Least-squares slope of log|error| against log x over rows with
  /// |error| >= 1; empty when fewer than two rows qualify.
  std::optional<double> slope;
};

/// `points` values from start to stop, geometric when `log`, else arithmetic.
inline std::vector<double> make_grid(double start, double stop, int points, bool log) {
  if (points < 1) throw Error(ErrorKind::invalid_argument, "grid needs at least one point");
  if (log && !(start > 0 && stop > 0)) throw Error(ErrorKind::invalid_argument, "log grid needs positive ends");
  std::vector<double> g;
  for (int i = 0; i < points; ++i) {
    const double s = points == 1 ? 0.0 : static_cast<double>(i) / (points - 1);
    g.push_back(log ? std::exp(std::log(start) + s * (std::log(stop) - std::log(start)))
                    : start + s * (stop - start));
  }
  return g;
}

inline ErrorScalingReport error_scaling_report(const QuadraticForm& f, std::int64_t ell,
                                               const std::vector<double>& x_grid,
                                               unsigned threads = thread_count()) {
  for (std::size_t i = 1; i < x_grid.size(); ++i)
    if (!(x_grid[i] > x_grid[i - 1])) throw Error(ErrorKind::invalid_argument, "x grid must increase");
  ErrorScalingReport rep;
  rep.rows = parallel_map<ErrorScalingRow>(
      x_grid.size(),
      [&](std::size_t i) {
        const auto r = congruence_sum(f, ell, x_grid[i]);
        return ErrorScalingRow{r.x, r.exact_sum, r.main_term, r.error, r.error / std::cbrt(r.x),
                               r.error / std::sqrt(r.x)};
      },
      threads);
  std::vector<double> lx, le;
  for (const auto& row : rep.rows) {
    if (std::abs(row.error) < 1.0) continue;
    lx.push_back(std::log(row.x));
    le.push_back(std::log(std::abs(row.error)));
  }
  if (lx.size() >= 2) rep.slope = ls_slope(lx, le);
  return rep;
}

/// Fourier coefficient of the indicator of l | |w|^2 on the character
/// indexed by lambda* = s w1* + r w2*; the phase is -2 pi i (us + vr)/l.
inline std::complex<double> chi_hat(const QuadraticForm& f, std::int64_t ell, std::int64_t r, std::int64_t s) {
  if (ell < 1) throw Error(ErrorKind::invalid_argument, "l must be >= 1");
  if (r < 0 || s < 0 || r >= ell || s >= ell)
    throw Error(ErrorKind::out_of_range, "(r, s) must lie in [0, l)^2");
  const auto residues = detail::divisible_residues(f, ell);
  std::complex<double> acc{0.0, 0.0};
  for (std::int64_t v = 0; v < ell; ++v) {
    for (const std::int64_t u : residues[v]) {
      const std::int64_t k = (u * s + v * r) % ell;
      const double phase = -2.0 * pi * static_cast<double>(k) / static_cast<double>(ell);
      acc += std::complex<double>(std::cos(phase), std::sin(phase));
    }
  }
  return acc / static_cast<double>(ell * ell);
}

struct PoissonCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double lhs_tail_bound = 0.0;
  double rhs_tail_bound = 0.0;
  double rhs_imag = 0.0;

  double relative_gap() const { return std::abs(lhs - rhs) / std::abs(lhs); }
};

namespace detail {

/// Bound on sum over lattice points with Q > N of exp(-k Q), where Q is a
/// positive definite form whose sublevel set {Q <= m} lies in a box of
/// half-widths sqrt(m) * (hu, hv).
inline double gaussian_tail_bound(double N, double k, double hu, double hv) {
  double bound = 0.0;
  for (int j = 0; j < 4000; ++j) {
    const double m = N + j + 1;
    const double pts = (2.0 * std::sqrt(m) * hu + 3.0) * (2.0 * std::sqrt(m) * hv + 3.0);
    const double term = pts * std::exp(-k * (N + j));
    bound += term;
    if (term < 1e-300) break;
  }
  return bound;
}

}  // namespace detail

/// Both sides of the lattice Poisson identity for G(w) = exp(-pi t |w|^2):
///   sum_{w in L, l | |w|^2} G(w) = sqrt(4/D) sum_{lambda*} chi_hat sum_{w* in L*} G^(w* - lambda*/l).
inline PoissonCheck poisson_identity_check(const QuadraticForm& f, std::int64_t ell, double t) {
  if (!(t > 0)) throw Error(ErrorKind::invalid_argument, "t must be positive");
  if (ell < 1) throw Error(ErrorKind::invalid_argument, "l must be >= 1");
  constexpr double kExponentCut = 52.0;  // e^-52 ~ 2.6e-23
  const double a = static_cast<double>(f.a()), c = static_cast<double>(f.c()),
               D = static_cast<double>(f.D()), b = static_cast<double>(f.b());
  PoissonCheck out;

  // Left side: direct lattice sum, including w = 0.
  const auto nmax = static_cast<std::int64_t>(std::ceil(kExponentCut / (pi * t)));
  std::vector<double> terms;
  for_each_lattice_point(f, 0, nmax, [&](std::int64_t, std::int64_t, std::int64_t n) {
    if (n % ell == 0) terms.push_back(std::exp(-pi * t * static_cast<double>(n)));
  });
  std::sort(terms.begin(), terms.end());
  out.lhs = pairwise_sum(terms);
  out.lhs_tail_bound = detail::gaussian_tail_bound(static_cast<double>(nmax), pi * t,
                                                   std::sqrt(4 * c / D), std::sqrt(4 * a / D));

  // Right side. With P = p - s/l, Q = q - r/l the shifted dual vector has
  // squared norm (4/D)(c P^2 - b P Q + a Q^2).
  const double xi_max = kExponentCut * t / pi;
  const double pspan = std::sqrt(a * xi_max) + 2.0, qspan = std::sqrt(c * xi_max) + 2.0;
  const double L = static_cast<double>(ell);
  std::vector<double> re_terms, im_terms;
  for (std::int64_t r = 0; r < ell; ++r) {
    for (std::int64_t s = 0; s < ell; ++s) {
      const auto coeff = chi_hat(f, ell, r, s);
      if (std::abs(coeff) < 1e-300) continue;
      const double ps = static_cast<double>(s) / L, qs = static_cast<double>(r) / L;
      std::vector<double> inner;
      for (auto q = static_cast<std::int64_t>(std::floor(qs - qspan)); q <= std::ceil(qs + qspan); ++q) {
        for (auto p = static_cast<std::int64_t>(std::floor(ps - pspan)); p <= std::ceil(ps + pspan); ++p) {
          const double P = static_cast<double>(p) - ps, Q = static_cast<double>(q) - qs;
          const double xi2 = 4.0 / D * (c * P * P - b * P * Q + a * Q * Q);
          if (xi2 > xi_max) continue;
          inner.push_back(std::exp(-pi * xi2 / t) / t);
        }
      }
      std::sort(inner.begin(), inner.end());
      const double s_inner = pairwise_sum(inner);
      re_terms.push_back(coeff.real() * s_inner);
      im_terms.push_back(coeff.imag() * s_inner);
    }
  }
  const double vol_dual = 2.0 / std::sqrt(D);
  out.rhs = vol_dual * pairwise_sum(re_terms);
  out.rhs_imag = vol_dual * pairwise_sum(im_terms);
  // The dual form has the same box half-widths up to the factor sqrt(D/4).
  out.rhs_tail_bound = vol_dual * L * L / t *
                       detail::gaussian_tail_bound(xi_max, pi / t, std::sqrt(a) + 1.0, std::sqrt(c) + 1.0);
  return out;
}

/// Cardinality of {(u, v) : f(u - r/l, v - s/l) < f(u, v)/2} for reduced f,
/// enumerated inside {(u, v) : f(u - 2r/l, v - 2s/l) < 6c}, which contains it.
inline std::int64_t translation_exception_count(const QuadraticForm& f, std::int64_t ell, std::int64_t r,
                                                std::int64_t s) {
  if (!is_reduced(f)) throw Error(ErrorKind::invalid_argument, "translation count needs a reduced form");
  if (ell < 1) throw Error(ErrorKind::invalid_argument, "l must be >= 1");
  if (r < 0 || s < 0 || r >= ell || s >= ell) throw Error(ErrorKind::out_of_range, "(r, s) must lie in [0, l)^2");
  if (r == 0 && s == 0) throw Error(ErrorKind::out_of_range, "(r, s) = (0, 0) is excluded");
  const std::int64_t bound = checked_mul(checked_mul(6, f.c()), ell * ell);  // f(ul - 2r, vl - 2s) < bound
  const double D = static_cast<double>(f.D());
  const double vspan = std::sqrt(4.0 * f.a() * bound / D) + 1.0, uspan = std::sqrt(4.0 * f.c() * bound / D) + 1.0;
  const double L = static_cast<double>(ell);
  std::int64_t count = 0;
  for (auto v = static_cast<std::int64_t>(std::floor((2.0 * s - vspan) / L));
       v <= static_cast<std::int64_t>(std::ceil((2.0 * s + vspan) / L)); ++v) {
    for (auto u = static_cast<std::int64_t>(std::floor((2.0 * r - uspan) / L));
         u <= static_cast<std::int64_t>(std::ceil((2.0 * r + uspan) / L)); ++u) {
      if (f(u * ell - 2 * r, v * ell - 2 * s) >= bound) continue;
      // l^2 f(u - r/l, v - s/l) = f(ul - r, vl - s)
      if (2 * f(u * ell - r, v * ell - s) < ell * ell * f(u, v)) ++count;
    }
  }
  return count;
}

/// Radial profile min{r^2, 1, (x + y - r^2)/y} on [0, sqrt(x + y)], zero beyond.
struct TestFunctionG {
  double x;
  double y;

  TestFunctionG(double x_, double y_) : x(x_), y(y_) {
    if (!(x >= 1 && y >= 1)) throw Error(ErrorKind::invalid_argument, "G_{x,y} needs x, y >= 1");
  }

  double radius() const { return std::sqrt(x + y); }
};

inline double test_g(const TestFunctionG& tf, double r) {
  if (r < 0) throw Error(ErrorKind::invalid_argument, "r must be >= 0");
  const double r2 = r * r;
  if (r2 >= tf.x + tf.y) return 0.0;
  return std::min({r2, 1.0, (tf.x + tf.y - r2) / tf.y});
}

/// G^(0) = (x + y/2) pi - pi/2.
inline double ghat_zero_closed_form(double x, double y) {
  if (!(x >= 1 && y >= 1)) throw Error(ErrorKind::invalid_argument, "x, y must be >= 1");
  return (x + y / 2.0) * pi - pi / 2.0;
}

/// G^(xi) = 2 pi int_0^R r G(r) J0(2 pi r xi) dr. Panels are cut at the
/// kinks of G and at the asymptotic zeros of J0, integrated by adaptive
/// Gauss-Kronrod and combined by pairwise summation.
inline double hankel_transform_g(const TestFunctionG& tf, double xi, double tol = 1e-10) {
  if (xi < 0) throw Error(ErrorKind::invalid_argument, "xi must be >= 0");
  const double R = tf.radius();
  std::vector<double> cuts{0.0, 1.0, std::sqrt(tf.x), R};
  if (xi > 0) {
    const double spacing = 1.0 / (2.0 * xi);
    for (double m = 1.0;; m += 1.0) {
      const double z = (m - 0.25) * spacing;
      if (z >= R) break;
      cuts.push_back(z);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  const auto panels = cuts.size() - 1;
  auto integrand = [&](double r) { return r * test_g(tf, r) * bessel_j0(2.0 * pi * r * xi); };
  std::vector<double> parts;
  parts.reserve(panels);
  double err = 0.0;
  const double panel_tol = tol / (2.0 * pi * static_cast<double>(panels));
  for (std::size_t i = 0; i < panels; ++i) {
    const auto q = integrate_adaptive(integrand, cuts[i], cuts[i + 1], panel_tol);
    parts.push_back(q.value);
    err += q.error;
  }
  if (2.0 * pi * err > tol) throw Error(ErrorKind::no_convergence, "Hankel transform missed tolerance");
  return 2.0 * pi * pairwise_sum(parts);
}

/// sum over lattice points with l | f(w) of G_{x,y}(|w|), by enumeration.
inline double g_weighted_congruence_sum(const QuadraticForm& f, std::int64_t ell, const TestFunctionG& tf) {
  const auto top = static_cast<std::int64_t>(std::floor(tf.x + tf.y));
  std::vector<double> terms;
  for_each_lattice_point(f, 1, top, [&](std::int64_t, std::int64_t, std::int64_t n) {
    if (n % ell == 0) terms.push_back(test_g(tf, std::sqrt(static_cast<double>(n))));
  });
  return pairwise_sum(terms);
}

}  // namespace qflab
