#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qflab/error.hpp"
#include "qflab/numeric.hpp"
#include "qflab/parallel.hpp"

namespace qflab {

// ---------------------------------------------------------------------------
// Bandlimited family
//
//   H(x) = cos(2 pi x) sum_j a_j / ((2j-1)^2 - 16 x^2),   F(x) = H(x / lambda).
//
// Each term is the transform of a cosine window: with k = 2j - 1,
//
//   cos(2 pi x)/(k^2 - 16 x^2)  has transform  (-1)^(j-1) pi/(4k) cos(pi k t/2) on |t| <= 1,
//
// so H^ is a trigonometric polynomial supported on [-1, 1] and vanishing at
// the endpoints, and F^(t) = lambda H^(lambda t) is supported on [-1/lambda, 1/lambda].
// ---------------------------------------------------------------------------

inline double eval_H(std::span<const double> coeffs, double x) {
  x = std::abs(x);
  const double cos_term = std::cos(2.0 * pi * x);
  double sum = 0.0;
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    if (coeffs[j] == 0.0) continue;
    const double k = 2.0 * static_cast<double>(j) + 1.0;
    const double delta = x - k / 4.0;
    const double sign = j % 2 == 0 ? 1.0 : -1.0;
    if (std::abs(delta) < 0.25) {
      // cos(2 pi x) = -(-1)^(j-1) sin(2 pi delta) and k^2 - 16x^2 = -4 delta (k + 4x).
      const double u = 2.0 * pi * delta;
      double sinc;
      if (std::abs(delta) < 1e-4) {
        const double u2 = u * u;
        sinc = 1.0 - u2 / 6.0 + u2 * u2 / 120.0 - u2 * u2 * u2 / 5040.0;
      } else {
        sinc = std::sin(u) / u;
      }
      sum += coeffs[j] * sign * (pi / 2.0) * sinc / (k + 4.0 * x);
    } else {
      sum += coeffs[j] * cos_term / (k * k - 16.0 * x * x);
    }
  }
  return sum;
}

/// H^(t), exactly zero for |t| >= 1.
inline double hat_H(std::span<const double> coeffs, double t) {
  t = std::abs(t);
  if (t >= 1.0) return 0.0;
  double sum = 0.0;
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    const double k = 2.0 * static_cast<double>(j) + 1.0;
    const double sign = j % 2 == 0 ? 1.0 : -1.0;
    sum += coeffs[j] * sign * pi / (4.0 * k) * std::cos(pi * k * t / 2.0);
  }
  return sum;
}

/// int_0^t H^(s) ds for 0 <= t <= 1.
inline double hat_H_integral(std::span<const double> coeffs, double t) {
  double sum = 0.0;
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    const double k = 2.0 * static_cast<double>(j) + 1.0;
    const double sign = j % 2 == 0 ? 1.0 : -1.0;
    sum += coeffs[j] * sign / (2.0 * k * k) * std::sin(pi * k * t / 2.0);
  }
  return sum;
}

namespace detail {

/// d^m/dx^m of S(x) = sum_j a_j / (k^2 - 16 x^2), through the partial
/// fractions 1/(k^2 - 16x^2) = (1/(2k)) (1/(k - 4x) + 1/(k + 4x)).
inline double s_derivative(std::span<const double> coeffs, double x, int m) {
  double fact = 1.0;
  for (int i = 2; i <= m; ++i) fact *= i;
  const double four_m = std::pow(4.0, m);
  double sum = 0.0;
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    const double k = 2.0 * static_cast<double>(j) + 1.0;
    const double minus = four_m / std::pow(k - 4.0 * x, m + 1);
    const double plus = (m % 2 == 0 ? four_m : -four_m) / std::pow(k + 4.0 * x, m + 1);
    sum += coeffs[j] * fact * (minus + plus) / (2.0 * k);
  }
  return sum;
}

/// int_X^inf cos(w x) S(x) dx by repeated integration by parts, with a bound
/// on the dropped remainder.
inline Quadrature cos_tail(std::span<const double> coeffs, double X, double w) {
  const double s = std::sin(w * X), c = std::cos(w * X);
  const double value = -s * s_derivative(coeffs, X, 0) / w - c * s_derivative(coeffs, X, 1) / (w * w) +
                       s * s_derivative(coeffs, X, 2) / (w * w * w) +
                       c * s_derivative(coeffs, X, 3) / (w * w * w * w);
  return {value, 2.0 * std::abs(s_derivative(coeffs, X, 4)) / std::pow(w, 5)};
}

}  // namespace detail

/// H^(t) = 2 int_0^inf H(x) cos(2 pi x t) dx by Gauss-Legendre panels on
/// [0, 1000] and an integration-by-parts tail. Throws no_convergence when the
/// tail bound exceeds tol, which happens as |t| approaches 1.
inline double hat_H_quadrature(std::span<const double> coeffs, double t, double tol = 1e-9) {
  t = std::abs(t);
  constexpr double X = 1000.0;
  const double w1 = 2.0 * pi * (1.0 + t), w2 = 2.0 * pi * std::abs(1.0 - t);
  if (w2 == 0.0) throw Error(ErrorKind::no_convergence, "tolerance unreachable at |t| = 1");
  const auto tail1 = detail::cos_tail(coeffs, X, w1);
  const auto tail2 = detail::cos_tail(coeffs, X, w2);
  const double tail_error = tail1.error + tail2.error;
  if (tail_error > tol) throw Error(ErrorKind::no_convergence, "tolerance unreachable this close to |t| = 1");
  auto integrand = [&](double x) { return eval_H(coeffs, x) * std::cos(2.0 * pi * x * t); };
  const double width = 0.25 / std::max(1.0, 1.0 + t);
  const auto panels = static_cast<std::size_t>(std::ceil(X / width));
  std::vector<double> parts(panels + 1);
  for (std::size_t i = 0; i < panels; ++i)
    parts[i] = integrate_gl<20>(integrand, X * static_cast<double>(i) / static_cast<double>(panels),
                                X * static_cast<double>(i + 1) / static_cast<double>(panels));
  parts[panels] = 0.5 * (tail1.value + tail2.value);
  return 2.0 * pairwise_sum(parts);
}

/// Coefficients a_1..a_n and dilation lambda of F(x) = H(x / lambda).
class BandlimitedFn {
 public:
  BandlimitedFn(std::vector<double> coeffs, double lambda) : coeffs_(std::move(coeffs)), lambda_(lambda) {
    if (coeffs_.empty() || std::all_of(coeffs_.begin(), coeffs_.end(), [](double a) { return a == 0.0; }))
      throw Error(ErrorKind::invalid_argument, "at least one coefficient must be nonzero");
    if (!(lambda_ > 0.0 && lambda_ <= 1.2)) throw Error(ErrorKind::invalid_argument, "lambda must lie in (0, 1.2]");
  }

  const std::vector<double>& coeffs() const noexcept { return coeffs_; }
  double lambda() const noexcept { return lambda_; }

  double operator()(double x) const { return eval_H(coeffs_, x / lambda_); }
  double hat(double t) const { return lambda_ * hat_H(coeffs_, lambda_ * t); }

 private:
  std::vector<double> coeffs_;
  double lambda_;
};

struct FunctionalReport {
  double f_at_zero = 0;
  double l1_norm = 0;
  double tail_pos = 0;  // int_{|t|>1} (F^)_+
  double tail_abs = 0;  // int_{|t|>1} |F^|
  double A = 0;
  double j_plus = 0;
  double j_abs = 0;
  /// Certified bound on the part of ||F||_1 that was estimated rather than
  /// integrated; l1_norm + l1_tail_bound is an upper bound for ||F||_1.
  double l1_tail_bound = 0;

  /// ||F||_1 / (F(0) - A int (F^)_+): the factor entering the gap constant.
  double ratio() const { return l1_norm / (f_at_zero - A * tail_pos); }
};

/// The lambda-independent data of H: H(0) and ||H||_1.
struct BandlimitedProfile {
  std::vector<double> coeffs;
  double h0 = 0;
  double l1 = 0;
  double l1_tail_bound = 0;
};

inline constexpr double kDefaultL1Cutoff = 4000.0;

namespace detail {

/// int over [lo, hi] of |H|, splitting at interior sign changes.
template <int N>
double abs_panel(std::span<const double> coeffs, double lo, double hi, int probes) {
  auto h = [&](double x) { return eval_H(coeffs, x); };
  std::vector<double> cuts{lo};
  if (probes > 0)
    for (double r : sign_changes(h, lo, hi, probes)) cuts.push_back(r);
  cuts.push_back(hi);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    total += std::abs(integrate_gl<N>(h, cuts[i], cuts[i + 1]));
  return total;
}

}  // namespace detail

/// ||H||_1 by Gauss-Legendre on the quarter-period panels between zeros of
/// cos(2 pi x) (which also contain the removable poles of the sum) out to
/// `cutoff`, plus the mean-value estimate (2/pi)|int_cutoff^inf S| of the
/// remainder, where H = cos(2 pi x) S(x).
inline BandlimitedProfile bandlimited_profile(std::span<const double> coeffs,
                                              double cutoff = kDefaultL1Cutoff) {
  BandlimitedProfile p;
  p.coeffs.assign(coeffs.begin(), coeffs.end());
  p.h0 = eval_H(coeffs, 0.0);
  const auto panels = static_cast<int>(std::floor(2.0 * cutoff - 0.5));
  std::vector<double> parts;
  parts.reserve(static_cast<std::size_t>(panels) + 1);
  parts.push_back(detail::abs_panel<20>(coeffs, 0.0, 0.25, 16));
  for (int m = 1; m <= panels; ++m) {
    const double lo = (2.0 * m - 1.0) / 4.0, hi = lo + 0.5;
    if (hi < 30.0)
      parts.push_back(detail::abs_panel<20>(coeffs, lo, hi, 16));
    else
      parts.push_back(detail::abs_panel<12>(coeffs, lo, hi, 2));
  }
  const double X0 = (2.0 * panels + 1.0) / 4.0;
  double tail_integral = 0.0, tail_bound = 0.0;
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    const double k = 2.0 * static_cast<double>(j) + 1.0;
    const double log_ratio = std::log((4.0 * X0 - k) / (4.0 * X0 + k)) / (8.0 * k);
    tail_integral += coeffs[j] * log_ratio;
    tail_bound += std::abs(coeffs[j]) * -log_ratio;
  }
  parts.push_back(2.0 / pi * std::abs(tail_integral));
  p.l1 = 2.0 * pairwise_sum(parts);
  p.l1_tail_bound = 2.0 * std::max(0.0, tail_bound - 2.0 / pi * std::abs(tail_integral));
  return p;
}

inline BandlimitedProfile bandlimited_profile(const BandlimitedFn& fn, double cutoff = kDefaultL1Cutoff) {
  return bandlimited_profile(fn.coeffs(), cutoff);
}

struct HatTails {
  double pos = 0;
  double abs = 0;
};

/// int_{|t|>1} (F^)_+ and |F^| for F = H(./lambda); substituting s = lambda t
/// gives 2 int_lambda^1 of the same quantity for H^, independent of the
/// Jacobian.
inline HatTails hat_tails(std::span<const double> coeffs, double lambda) {
  HatTails out;
  if (lambda >= 1.0) return out;
  auto h = [&](double s) { return hat_H(coeffs, s); };
  const int samples = 64 + 128 * static_cast<int>(coeffs.size());
  std::vector<double> cuts{lambda};
  for (double r : sign_changes(h, lambda, 1.0, samples)) cuts.push_back(r);
  cuts.push_back(1.0);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double piece = hat_H_integral(coeffs, cuts[i + 1]) - hat_H_integral(coeffs, cuts[i]);
    if (piece > 0) out.pos += piece;
    out.abs += std::abs(piece);
  }
  out.pos *= 2.0;
  out.abs *= 2.0;
  return out;
}

inline FunctionalReport report_from_profile(const BandlimitedProfile& p, double lambda, double A) {
  if (!(A >= 1.0)) throw Error(ErrorKind::invalid_argument, "A must be >= 1");
  FunctionalReport r;
  const auto tails = hat_tails(p.coeffs, lambda);
  r.A = A;
  r.f_at_zero = p.h0;
  r.l1_norm = lambda * p.l1;
  r.l1_tail_bound = lambda * p.l1_tail_bound;
  r.tail_pos = tails.pos;
  r.tail_abs = tails.abs;
  r.j_plus = (r.f_at_zero - A * r.tail_pos) / r.l1_norm;
  r.j_abs = (std::abs(r.f_at_zero) - A * r.tail_abs) / r.l1_norm;
  return r;
}

/// F(0), ||F||_1, both tail integrals and J_A, J_A^+ for F = H(./lambda),
/// through F(0) = H(0), ||F||_1 = lambda ||H||_1 and F^(t) = lambda H^(lambda t).
inline FunctionalReport functional_report(const BandlimitedFn& fn, double A, double cutoff = kDefaultL1Cutoff) {
  return report_from_profile(bandlimited_profile(fn, cutoff), fn.lambda(), A);
}

/// 2 (delta + alpha) h / delta * ||F||_1 / (F(0) - A int (F^)_+).
inline double gap_constant(const FunctionalReport& r, double alpha, double delta_f, std::int64_t h) {
  if (!(alpha >= 0)) throw Error(ErrorKind::invalid_argument, "alpha must be >= 0");
  if (!(delta_f == 0.5 || delta_f == 1.0)) throw Error(ErrorKind::invalid_argument, "delta_f must be 1/2 or 1");
  if (h < 1) throw Error(ErrorKind::invalid_argument, "h must be >= 1");
  const double denom = r.f_at_zero - r.A * r.tail_pos;
  if (!(denom > 0))
    throw Error(ErrorKind::inadmissible, "F(0) - A int (F^)_+ is not positive for this A");
  return 2.0 * (delta_f + alpha) * static_cast<double>(h) / delta_f * r.l1_norm / denom;
}

inline double gap_constant(const BandlimitedFn& fn, double A, double alpha, double delta_f, std::int64_t h) {
  return gap_constant(functional_report(fn, A), alpha, delta_f, h);
}

// ---------------------------------------------------------------------------
// Greedy search
// ---------------------------------------------------------------------------

inline constexpr double kLambdaMin = 0.1;
inline constexpr double kLambdaMax = 1.05;

struct LambdaChoice {
  double lambda = 1.0;
  double j_plus = -1e300;
};

/// Best dilation for fixed coefficients: a coarse scan of [0.1, 1.05]
/// followed by golden-section refinement around the best cell.
inline LambdaChoice best_lambda(const BandlimitedProfile& p, double A) {
  auto objective = [&](double lambda) {
    const auto t = hat_tails(p.coeffs, lambda);
    return (p.h0 - A * t.pos) / (lambda * p.l1);
  };
  constexpr int kScan = 39;
  LambdaChoice best;
  for (int i = 0; i < kScan; ++i) {
    const double lambda = kLambdaMin + (kLambdaMax - kLambdaMin) * i / (kScan - 1);
    const double v = objective(lambda);
    if (v > best.j_plus) best = {lambda, v};
  }
  const double step = (kLambdaMax - kLambdaMin) / (kScan - 1);
  const double lo = std::max(kLambdaMin, best.lambda - step), hi = std::min(kLambdaMax, best.lambda + step);
  const double refined = golden_section_max(objective, lo, hi, 70);
  const double v = objective(refined);
  if (v > best.j_plus) best = {refined, v};
  return best;
}

struct SearchResult {
  BandlimitedFn fn;
  FunctionalReport report;
  bool budget_exhausted = false;
  int sweeps = 0;
  int evaluations = 0;
};

struct SearchOptions {
  int budget = 400;  // sweeps per seed
  double search_cutoff = 1000.0;
  std::vector<std::vector<double>> seeds;  // empty: scaled unit vectors
  unsigned threads = thread_count();
};

/// Steepest coordinate ascent on integer coefficients with steps
/// {+-1, +-3, +-9, +-27}, the dilation re-optimised for every candidate.
/// Runs from each seed and keeps the best; ties go to the lexicographically
/// smallest coefficient vector.
inline SearchResult greedy_search(double A, int n_terms, const SearchOptions& opt = {}) {
  if (!(A >= 1.0)) throw Error(ErrorKind::invalid_argument, "A must be >= 1");
  if (n_terms < 1 || n_terms > 5) throw Error(ErrorKind::invalid_argument, "n_terms must be in [1, 5]");
  std::vector<std::vector<double>> seeds = opt.seeds;
  if (seeds.empty())
    for (double s : {27.0, 81.0, 243.0}) {
      std::vector<double> v(static_cast<std::size_t>(n_terms), 0.0);
      v[0] = s;
      seeds.push_back(v);
    }
  static constexpr std::array<double, 8> kSteps{27, 9, 3, 1, -1, -3, -9, -27};

  struct Candidate {
    std::vector<double> coeffs;
    LambdaChoice choice;
  };
  auto evaluate = [&](const std::vector<double>& c) {
    return Candidate{c, best_lambda(bandlimited_profile(c, opt.search_cutoff), A)};
  };
  auto better = [](const Candidate& x, const Candidate& y) {
    if (x.choice.j_plus != y.choice.j_plus) return x.choice.j_plus > y.choice.j_plus;
    return x.coeffs < y.coeffs;
  };

  std::optional<Candidate> overall;
  bool exhausted = false;
  int sweeps = 0, evaluations = 0;
  for (auto seed : seeds) {
    seed.resize(static_cast<std::size_t>(n_terms), 0.0);
    Candidate current = evaluate(seed);
    ++evaluations;
    int s = 0;
    for (; s < opt.budget; ++s) {
      std::vector<std::vector<double>> moves;
      for (int i = 0; i < n_terms; ++i)
        for (double st : kSteps) {
          auto c = current.coeffs;
          c[static_cast<std::size_t>(i)] += st;
          if (std::any_of(c.begin(), c.end(), [](double a) { return a != 0.0; })) moves.push_back(std::move(c));
        }
      auto results = parallel_map<Candidate>(moves.size(), [&](std::size_t i) { return evaluate(moves[i]); },
                                             opt.threads);
      evaluations += static_cast<int>(results.size());
      const auto best = std::min_element(results.begin(), results.end(), better);
      if (best->choice.j_plus <= current.choice.j_plus + 1e-12) break;
      current = *best;
    }
    sweeps += s;
    if (s == opt.budget) exhausted = true;
    if (!overall || better(current, *overall)) overall = current;
  }
  BandlimitedFn fn(overall->coeffs, overall->choice.lambda);
  return {fn, functional_report(fn, A), exhausted, sweeps, evaluations};
}

// ---------------------------------------------------------------------------
// Gaussian-polynomial family F(x) = P(x) exp(-pi x^2)
// ---------------------------------------------------------------------------

/// P(x) exp(-pi x^2) with P given by monomial coefficients p_0..p_n.
class GaussPolyFn {
 public:
  explicit GaussPolyFn(std::vector<double> poly_coeffs) : p_(std::move(poly_coeffs)) {
    if (p_.empty() || std::all_of(p_.begin(), p_.end(), [](double a) { return a == 0.0; }))
      throw Error(ErrorKind::invalid_argument, "polynomial must not vanish identically");
    hermite_ = to_hermite(p_);
  }

  const std::vector<double>& poly_coeffs() const noexcept { return p_; }
  /// c_k with P(x) = sum_k c_k H_k(sqrt(2 pi) x), H_k the physicists' Hermite polynomials.
  const std::vector<double>& hermite_coeffs() const noexcept { return hermite_; }

  double poly(double x) const {
    double s = 0.0;
    for (auto it = p_.rbegin(); it != p_.rend(); ++it) s = s * x + *it;
    return s;
  }

  double operator()(double x) const { return poly(x) * std::exp(-pi * x * x); }

  /// F^(t) = exp(-pi t^2) sum_k c_k (-i)^k H_k(sqrt(2 pi) t): each Hermite
  /// function is an eigenfunction of the transform.
  std::complex<double> hat(double t) const {
    const double y = std::sqrt(2.0 * pi) * t;
    double h0 = 1.0, h1 = 2.0 * y;
    double re = 0.0, im = 0.0;
    for (std::size_t k = 0; k < hermite_.size(); ++k) {
      const double hk = k == 0 ? h0 : h1;
      switch (k % 4) {
        case 0: re += hermite_[k] * hk; break;
        case 1: im -= hermite_[k] * hk; break;
        case 2: re -= hermite_[k] * hk; break;
        case 3: im += hermite_[k] * hk; break;
      }
      if (k >= 1) {
        const double next = 2.0 * y * h1 - 2.0 * static_cast<double>(k) * h0;
        h0 = h1;
        h1 = next;
      }
    }
    const double g = std::exp(-pi * t * t);
    return {re * g, im * g};
  }

 private:
  static std::vector<double> to_hermite(const std::vector<double>& p) {
    // y^m in the Hermite basis, from y H_k = H_{k+1}/2 + k H_{k-1}.
    const std::size_t n = p.size();
    std::vector<double> out(n, 0.0), power{1.0};
    const double scale = 1.0 / std::sqrt(2.0 * pi);
    double s = 1.0;
    for (std::size_t m = 0; m < n; ++m) {
      for (std::size_t k = 0; k < power.size(); ++k) out[k] += p[m] * s * power[k];
      std::vector<double> next(power.size() + 1, 0.0);
      for (std::size_t k = 0; k < power.size(); ++k) {
        next[k + 1] += power[k] / 2.0;
        if (k >= 1) next[k - 1] += static_cast<double>(k) * power[k];
      }
      power = std::move(next);
      s *= scale;
    }
    return out;
  }

  std::vector<double> p_;
  std::vector<double> hermite_;
};

namespace detail {

inline constexpr double kGaussSpan = 10.0;

/// int_lo^hi of |f|, cut at the sign changes of each of the given real
/// functions.
template <class Abs, class... Signs>
double split_abs_integral(Abs&& abs_f, double lo, double hi, double tol, Signs&&... signs) {
  std::vector<double> cuts{lo, hi};
  (
      [&] {
        for (double r : sign_changes(signs, lo, hi, 800)) cuts.push_back(r);
      }(),
      ...);
  std::sort(cuts.begin(), cuts.end());
  std::vector<double> parts;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    parts.push_back(integrate_adaptive(abs_f, cuts[i], cuts[i + 1], tol / static_cast<double>(cuts.size())).value);
  return pairwise_sum(parts);
}

}  // namespace detail

inline double gauss_poly_l1(const GaussPolyFn& fn, double lo = -detail::kGaussSpan, double hi = detail::kGaussSpan) {
  return detail::split_abs_integral([&](double x) { return std::abs(fn(x)); }, lo, hi, 1e-12,
                                    [&](double x) { return fn(x); });
}

/// Report for P(x) exp(-pi x^2). (F^)_+ is taken on the real part, which is
/// all of F^ when P is even.
inline FunctionalReport gauss_poly_report(const GaussPolyFn& fn, double A) {
  if (!(A >= 1.0)) throw Error(ErrorKind::invalid_argument, "A must be >= 1");
  FunctionalReport r;
  r.A = A;
  r.f_at_zero = fn.poly_coeffs()[0];
  r.l1_norm = gauss_poly_l1(fn);
  constexpr double L = detail::kGaussSpan;
  auto re = [&](double t) { return fn.hat(t).real(); };
  auto im = [&](double t) { return fn.hat(t).imag(); };
  auto mag = [&](double t) { return std::abs(fn.hat(t)); };
  auto pos = [&](double t) { return std::max(0.0, fn.hat(t).real()); };
  r.tail_abs = detail::split_abs_integral(mag, 1.0, L, 1e-12, re, im) +
               detail::split_abs_integral(mag, -L, -1.0, 1e-12, re, im);
  r.tail_pos = detail::split_abs_integral(pos, 1.0, L, 1e-12, re) +
               detail::split_abs_integral(pos, -L, -1.0, 1e-12, re);
  r.j_plus = (r.f_at_zero - A * r.tail_pos) / r.l1_norm;
  r.j_abs = (std::abs(r.f_at_zero) - A * r.tail_abs) / r.l1_norm;
  return r;
}

/// int_{-1}^{1} |F| / int |F|.
inline double concentration_ratio(const GaussPolyFn& fn) {
  return gauss_poly_l1(fn, -1.0, 1.0) / gauss_poly_l1(fn);
}

struct ConcentrationEstimate {
  double ratio = 0;
  std::vector<double> poly_coeffs;
};

/// Lower estimate of D_n = max over deg P <= n of int_{-1}^1 |F| / int |F|,
/// by coordinate ascent on the unit sphere of monomial coefficients. Degrees
/// 0..n are optimised in turn, each starting from the previous optimum, so
/// the estimates never decrease with n.
inline std::vector<ConcentrationEstimate> dn_estimates(int n, int budget = 200) {
  if (n < 0 || n > 8) throw Error(ErrorKind::invalid_argument, "n must be in [0, 8]");
  std::vector<ConcentrationEstimate> out;
  std::vector<double> p{1.0};
  auto normalise = [](std::vector<double>& v) {
    double s = 0;
    for (double a : v) s += a * a;
    s = std::sqrt(s);
    for (double& a : v) a /= s;
  };
  for (int deg = 0; deg <= n; ++deg) {
    p.resize(static_cast<std::size_t>(deg) + 1, 0.0);
    double best = concentration_ratio(GaussPolyFn(p));
    double step = 0.5;
    for (int it = 0; it < budget && step > 1e-7; ++it) {
      bool improved = false;
      for (std::size_t i = 0; i < p.size(); ++i) {
        for (double dir : {1.0, -1.0}) {
          auto trial = p;
          trial[i] += dir * step;
          if (std::all_of(trial.begin(), trial.end(), [](double a) { return a == 0.0; })) continue;
          normalise(trial);
          const double v = concentration_ratio(GaussPolyFn(trial));
          if (v > best + 1e-13) {
            best = v;
            p = trial;
            improved = true;
          }
        }
      }
      if (!improved) step /= 2.0;
    }
    if (!out.empty()) best = std::max(best, out.back().ratio);
    out.push_back({best, p});
  }
  return out;
}

inline double dn_estimate(int n, int budget = 200) { return dn_estimates(n, budget).back().ratio; }

// ---------------------------------------------------------------------------
// Published bandlimited parameter sets (A, C+(A) lower bound, a1..a3, lambda).
// ---------------------------------------------------------------------------

struct PublishedRow {
  double A;
  double c_plus;
  std::array<double, 3> coeffs;
  double lambda;
};

inline const std::vector<PublishedRow>& published_rows() {
  static const std::vector<PublishedRow> rows = {
      {1.0, 1.9602, {81, -69, 0}, 0.100000},     {1.5, 1.3430, {189, -63, -20}, 0.660234},
      {2.0, 1.2417, {243, -57, -20}, 0.765530},  {2.5, 1.1972, {216, -39, -20}, 0.819517},
      {3.0, 1.1719, {216, -27, -20}, 0.852929},  {3.5, 1.1555, {216, -18, -20}, 0.875775},
      {4.0, 1.1439, {243, -15, -20}, 0.892422},  {4.5, 1.1355, {270, -9, -20}, 0.905109},
      {5.0, 1.1290, {297, -6, -20}, 0.915104},   {5.5, 1.1239, {324, -3, -20}, 0.923186},
      {6.0, 1.1198, {378, 0, -20}, 0.929858},    {6.5, 1.1164, {405, 3, -20}, 0.935461},
      {7.0, 1.1136, {243, 3, -10}, 0.940232},    {7.5, 1.1112, {297, 6, -12}, 0.944345},
      {8.0, 1.1091, {270, 6, -9}, 0.947928},     {8.5, 1.1073, {216, 6, -7}, 0.951076},
      {9.0, 1.1058, {297, 9, -8}, 0.953865},     {9.5, 1.1044, {270, 9, -7}, 0.956353},
      {10.0, 1.1031, {243, 9, -5}, 0.958586},    {10.5, 1.1020, {297, 12, -6}, 0.960601},
      {11.0, 1.1010, {270, 12, -5}, 0.962429},   {11.5, 1.1001, {270, 12, -4}, 0.964095},
      {12.0, 1.0993, {243, 12, -3}, 0.965619},   {12.5, 1.0985, {243, 12, -3}, 0.967019},
      {13.0, 1.0978, {297, 15, -3}, 0.968309},   {13.5, 1.0972, {297, 15, -2}, 0.969502},
      {14.0, 1.0966, {270, 15, -2}, 0.970609},   {14.5, 1.0960, {270, 15, -1}, 0.971638},
      {15.0, 1.0955, {270, 15, -1}, 0.972597},   {15.5, 1.0951, {270, 15, -1}, 0.973494},
      {16.0, 1.0946, {243, 15, 0}, 0.974334},    {16.5, 1.0942, {243, 15, 0}, 0.975122},
      {17.0, 1.0938, {243, 15, 0}, 0.975863},    {17.5, 1.0935, {297, 18, 0}, 0.976561},
      {18.0, 1.0931, {297, 18, 1}, 0.977220},    {18.5, 1.0928, {297, 18, 1}, 0.977843},
      {19.0, 1.0925, {270, 18, 1}, 0.978433},    {19.5, 1.0922, {270, 18, 1}, 0.978992},
      {20.0, 1.0919, {270, 18, 1}, 0.979523},    {20.5, 1.0917, {270, 18, 2}, 0.980027},
      {21.0, 1.0914, {270, 18, 2}, 0.980508},    {21.5, 1.0912, {270, 18, 2}, 0.980966},
      {22.0, 1.0909, {270, 18, 2}, 0.981402},    {22.5, 1.0907, {270, 18, 2}, 0.981820},
      {23.0, 1.0905, {270, 18, 2}, 0.982219},    {23.5, 1.0903, {270, 18, 2}, 0.982600},
      {24.0, 1.0901, {270, 18, 3}, 0.982966},    {24.5, 1.0900, {243, 18, 2}, 0.983317},
      {25.0, 1.0898, {243, 18, 3}, 0.983653},    {25.5, 1.0896, {243, 18, 3}, 0.983976},
      {26.0, 1.0895, {243, 18, 3}, 0.984287},    {26.5, 1.0893, {297, 21, 4}, 0.984586},
      {27.0, 1.0892, {297, 21, 4}, 0.984874},    {27.5, 1.0890, {297, 21, 4}, 0.985151},
      {28.0, 1.0889, {68, 5, 1}, 0.986440},      {28.5, 1.0888, {297, 21, 4}, 0.985676},
      {29.0, 1.0886, {297, 21, 4}, 0.985924},    {29.5, 1.0885, {297, 21, 4}, 0.986165},
      {30.0, 1.0884, {270, 21, 4}, 0.986397},    {30.5, 1.0883, {270, 21, 4}, 0.986622},
      {31.0, 1.0882, {270, 21, 4}, 0.986839},    {31.5, 1.0881, {270, 21, 4}, 0.987049},
      {32.0, 1.0880, {270, 21, 4}, 0.987253},    {32.5, 1.0879, {270, 21, 4}, 0.987450},
      {33.0, 1.0878, {270, 21, 4}, 0.987642},    {33.5, 1.0877, {270, 21, 4}, 0.987827},
      {34.0, 1.0876, {270, 21, 4}, 0.988007},    {34.5, 1.0875, {270, 21, 4}, 0.988182},
  };
  return rows;
}

/// The function behind the Cramer-type constant: {68, 5, 1} at lambda = 0.98644.
inline BandlimitedFn cramer_function() { return BandlimitedFn({68.0, 5.0, 1.0}, 0.98644); }

}  // namespace qflab
