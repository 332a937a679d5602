#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>
#include <vector>

#include "qflab/error.hpp"
#include "qflab/numeric.hpp"
#include "qflab/rational.hpp"

namespace qflab {

/// Positive definite binary quadratic form a u^2 + b uv + c v^2.
class QuadraticForm {
 public:
  QuadraticForm(std::int64_t a, std::int64_t b, std::int64_t c) : a_(a), b_(b), c_(c) {
    const int128 disc = static_cast<int128>(b) * b - static_cast<int128>(4) * a * c;
    if (a < 1 || c < 1 || disc >= 0)
      throw Error(ErrorKind::not_positive_definite,
                  "form (" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) +
                      ") is not positive definite");
    if (-disc > static_cast<int128>(INT64_MAX) / 4)
      throw Error(ErrorKind::budget_exceeded, "discriminant does not fit in 62 bits");
    d_ = static_cast<std::int64_t>(-disc);
  }

  std::int64_t a() const noexcept { return a_; }
  std::int64_t b() const noexcept { return b_; }
  std::int64_t c() const noexcept { return c_; }

  /// D = 4ac - b^2 (so the discriminant is -D).
  std::int64_t D() const noexcept { return d_; }

  /// f(u, v), exact. Callers keep |u|,|v| small enough that this fits.
  std::int64_t operator()(std::int64_t u, std::int64_t v) const {
    const int128 r = static_cast<int128>(a_) * u * u + static_cast<int128>(b_) * u * v +
                       static_cast<int128>(c_) * v * v;
    if (r > INT64_MAX) throw Error(ErrorKind::budget_exceeded, "form value overflows 64 bits");
    return static_cast<std::int64_t>(r);
  }

  /// f at real arguments.
  double eval(double u, double v) const {
    return static_cast<double>(a_) * u * u + static_cast<double>(b_) * u * v +
           static_cast<double>(c_) * v * v;
  }

  auto operator<=>(const QuadraticForm& o) const {
    return std::tie(a_, b_, c_) <=> std::tie(o.a_, o.b_, o.c_);
  }
  bool operator==(const QuadraticForm& o) const = default;

  friend std::ostream& operator<<(std::ostream& os, const QuadraticForm& f) {
    return os << '(' << f.a_ << ',' << f.b_ << ',' << f.c_ << ')';
  }

 private:
  std::int64_t a_, b_, c_;
  std::int64_t d_ = 0;
};

inline std::string to_string(const QuadraticForm& f) {
  return "(" + std::to_string(f.a()) + "," + std::to_string(f.b()) + "," + std::to_string(f.c()) + ")";
}

/// b^2 - 4ac.
inline std::int64_t discriminant(const QuadraticForm& f) { return -f.D(); }

inline bool is_primitive(const QuadraticForm& f) {
  return std::gcd(std::gcd(f.a(), f.b()), f.c()) == 1;
}

inline bool is_reduced(const QuadraticForm& f) {
  const auto a = f.a(), b = f.b(), c = f.c();
  if (!(std::abs(b) <= a && a <= c)) return false;
  if ((std::abs(b) == a || a == c) && b < 0) return false;
  return true;
}

/// Gauss reduction: translate b into (-a, a], swap when a > c, repeat.
inline QuadraticForm reduce(const QuadraticForm& f) {
  std::int64_t a = f.a(), b = f.b(), c = f.c();
  for (;;) {
    // u -> u + k v sends (a, b, c) to (a, b + 2ak, ak^2 + bk + c).
    const std::int64_t k = floor_div(-a - b, 2 * a) + 1;
    if (k != 0) {
      const int128 nc = static_cast<int128>(a) * k * k + static_cast<int128>(b) * k + c;
      b += 2 * a * k;
      c = static_cast<std::int64_t>(nc);
    }
    if (a > c) {
      std::swap(a, c);
      b = -b;
      continue;
    }
    if (a == c && b < 0) b = -b;
    break;
  }
  return QuadraticForm(a, b, c);
}

/// The reduced primitive forms of discriminant -D, sorted by (a, b, c).
struct FormClassSet {
  std::int64_t D = 0;
  std::vector<QuadraticForm> forms;

  std::size_t class_number() const { return forms.size(); }
};

inline bool is_valid_discriminant(std::int64_t D) { return D >= 3 && (D % 4 == 0 || D % 4 == 3); }

inline FormClassSet enumerate_reduced_forms(std::int64_t D) {
  if (!is_valid_discriminant(D))
    throw Error(ErrorKind::invalid_discriminant,
                "no forms of discriminant -" + std::to_string(D) + " (need D >= 3, D = 0,3 mod 4)");
  FormClassSet out{D, {}};
  const auto amax = static_cast<std::int64_t>(isqrt(static_cast<std::uint64_t>(D / 3)));
  for (std::int64_t a = 1; a <= amax; ++a) {
    for (std::int64_t b = -a; b <= a; ++b) {
      const std::int64_t num = b * b + D;
      if (num % (4 * a) != 0) continue;
      const std::int64_t c = num / (4 * a);
      if (c < a) continue;
      QuadraticForm f(a, b, c);
      if (is_reduced(f) && is_primitive(f)) out.forms.push_back(f);
    }
  }
  return out;
}

inline std::int64_t class_number(std::int64_t D) {
  return static_cast<std::int64_t>(enumerate_reduced_forms(D).class_number());
}

/// Number of (u, v) in Z^2 with f(u, v) = n, from 4a f = (2au + bv)^2 + D v^2.
inline std::int64_t rf(const QuadraticForm& f, std::int64_t n) {
  if (n < 0) throw Error(ErrorKind::invalid_argument, "rf needs n >= 0");
  if (n == 0) return 1;
  const std::int64_t a = f.a(), b = f.b(), D = f.D();
  const std::int64_t four_an = checked_mul(checked_mul(4, a), n);
  const auto vmax = static_cast<std::int64_t>(isqrt(static_cast<std::uint64_t>(four_an / D)));
  std::int64_t count = 0;
  for (std::int64_t v = -vmax; v <= vmax; ++v) {
    const std::int64_t m = four_an - D * v * v;
    if (m < 0) continue;
    const auto s = static_cast<std::int64_t>(isqrt(static_cast<std::uint64_t>(m)));
    if (s * s != m) continue;
    // 2au + bv = +-s
    for (std::int64_t sign : {1, -1}) {
      if (s == 0 && sign == -1) break;
      const std::int64_t t = sign * s - b * v;
      if (mod_floor(t, 2 * a) == 0) ++count;
    }
  }
  return count;
}

/// 1/2 when f(u, v) is properly equivalent to f(u, -v), else 1.
inline Rational delta_f(const QuadraticForm& f) {
  if (!is_primitive(f)) throw Error(ErrorKind::not_primitive, "delta_f needs a primitive form");
  const auto mirrored = reduce(QuadraticForm(f.a(), -f.b(), f.c()));
  return mirrored == reduce(f) ? Rational(1, 2) : Rational(1);
}

/// Number of proper automorphs w.
inline int unit_count(std::int64_t D) {
  if (!is_valid_discriminant(D))
    throw Error(ErrorKind::invalid_discriminant, "unit_count needs a valid discriminant");
  if (D == 3) return 6;
  if (D == 4) return 4;
  return 2;
}

struct Vec2 {
  double x = 0.0, y = 0.0;

  friend Vec2 operator+(Vec2 p, Vec2 q) { return {p.x + q.x, p.y + q.y}; }
  friend Vec2 operator-(Vec2 p, Vec2 q) { return {p.x - q.x, p.y - q.y}; }
  friend Vec2 operator*(double s, Vec2 p) { return {s * p.x, s * p.y}; }
  double dot(Vec2 q) const { return x * q.x + y * q.y; }
  double norm2() const { return x * x + y * y; }
};

/// Basis of a planar lattice with |u w1 + v w2|^2 = f(u, v), plus the dual
/// basis normalised so that w_i . dual_j = delta_ij.
struct FormLattice {
  Vec2 omega1, omega2;
  Vec2 dual1, dual2;

  double dual_cell_area() const { return std::abs(dual1.x * dual2.y - dual1.y * dual2.x); }
};

inline FormLattice lattice_basis(const QuadraticForm& f) {
  const double a = static_cast<double>(f.a()), b = static_cast<double>(f.b()),
               c = static_cast<double>(f.c()), D = static_cast<double>(f.D());
  const double ra = std::sqrt(a);
  FormLattice L;
  L.omega1 = {ra, 0.0};
  L.omega2 = {b / (2.0 * ra), std::sqrt(D) / (2.0 * ra)};
  L.dual1 = (4.0 * c / D) * L.omega1 - (2.0 * b / D) * L.omega2;
  L.dual2 = (4.0 * a / D) * L.omega2 - (2.0 * b / D) * L.omega1;
  return L;
}

}  // namespace qflab
