#pragma once

// Long Weierstrass models Y^2 + a1 XY + a3 Y = X^3 + a2 X^2 + a4 X + a6,
// the chord-tangent law on them (exact over Q, numeric over C), and the
// three curve families attached to the polynomial families.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rlab/complex_roots.hpp"
#include "rlab/errors.hpp"
#include "rlab/rational.hpp"
#include "rlab/upoly.hpp"

namespace rlab {

using cld = std::complex<long double>;

enum class CurveKind { Ek, Uk, Fk };

inline std::string curve_kind_name(CurveKind c) {
  switch (c) {
    case CurveKind::Ek: return "E";
    case CurveKind::Uk: return "U";
    case CurveKind::Fk: return "F";
  }
  return "?";
}

inline CurveKind curve_kind_from_name(std::string_view s) {
  if (s == "E" || s == "Ek") return CurveKind::Ek;
  if (s == "U" || s == "Uk") return CurveKind::Uk;
  if (s == "F" || s == "Fk") return CurveKind::Fk;
  throw DomainError("unknown curve kind '" + std::string(s) + "'");
}

struct CurveLabel {
  CurveKind kind;
  Rational k;
};

struct WeierstrassCurve {
  Rational a1, a2, a3, a4, a6;
  std::optional<CurveLabel> label;

  Rational b2() const { return a1 * a1 + 4 * a2; }
  Rational b4() const { return a1 * a3 + 2 * a4; }
  Rational b6() const { return a3 * a3 + 4 * a6; }
  Rational b8() const { return a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4; }
  Rational c4() const { return b2() * b2() - 24 * b4(); }
  Rational c6() const { return -b2() * b2() * b2() + 36 * b2() * b4() - 216 * b6(); }
  Rational discriminant() const {
    const Rational B2 = b2(), B4 = b4(), B6 = b6(), B8 = b8();
    return -B2 * B2 * B8 - 8 * B4 * B4 * B4 - 27 * B6 * B6 + 9 * B2 * B4 * B6;
  }
  Rational j_invariant() const {
    const Rational d = discriminant();
    if (d == 0) throw SingularCurveError("j-invariant of a singular curve");
    return c4() * c4() * c4() / d;
  }

  /// X^3 + a2 X^2 + a4 X + a6
  QPoly rhs() const { return QPoly({a6, a4, a2, Rational(1)}); }
  /// 4X^3 + b2 X^2 + 2 b4 X + b6, whose roots are the X of 2-torsion points
  QPoly two_division() const { return QPoly({b6(), 2 * b4(), b2(), Rational(4)}); }

  Rational residual(const Rational& x, const Rational& y) const {
    return y * y + a1 * x * y + a3 * y - (((x + a2) * x + a4) * x + a6);
  }
  template <class Real>
  std::complex<Real> residual(std::complex<Real> x, std::complex<Real> y) const {
    const Real A1 = to_real<Real>(a1), A2 = to_real<Real>(a2), A3 = to_real<Real>(a3), A4 = to_real<Real>(a4),
               A6 = to_real<Real>(a6);
    return y * y + A1 * x * y + A3 * y - (((x + A2) * x + A4) * x + A6);
  }
  /// sum of the absolute sizes of the terms, the scale for relative residuals
  template <class Real>
  Real residual_scale(std::complex<Real> x, std::complex<Real> y) const {
    const Real ax = std::abs(x), ay = std::abs(y);
    return ay * ay + std::fabs(to_real<Real>(a1)) * ax * ay + std::fabs(to_real<Real>(a3)) * ay + ax * ax * ax +
           std::fabs(to_real<Real>(a2)) * ax * ax + std::fabs(to_real<Real>(a4)) * ax + std::fabs(to_real<Real>(a6)) +
           Real(1);
  }

  friend bool operator==(const WeierstrassCurve& a, const WeierstrassCurve& b) {
    return a.a1 == b.a1 && a.a2 == b.a2 && a.a3 == b.a3 && a.a4 == b.a4 && a.a6 == b.a6;
  }
};

inline std::string to_string(const WeierstrassCurve& e) {
  return "[" + to_string(e.a1) + "," + to_string(e.a2) + "," + to_string(e.a3) + "," + to_string(e.a4) + "," +
         to_string(e.a6) + "]";
}

/// Equation text "Y^2 + a1*X*Y + a3*Y = X^3 + a2*X^2 + a4*X + a6" with zero terms dropped.
inline std::string equation_string(const WeierstrassCurve& e) {
  auto term = [](const Rational& c, const std::string& mono, std::string& out) {
    if (c == 0) return;
    const bool neg = c < 0;
    const Rational a = neg ? Rational(-c) : c;
    out += neg ? " - " : " + ";
    if (mono.empty()) out += to_string(a);
    else if (a == 1) out += mono;
    else out += to_string(a) + "*" + mono;
  };
  std::string lhs = "Y^2", rhs = "X^3";
  term(e.a1, "X*Y", lhs);
  term(e.a3, "Y", lhs);
  term(e.a2, "X^2", rhs);
  term(e.a4, "X", rhs);
  term(e.a6, "", rhs);
  return lhs + " = " + rhs;
}

namespace detail {

inline WeierstrassCurve family_model(CurveKind kind, const Rational& k) {
  WeierstrassCurve e;
  switch (kind) {
    case CurveKind::Ek:
      e.a2 = k * k - 5 * k + 8;
      e.a4 = (-2 * k * k + 5 * k + 4) * (4 - k);
      e.a6 = (k * k + k) * (4 - k) * (4 - k);
      break;
    case CurveKind::Uk:
      e.a1 = k - 2;
      e.a3 = k;
      break;
    case CurveKind::Fk:
      e.a2 = (k - 4) * (k - 4) / 4 - 2;
      e.a4 = 1;
      break;
  }
  e.label = CurveLabel{kind, k};
  return e;
}

}  // namespace detail

/// The discriminant of a family as a polynomial in k (interpolated exactly;
/// its weight bounds the degree by 24).
inline QPoly family_discriminant(CurveKind kind) {
  std::vector<Rational> xs, ys;
  for (int i = 0; i < 30; ++i) {
    xs.emplace_back(i - 15);
    ys.push_back(detail::family_model(kind, xs.back()).discriminant());
  }
  return interpolate(xs, ys);
}

/// Rational k at which the family degenerates.
inline std::vector<Rational> singular_parameters(CurveKind kind) {
  std::vector<Rational> out;
  for (const auto& [r, m] : rational_roots(family_discriminant(kind))) out.push_back(r);
  std::sort(out.begin(), out.end());
  return out;
}

inline WeierstrassCurve curve(CurveKind kind, const Rational& k) {
  auto e = detail::family_model(kind, k);
  if (e.discriminant() == 0) {
    std::string bad;
    for (const auto& r : singular_parameters(kind)) bad += (bad.empty() ? "" : ", ") + to_string(r);
    throw SingularCurveError(curve_kind_name(kind) + "_k is singular at k = " + to_string(k) +
                             " (singular parameters: " + bad + ")");
  }
  return e;
}

/// A point of E(C); rational points also carry exact coordinates.
struct CurvePoint {
  bool infinity = true;
  bool exact = false;
  Rational ex, ey;
  cld x, y;

  static CurvePoint zero() { return {}; }
  static CurvePoint rational(Rational x, Rational y) {
    CurvePoint p;
    p.infinity = false;
    p.exact = true;
    p.x = cld(to_real<long double>(x));
    p.y = cld(to_real<long double>(y));
    p.ex = std::move(x);
    p.ey = std::move(y);
    return p;
  }
  static CurvePoint numeric(cld x, cld y) {
    CurvePoint p;
    p.infinity = false;
    p.x = x;
    p.y = y;
    return p;
  }
  bool is_zero() const { return infinity; }
};

inline std::string to_string(const CurvePoint& p) {
  if (p.infinity) return "O";
  if (p.exact) return "(" + to_string(p.ex) + "," + to_string(p.ey) + ")";
  auto c = [](cld z) {
    char buf[96];
    if (std::fabs(z.imag()) <= 1e-15L * (1 + std::fabs(z.real())))
      std::snprintf(buf, sizeof buf, "%.15Lg", z.real());
    else
      std::snprintf(buf, sizeof buf, "%.15Lg%+.15Lgi", z.real(), z.imag());
    return std::string(buf);
  };
  return "(" + c(p.x) + "," + c(p.y) + ")";
}

inline constexpr long double point_tolerance = 1e-12L;

inline bool on_curve(const WeierstrassCurve& e, const CurvePoint& p, long double tol = point_tolerance) {
  if (p.infinity) return true;
  if (p.exact) return e.residual(p.ex, p.ey) == 0;
  return std::abs(e.residual<long double>(p.x, p.y)) <= tol * e.residual_scale<long double>(p.x, p.y);
}

inline void require_on_curve(const WeierstrassCurve& e, const CurvePoint& p) {
  if (!on_curve(e, p, 1e-9L)) throw DomainError("point " + to_string(p) + " is not on the curve");
}

namespace detail {

inline bool close(cld a, cld b, long double tol) { return std::abs(a - b) <= tol * (1 + std::abs(a) + std::abs(b)); }

}  // namespace detail

/// Coordinate equality: exact for exact pairs, relative tolerance otherwise.
inline bool same_point(const CurvePoint& p, const CurvePoint& q, long double tol = 1e-9L) {
  if (p.infinity || q.infinity) return p.infinity == q.infinity;
  if (p.exact && q.exact) return p.ex == q.ex && p.ey == q.ey;
  return detail::close(p.x, q.x, tol) && detail::close(p.y, q.y, tol);
}

inline CurvePoint negate(const WeierstrassCurve& e, const CurvePoint& p) {
  if (p.infinity) return p;
  if (p.exact) return CurvePoint::rational(p.ex, -p.ey - e.a1 * p.ex - e.a3);
  return CurvePoint::numeric(p.x, -p.y - to_real<long double>(e.a1) * p.x - to_real<long double>(e.a3));
}

/// Chord-tangent addition. Numeric inputs decide "same x" and "opposite
/// points" with a relative tolerance of 1e-9.
inline CurvePoint add(const WeierstrassCurve& e, const CurvePoint& p, const CurvePoint& q) {
  require_on_curve(e, p);
  require_on_curve(e, q);
  if (p.infinity) return q;
  if (q.infinity) return p;
  if (p.exact && q.exact) {
    Rational lambda, nu;
    if (p.ex == q.ex) {
      if (p.ey + q.ey + e.a1 * q.ex + e.a3 == 0) return CurvePoint::zero();
      const Rational den = 2 * p.ey + e.a1 * p.ex + e.a3;
      lambda = (3 * p.ex * p.ex + 2 * e.a2 * p.ex + e.a4 - e.a1 * p.ey) / den;
      nu = (-p.ex * p.ex * p.ex + e.a4 * p.ex + 2 * e.a6 - e.a3 * p.ey) / den;
    } else {
      lambda = (q.ey - p.ey) / (q.ex - p.ex);
      nu = (p.ey * q.ex - q.ey * p.ex) / (q.ex - p.ex);
    }
    const Rational x3 = lambda * lambda + e.a1 * lambda - e.a2 - p.ex - q.ex;
    const Rational y3 = -(lambda + e.a1) * x3 - nu - e.a3;
    return CurvePoint::rational(x3, y3);
  }
  using R = long double;
  const R A1 = to_real<R>(e.a1), A2 = to_real<R>(e.a2), A3 = to_real<R>(e.a3), A4 = to_real<R>(e.a4);
  cld lambda;
  if (detail::close(p.x, q.x, 1e-9L)) {
    const cld den = R(2) * p.y + A1 * p.x + A3;
    if (detail::close(p.y, -q.y - A1 * q.x - A3, 1e-9L)) return CurvePoint::zero();
    lambda = (R(3) * p.x * p.x + R(2) * A2 * p.x + A4 - A1 * p.y) / den;
  } else {
    lambda = (q.y - p.y) / (q.x - p.x);
  }
  const cld x3 = lambda * lambda + A1 * lambda - A2 - p.x - q.x;
  const cld y3 = -(lambda + A1) * x3 - (p.y - lambda * p.x) - A3;
  return CurvePoint::numeric(x3, y3);
}

inline CurvePoint subtract(const WeierstrassCurve& e, const CurvePoint& p, const CurvePoint& q) {
  return add(e, p, negate(e, q));
}

inline CurvePoint mul(const WeierstrassCurve& e, long n, const CurvePoint& p) {
  require_on_curve(e, p);
  CurvePoint base = n < 0 ? negate(e, p) : p;
  unsigned long m = static_cast<unsigned long>(n < 0 ? -n : n);
  CurvePoint acc = CurvePoint::zero();
  while (m) {
    if (m & 1ul) acc = add(e, acc, base);
    m >>= 1ul;
    if (m) base = add(e, base, base);
  }
  return acc;
}

/// Least n <= bound with nP = O, or nullopt. Numeric points are accepted but
/// the answer then rests on the 1e-9 coincidence tests of add().
inline std::optional<long> torsion_order(const WeierstrassCurve& e, const CurvePoint& p, long bound = 64) {
  require_on_curve(e, p);
  CurvePoint acc = p;
  for (long n = 1; n <= bound; ++n) {
    if (acc.infinity) return n;
    acc = add(e, acc, p);
  }
  return std::nullopt;
}

/// The two points over X = x (equal when x is a 2-division value).
inline std::array<CurvePoint, 2> points_over(const WeierstrassCurve& e, cld x) {
  using R = long double;
  const cld b = to_real<R>(e.a1) * x + to_real<R>(e.a3);
  const cld c = -(((x + to_real<R>(e.a2)) * x + to_real<R>(e.a4)) * x + to_real<R>(e.a6));
  auto r = quadratic_roots(cld(1), b, c);
  return {CurvePoint::numeric(x, r[0]), CurvePoint::numeric(x, r[1])};
}

/// Exact points over a rational X when the Y-quadratic splits over Q.
inline std::optional<std::array<CurvePoint, 2>> rational_points_over(const WeierstrassCurve& e, const Rational& x) {
  const Rational b = e.a1 * x + e.a3;
  const Rational c = -(((x + e.a2) * x + e.a4) * x + e.a6);
  const Rational disc = b * b - 4 * c;
  if (disc < 0) return std::nullopt;
  const BigInt n = numerator_of(disc), d = denominator_of(disc);
  const BigInt sn = boost::multiprecision::sqrt(n), sd = boost::multiprecision::sqrt(d);
  if (sn * sn != n || sd * sd != d) return std::nullopt;
  const Rational s(sn, sd);
  return std::array<CurvePoint, 2>{CurvePoint::rational(x, (-b + s) / 2), CurvePoint::rational(x, (-b - s) / 2)};
}

}  // namespace rlab
