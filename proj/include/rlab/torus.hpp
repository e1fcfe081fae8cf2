#pragma once

// Exact resultants of two-variable polynomials and the points of a curve on
// the unit torus |x| = |y| = 1.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "rlab/complex_roots.hpp"
#include "rlab/errors.hpp"
#include "rlab/laurent_poly.hpp"
#include "rlab/upoly.hpp"

namespace rlab {

/// Polynomial in y whose coefficients are polynomials in x; entry j multiplies y^j.
using BiPoly = std::vector<QPoly>;

inline BiPoly to_bipoly(const LaurentPoly& p) { return p.coefficients_in("y"); }

inline int x_degree(const BiPoly& p) {
  int d = -1;
  for (const auto& c : p) d = std::max(d, c.degree());
  return d;
}

/// Res_y(a, b) as an exact polynomial in x, using the formal y-degrees
/// (a.size()-1, b.size()-1). Computed by evaluation at integer abscissae and
/// Newton interpolation; the x-degree of the result is bounded by
/// deg_y(b) deg_x(a) + deg_y(a) deg_x(b).
inline QPoly resultant_y(const BiPoly& a, const BiPoly& b) {
  if (a.empty() || b.empty()) return {};
  const int da = static_cast<int>(a.size()) - 1, db = static_cast<int>(b.size()) - 1;
  if (da == 0 && db == 0) return QPoly::constant(Rational(1));
  const int bound = db * std::max(0, x_degree(a)) + da * std::max(0, x_degree(b));
  std::vector<Rational> xs, ys;
  for (int i = 0; i <= bound; ++i) {
    const Rational x0(i);
    std::vector<Rational> ca, cb;
    for (const auto& c : a) ca.push_back(c(x0));
    for (const auto& c : b) cb.push_back(c(x0));
    Rational r;
    if (da == 0) r = power(ca[0], db);
    else if (db == 0) r = power(cb[0], da);
    else r = determinant(sylvester_matrix(ca, cb));
    xs.push_back(x0);
    ys.push_back(r);
  }
  return interpolate(xs, ys);
}

inline BiPoly derivative_y(const BiPoly& p) {
  BiPoly d;
  for (std::size_t j = 1; j < p.size(); ++j) d.push_back(Rational(static_cast<long long>(j)) * p[j]);
  if (d.empty()) d.push_back(QPoly());
  return d;
}

/// Res_y(p, dp/dy): vanishes where two y-roots collide or the leading
/// coefficient vanishes.
inline QPoly discriminant_y(const BiPoly& p) { return resultant_y(p, derivative_y(p)); }

template <class Real>
std::vector<Complex<Real>> eval_y_coeffs(const BiPoly& p, Complex<Real> x0) {
  std::vector<Complex<Real>> c;
  c.reserve(p.size());
  for (const auto& q : p) c.push_back(q.template eval<Real>(x0));
  return c;
}

struct TorusPoint {
  std::complex<long double> x, y;
  /// t with x = exp(2 pi i t), t in [0,1)
  long double t = 0;
  /// both coordinates recognized as rationals and verified exactly
  bool exact = false;
  Rational exact_x, exact_y;
};

struct TorusIntersections {
  std::vector<TorusPoint> points;
  /// the resultant vanished identically: a component of the curve lies on
  /// the torus (or the curve is independent of y), so the set is infinite
  bool degenerate = false;
  std::string message;
};

inline long double unit_circle_parameter(std::complex<long double> x) {
  long double t = std::arg(x) / (2 * std::numbers::pi_v<long double>);
  if (t < 0) t += 1;
  if (t >= 1) t -= 1;
  return t;
}

/// All zeros of p on |x| = |y| = 1. On the torus conj(p(x,y)) = p(1/x,1/y),
/// so such zeros are common zeros of p and p* = x^dx y^dy p(1/x,1/y).
inline TorusIntersections torus_intersections(const LaurentPoly& p) {
  if (p.is_zero()) throw DomainError("torus intersections of the zero polynomial");
  if (p.nvars() != 2) throw DomainError("torus intersections need two variables");
  TorusIntersections out;
  const LaurentPoly m = p.clear_denominators().first;
  const int dx = m.max_degree(0), dy = m.max_degree(1);
  if (dy == 0) {
    out.degenerate = true;
    out.message = "polynomial does not depend on y";
    return out;
  }
  const LaurentPoly mstar = m.reflected().shifted({dx, dy});
  const BiPoly a = to_bipoly(m), b = to_bipoly(mstar);
  const QPoly res = resultant_y(a, b);
  if (res.is_zero()) {
    out.degenerate = true;
    out.message = "resultant with the reciprocal partner vanishes identically";
    return out;
  }
  const QPoly sf = squarefree_part(res);
  const auto sf_c = sf.numeric_coeffs<long double>();
  for (auto x0 : polynomial_roots<long double>(sf_c)) {
    x0 = polish_root(sf_c, x0);
    if (std::fabs(std::abs(x0) - 1) > 1e-9L) continue;
    x0 /= std::abs(x0);
    const auto ca = eval_y_coeffs<long double>(a, x0), cb = eval_y_coeffs<long double>(b, x0);
    long double scale = 0;
    for (const auto& v : ca) scale = std::max(scale, std::abs(v));
    for (auto y0 : polynomial_roots<long double>(ca)) {
      if (std::fabs(std::abs(y0) - 1) > 1e-6L) continue;
      if (std::abs(horner(cb, y0)) > 1e-6L * std::max(scale, 1.0L)) continue;
      y0 /= std::abs(y0);
      bool dup = false;
      for (const auto& q : out.points) dup = dup || (std::abs(q.x - x0) < 1e-7L && std::abs(q.y - y0) < 1e-7L);
      if (dup) continue;
      TorusPoint tp{x0, y0, unit_circle_parameter(x0), false, 0, 0};
      if (std::fabs(x0.imag()) < 1e-12L && std::fabs(y0.imag()) < 1e-12L) {
        const Rational rx = rational_approximation(x0.real(), 1000), ry = rational_approximation(y0.real(), 1000);
        if (m.eval_exact({rx, ry}) == 0) {
          tp.exact = true;
          tp.exact_x = rx;
          tp.exact_y = ry;
          tp.x = to_real<long double>(rx);
          tp.y = to_real<long double>(ry);
        }
      }
      out.points.push_back(tp);
    }
  }
  std::sort(out.points.begin(), out.points.end(), [](const TorusPoint& u, const TorusPoint& v) {
    if (u.t != v.t) return u.t < v.t;
    return std::arg(u.y) < std::arg(v.y);
  });
  return out;
}

}  // namespace rlab
