#pragma once

// Period lattices by the arithmetic-geometric mean, the Weierstrass p-function
// by q-series, and complex elliptic logarithms by Newton iteration on p.
//
// The normalization is that of the invariant differential dX/(2Y + a1 X + a3):
// p(u) = X + b2/12 and p'(u) = 2Y + a1 X + a3, so p'^2 = 4p^3 - g2 p - g3 with
// g2 = c4/12 and g3 = c6/216.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <tuple>
#include <utility>
#include <vector>

#include "rlab/complex_roots.hpp"
#include "rlab/errors.hpp"
#include "rlab/weierstrass.hpp"

namespace rlab {

struct PeriodLattice {
  /// the real period when the curve is real
  cld omega1;
  cld omega2;
  /// omega2/omega1 reduced by translations and sign so |Re tau| <= 1/2, Im tau > 0
  cld tau;
  cld q;
  long double g2 = 0, g3 = 0;
  /// X-shift b2/12 and the 2-division values in the p-coordinate
  long double shift = 0;
  std::array<cld, 3> roots{};
  bool rectangular = false;
};

/// Arithmetic-geometric mean with the optimal square-root branch at every step
/// (|a' - b'| <= |a' + b'|), which for positive reals is the usual AGM.
inline cld agm(cld a, cld b) {
  for (int i = 0; i < 200; ++i) {
    if (std::abs(a - b) <= 4 * std::numeric_limits<long double>::epsilon() * std::abs(a)) return a;
    const cld an = (a + b) / 2.0L;
    cld bn = std::sqrt(a * b);
    if (std::abs(an - bn) > std::abs(an + bn)) bn = -bn;
    a = an;
    b = bn;
  }
  throw ConvergenceError("AGM did not converge");
}

namespace detail {

inline std::pair<cld, cld> normalize_basis(cld w1, cld w2) {
  cld tau = w2 / w1;
  if (tau.imag() < 0) {
    w2 = -w2;
    tau = -tau;
  }
  const long double shift = std::floor(tau.real() + 0.5L);
  w2 -= shift * w1;
  return {w1, w2};
}

}  // namespace detail

/// Periods of a real curve. Three real 2-division values e1 > e2 > e3 give
/// omega1 = pi/M(sqrt(e1-e3), sqrt(e1-e2)) and omega2 = i pi/M(sqrt(e1-e3), sqrt(e2-e3));
/// one real value e1 gives the non-rectangular pair of Cohen's algorithm 7.4.7.
inline PeriodLattice periods(const WeierstrassCurve& e) {
  if (e.discriminant() == 0) throw SingularCurveError("periods of a singular curve");
  using R = long double;
  const R pi = std::numbers::pi_v<R>;
  PeriodLattice L;
  L.g2 = to_real<R>(e.c4()) / 12;
  L.g3 = to_real<R>(e.c6()) / 216;
  L.shift = to_real<R>(e.b2()) / 12;
  const QPoly cubic = e.two_division();
  auto rs = polynomial_roots<R>(cubic);
  for (auto& r : rs) r = polish_root(cubic.numeric_coeffs<R>(), r, 3);
  cld w1, w2;
  if (e.discriminant() > 0) {
    std::array<R, 3> x{rs[0].real(), rs[1].real(), rs[2].real()};
    std::sort(x.begin(), x.end(), std::greater<>());
    const R e1 = x[0], e2 = x[1], e3 = x[2];
    w1 = pi / agm(cld(std::sqrt(e1 - e3)), cld(std::sqrt(e1 - e2)));
    w2 = cld(0, 1) * pi / agm(cld(std::sqrt(e1 - e3)), cld(std::sqrt(e2 - e3)));
    L.rectangular = true;
    for (int i = 0; i < 3; ++i) L.roots[static_cast<std::size_t>(i)] = cld(x[static_cast<std::size_t>(i)] + L.shift);
  } else {
    std::size_t ir = 0;
    for (std::size_t i = 1; i < 3; ++i)
      if (std::fabs(rs[i].imag()) < std::fabs(rs[ir].imag())) ir = i;
    const R e1 = rs[ir].real();
    const R b2 = to_real<R>(e.b2()), b4 = to_real<R>(e.b4());
    const R a = 3 * e1 + b2 / 4;
    const R b = std::sqrt(3 * e1 * e1 + b2 / 2 * e1 + b4 / 2);
    w1 = 2 * pi / agm(cld(2 * std::sqrt(b)), cld(std::sqrt(2 * b + a)));
    w2 = -w1 / 2.0L + cld(0, 1) * pi / agm(cld(2 * std::sqrt(b)), cld(std::sqrt(2 * b - a)));
    for (std::size_t i = 0; i < 3; ++i) L.roots[i] = rs[i] + L.shift;
  }
  std::tie(L.omega1, L.omega2) = detail::normalize_basis(w1, w2);
  L.tau = L.omega2 / L.omega1;
  L.q = std::exp(cld(0, 2 * pi) * L.tau);
  if (!(std::abs(L.q) < 1)) throw ConvergenceError("period lattice with |q| >= 1");
  return L;
}

/// (alpha, beta) with u = alpha*omega1 + beta*omega2.
inline std::pair<long double, long double> lattice_coordinates(const PeriodLattice& L, cld u) {
  const cld z = u / L.omega1;
  const long double beta = z.imag() / L.tau.imag();
  const long double alpha = z.real() - beta * L.tau.real();
  return {alpha, beta};
}

/// v mod 1 in [0,1), with values within 1e-15 of an integer sent to 0.
inline long double frac_part(long double v) {
  if (std::fabs(v - std::round(v)) < 1e-15L) return 0;
  return v - std::floor(v);
}

/// u reduced to alpha, beta in [0,1).
inline cld reduce_mod_lattice(const PeriodLattice& L, cld u) {
  auto [a, b] = lattice_coordinates(L, u);
  return frac_part(a) * L.omega1 + frac_part(b) * L.omega2;
}

struct WeierstrassValues {
  cld p;
  cld dp;
};

/// p(u) and p'(u) from the Lambert-type q-expansions in w = exp(2 pi i u/omega1).
/// u must not lie on the lattice.
inline WeierstrassValues weierstrass_p(const PeriodLattice& L, cld u) {
  using R = long double;
  const R two_pi = 2 * std::numbers::pi_v<R>;
  cld z = u / L.omega1;
  z -= std::round(z.imag() / L.tau.imag()) * L.tau;
  z -= std::round(z.real());
  const cld w = std::exp(cld(0, two_pi) * z);
  if (std::abs(1.0L - w) < 1e-300L) throw DomainError("p evaluated at a lattice point");
  auto T = [](cld t) { return t / ((1.0L - t) * (1.0L - t)); };
  auto V = [](cld t) { return t * (1.0L + t) / ((1.0L - t) * (1.0L - t) * (1.0L - t)); };
  cld s = 1.0L / 12 + T(w), sd = V(w);
  const R aq = std::abs(L.q);
  cld qn = L.q;
  const R eps = 1e-21L;
  for (int n = 1; n < 100000; ++n) {
    const cld a = qn * w, b = qn / w;
    s += T(a) + T(b) - 2.0L * T(qn);
    sd += V(a) - V(b);
    const R mag = std::pow(aq, R(n)) * std::max(std::abs(w), 1 / std::abs(w));
    if (mag < eps) break;
    qn *= L.q;
  }
  const cld c = cld(0, two_pi) / L.omega1;
  return {c * c * s, c * c * c * sd};
}

/// Short-model coordinates (p, p') of a point.
inline std::pair<cld, cld> short_coordinates(const WeierstrassCurve& e, const CurvePoint& P) {
  using R = long double;
  return {P.x + to_real<R>(e.b2()) / 12, 2.0L * P.y + to_real<R>(e.a1) * P.x + to_real<R>(e.a3)};
}

/// The point with short-model coordinates (p, p').
inline CurvePoint from_short_coordinates(const WeierstrassCurve& e, cld p, cld dp) {
  using R = long double;
  const cld X = p - to_real<R>(e.b2()) / 12;
  const cld Y = (dp - to_real<R>(e.a1) * X - to_real<R>(e.a3)) / 2.0L;
  return CurvePoint::numeric(X, Y);
}

struct EllipticLogOptions {
  int grid = 24;
  int max_iterations = 120;
  long double tolerance = 1e-10L;
};

/// u with (p(u), p'(u)) equal to the short coordinates of P, reduced so that
/// u/omega1 lies in [0,1) + tau [0,1). O maps to 0.
inline cld elliptic_log(const WeierstrassCurve& e, const CurvePoint& P, const PeriodLattice& L,
                        const EllipticLogOptions& opt = {}) {
  using R = long double;
  if (P.infinity) return cld(0);
  require_on_curve(e, P);
  const auto [xs, ys] = short_coordinates(e, P);
  const R sx = 1 + std::abs(xs), sy = 1 + std::abs(ys);
  auto score = [&](cld u) {
    const auto v = weierstrass_p(L, u);
    return std::abs(v.p - xs) / sx + std::abs(v.dp - ys) / sy;
  };

  // 2-torsion: p' vanishes and the answer is the half period with matching p
  const std::array<cld, 3> halves{L.omega1 / 2.0L, L.omega2 / 2.0L, (L.omega1 + L.omega2) / 2.0L};
  const bool two_torsion = P.exact ? 2 * P.ey + e.a1 * P.ex + e.a3 == 0 : std::abs(ys) < 1e-14L * sx * sx;
  if (two_torsion) {
    std::size_t bi = 0;
    for (std::size_t i = 1; i < 3; ++i)
      if (std::abs(weierstrass_p(L, halves[i]).p - xs) < std::abs(weierstrass_p(L, halves[bi]).p - xs)) bi = i;
    if (std::abs(weierstrass_p(L, halves[bi]).p - xs) > opt.tolerance * sx)
      throw ConvergenceError("2-torsion point " + to_string(P) + " matches no half period");
    return halves[bi];
  }

  std::vector<cld> candidates;
  const int n = opt.grid;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == 0 && j == 0) continue;
      candidates.push_back(((i + 0.5L) / n) * L.omega1 + (R(j) / n) * L.omega2);
    }
  cld u = candidates.front();
  R best = score(u);
  for (const cld& c : candidates) {
    const R s = score(c);
    if (s < best) {
      best = s;
      u = c;
    }
  }

  // Newton on p(u) = xs; the sign of u is fixed by p' afterwards. Near a
  // half period the root is double and convergence is only linear.
  for (int it = 0; it < opt.max_iterations; ++it) {
    const auto v = weierstrass_p(L, u);
    if (v.dp == cld(0)) break;
    const cld step = (v.p - xs) / v.dp;
    u -= step;
    if (std::abs(step) <= 1e-19L * (std::abs(u) + std::abs(L.omega1))) break;
  }
  auto v = weierstrass_p(L, u);
  if (std::abs(v.dp + ys) < std::abs(v.dp - ys)) {
    u = -u;
    v.dp = -v.dp;
  }
  if (std::abs(v.p - xs) > opt.tolerance * sx || std::abs(v.dp - ys) > std::sqrt(opt.tolerance) * sy)
    throw ConvergenceError("elliptic logarithm reconstruction failed for " + to_string(P));
  return reduce_mod_lattice(L, u);
}

/// The point parametrized by u (O on the lattice).
inline CurvePoint point_from_log(const WeierstrassCurve& e, const PeriodLattice& L, cld u) {
  auto [a, b] = lattice_coordinates(L, u);
  const long double da = a - std::round(a), db = b - std::round(b);
  if (std::fabs(da) < 1e-15L && std::fabs(db) < 1e-15L) return CurvePoint::zero();
  const auto v = weierstrass_p(L, u);
  return from_short_coordinates(e, v.p, v.dp);
}

/// Eisenstein series E4, E6 at tau, for independent checks of g2 and g3.
inline std::pair<cld, cld> eisenstein_e4_e6(cld q, int terms = 400) {
  cld e4 = 1, e6 = 1, qn = 1;
  for (int n = 1; n <= terms; ++n) {
    qn *= q;
    long double s3 = 0, s5 = 0;
    for (int d = 1; d <= n; ++d)
      if (n % d == 0) {
        s3 += std::pow(static_cast<long double>(d), 3);
        s5 += std::pow(static_cast<long double>(d), 5);
      }
    e4 += 240.0L * s3 * qn;
    e6 -= 504.0L * s5 * qn;
    if (std::abs(qn) * std::pow(static_cast<long double>(n), 6) < 1e-22L) break;
  }
  return {e4, e6};
}

}  // namespace rlab
